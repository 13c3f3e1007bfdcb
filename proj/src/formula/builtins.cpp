#include "vbp/formula/builtins.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace vbp::formula {

namespace {

constexpr std::array<BuiltinInfo, 17> table{{
    {BuiltinId::mmult, "MMULT", 2, 2, false},
    {BuiltinId::transpose, "TRANSPOSE", 1, 1, false},
    {BuiltinId::minverse, "MINVERSE", 1, 1, false},
    {BuiltinId::offset, "OFFSET", 3, 5, false},
    {BuiltinId::mod, "MOD", 2, 2, false},
    {BuiltinId::rand, "RAND", 0, 0, true},
    {BuiltinId::randbetween, "RANDBETWEEN", 2, 2, true},
    {BuiltinId::tanh, "TANH", 1, 1, false},
    {BuiltinId::exp, "EXP", 1, 1, false},
    {BuiltinId::if_, "IF", 2, 3, false},
    {BuiltinId::abs, "ABS", 1, 1, false},
    {BuiltinId::sum, "SUM", 1, -1, false},
    {BuiltinId::average, "AVERAGE", 1, -1, false},
    {BuiltinId::isnumber, "ISNUMBER", 1, 1, false},
    {BuiltinId::max, "MAX", 1, -1, false},
    {BuiltinId::min, "MIN", 1, -1, false},
    {BuiltinId::stdev, "STDEV", 1, -1, false},
}};

} // namespace

const BuiltinInfo* find_builtin(std::string_view name)
{
    for (const auto& info : table) {
        if (info.name.size() == name.size() &&
            std::equal(name.begin(), name.end(), info.name.begin(), [](char a, char b) {
                return std::toupper(static_cast<unsigned char>(a)) == b;
            }))
            return &info;
    }
    return nullptr;
}

const BuiltinInfo& builtin_info(BuiltinId id)
{
    return table[static_cast<std::size_t>(id)];
}

} // namespace vbp::formula
