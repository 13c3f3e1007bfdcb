#pragma once

#include "vbp/formula/ast.hpp"

#include <string_view>

namespace vbp::formula {

struct BuiltinInfo {
    BuiltinId id;
    std::string_view name;
    int min_args;
    int max_args; // -1: variadic
    bool is_volatile;
};

/// Case-insensitive lookup; nullptr for names outside the closed set.
const BuiltinInfo* find_builtin(std::string_view name);

const BuiltinInfo& builtin_info(BuiltinId id);

} // namespace vbp::formula
