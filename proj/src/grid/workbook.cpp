#include "vbp/grid/workbook.hpp"

#include "vbp/errors.hpp"
#include "vbp/formula/parser.hpp"

#include <algorithm>
#include <cctype>

namespace vbp::grid {

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

void check_bounds(Coord c)
{
    if (c.row < 1 || c.col < 1 || c.row > max_row || c.col > max_col)
        throw ValidationError("address out of bounds: row " + std::to_string(c.row) + ", column " +
                              std::to_string(c.col));
}

} // namespace

const Cell* Sheet::find(Coord c) const
{
    auto it = columns_.find(c.col);
    if (it == columns_.end() || c.row < 1 || static_cast<std::size_t>(c.row) > it->second.size())
        return nullptr;
    return &it->second[static_cast<std::size_t>(c.row) - 1];
}

Cell& Sheet::touch(Coord c)
{
    auto& col = columns_[c.col];
    if (static_cast<std::size_t>(c.row) > col.size())
        col.resize(static_cast<std::size_t>(c.row));
    return col[static_cast<std::size_t>(c.row) - 1];
}

std::vector<Cell>& Sheet::column(int col, int rows)
{
    auto& cells = columns_[col];
    if (static_cast<std::size_t>(rows) > cells.size())
        cells.resize(static_cast<std::size_t>(rows));
    return cells;
}

Array Sheet::read(const Rect& r) const
{
    Array out(static_cast<std::size_t>(r.rows()), static_cast<std::size_t>(r.cols()));
    for (int c = r.top_left.col; c <= r.bottom_right.col; ++c) {
        auto it = columns_.find(c);
        if (it == columns_.end())
            continue;
        const auto& cells = it->second;
        std::size_t oc = static_cast<std::size_t>(c - r.top_left.col);
        int last = std::min(r.bottom_right.row, static_cast<int>(cells.size()));
        for (int row = r.top_left.row; row <= last; ++row)
            out(static_cast<std::size_t>(row - r.top_left.row), oc) = cells[static_cast<std::size_t>(row) - 1].value;
    }
    return out;
}

Workbook::Workbook(const Workbook& other)
    : sheets_(other.sheets_), names_(other.names_), name_index_(other.name_index_), meta_(other.meta_),
      settings_(other.settings_), rng_(other.rng_), seq_(other.seq_)
{
    groups_.reserve(other.groups_.size());
    for (const auto& g : other.groups_)
        groups_.push_back({g.sheet, g.rect, formula::clone(*g.ast), g.is_volatile, g.scalar_entry, g.seq});
}

Workbook& Workbook::operator=(const Workbook& other)
{
    if (this != &other) {
        Workbook copy(other);
        *this = std::move(copy);
    }
    return *this;
}

int Workbook::add_sheet(std::string name)
{
    if (name.empty())
        throw ValidationError("sheet name must not be empty");
    if (sheet_index(name) >= 0)
        throw ValidationError("duplicate sheet '" + name + "'");
    sheets_.emplace_back(std::move(name));
    return static_cast<int>(sheets_.size()) - 1;
}

int Workbook::sheet_index(std::string_view name) const
{
    std::string key = lower(name);
    for (std::size_t i = 0; i < sheets_.size(); ++i)
        if (lower(sheets_[i].name()) == key)
            return static_cast<int>(i);
    return -1;
}

int Workbook::ensure_sheet(std::string_view name)
{
    int i = sheet_index(name);
    return i >= 0 ? i : add_sheet(std::string(name));
}

void Workbook::define_name(std::string_view name, int sheet, const Rect& rect)
{
    if (!formula::is_valid_name(name))
        throw ValidationError("invalid name '" + std::string(name) + "'");
    if (name_id(name) >= 0)
        throw ValidationError("duplicate name '" + std::string(name) + "'");
    if (!rect.valid())
        throw ValidationError("range for '" + std::string(name) + "' is outside the sheet");
    if (sheet < 0 || sheet >= sheet_count())
        throw ValidationError("unknown sheet for name '" + std::string(name) + "'");
    names_.push_back({std::string(name), sheet, rect, next_seq()});
    name_index_.emplace(lower(name), static_cast<int>(names_.size()) - 1);
}

int Workbook::name_id(std::string_view name) const
{
    auto it = name_index_.find(lower(name));
    return it == name_index_.end() ? -1 : it->second;
}

const NamedRange& Workbook::resolve(std::string_view name) const
{
    int id = name_id(name);
    if (id < 0)
        throw ValidationError("unknown name '" + std::string(name) + "'");
    return names_[static_cast<std::size_t>(id)];
}

void Workbook::set_value(int sheet, Coord c, const Scalar& v)
{
    check_bounds(c);
    Cell& cell = this->sheet(sheet).touch(c);
    if (cell.group >= 0)
        throw ValidationError("cannot set " + format_coord(c) + ": it belongs to an array formula");
    cell.value = v;
    if (cell.seq == 0)
        cell.seq = next_seq();
}

void Workbook::restore_value(int sheet, Coord c, const Scalar& v)
{
    check_bounds(c);
    this->sheet(sheet).touch(c).value = v;
}

Scalar Workbook::value(int sheet, Coord c) const
{
    check_bounds(c);
    return this->sheet(sheet).value(c);
}

int Workbook::add_group(int sheet, const Rect& rect, formula::Ast ast, bool scalar_entry)
{
    if (!rect.valid())
        throw ValidationError("formula region " + format_rect(rect) + " is outside the sheet");
    Sheet& sh = this->sheet(sheet);
    for (int r = rect.top_left.row; r <= rect.bottom_right.row; ++r)
        for (int c = rect.top_left.col; c <= rect.bottom_right.col; ++c)
            if (const Cell* cell = sh.find({r, c}); cell && cell->group >= 0)
                throw ValidationError("formula region " + format_rect(rect) + " overlaps the array formula at " +
                                      format_rect(groups_[static_cast<std::size_t>(cell->group)].rect));
    int id = static_cast<int>(groups_.size());
    bool vol = formula::contains_volatile(*ast);
    groups_.push_back({sheet, rect, std::move(ast), vol, scalar_entry, next_seq()});
    for (int r = rect.top_left.row; r <= rect.bottom_right.row; ++r)
        for (int c = rect.top_left.col; c <= rect.bottom_right.col; ++c) {
            Cell& cell = sh.touch({r, c});
            cell.group = id;
            cell.seq = 0;
            cell.value = Scalar{};
        }
    sh.anchors().emplace(rect.top_left, id);
    return id;
}

int Workbook::group_at(int sheet, Coord c) const
{
    const Cell* cell = this->sheet(sheet).find(c);
    return cell ? cell->group : -1;
}

void Workbook::bind(formula::Node& ast, int home_sheet) const
{
    using formula::NodeKind;
    switch (ast.kind) {
    case NodeKind::name: {
        int id = name_id(ast.text);
        if (id < 0)
            throw ValidationError("unknown name '" + ast.text + "'");
        ast.binding = id;
        break;
    }
    case NodeKind::cell:
    case NodeKind::range:
        if (ast.text.empty()) {
            ast.binding = home_sheet;
        } else {
            ast.binding = sheet_index(ast.text);
            if (ast.binding < 0)
                throw ValidationError("unknown sheet '" + ast.text + "'");
        }
        break;
    default: break;
    }
    for (auto& a : ast.args)
        bind(*a, home_sheet);
}

void Workbook::set_max_iterations(int n)
{
    if (n < 1)
        throw ValidationError("max_iterations must be at least 1");
    settings_.max_iterations = n;
}

void Workbook::set_rng_seed(std::uint64_t seed)
{
    settings_.rng_seed = seed;
    rng_.set_state(seed);
}

void Workbook::set_meta(std::string key, std::string value)
{
    for (auto& [k, v] : meta_)
        if (k == key) {
            v = std::move(value);
            return;
        }
    meta_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> Workbook::meta(std::string_view key) const
{
    for (const auto& [k, v] : meta_)
        if (k == key)
            return v;
    return std::nullopt;
}

} // namespace vbp::grid
