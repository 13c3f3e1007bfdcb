#pragma once

#include "vbp/formula/ast.hpp"
#include "vbp/grid/address.hpp"
#include "vbp/prng.hpp"
#include "vbp/value.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vbp::grid {

struct Cell {
    Scalar value;
    std::int32_t group = -1; // owning array group, or -1
    std::uint32_t seq = 0;   // entry sequence number of a literal, 0 if never set
};

/// A formula shared by a rectangular region and evaluated once per pass at
/// its top-left anchor. Scalar (CELL) entries are 1x1 groups.
struct ArrayGroup {
    int sheet = 0;
    Rect rect;
    formula::Ast ast;
    bool is_volatile = false;
    bool scalar_entry = false;
    std::uint32_t seq = 0;
};

struct NamedRange {
    std::string name;
    int sheet = 0;
    Rect rect;
    std::uint32_t seq = 0;
};

struct CalcSettings {
    int max_iterations = 1;
    std::uint64_t rng_seed = 0;
};

class Sheet {
public:
    explicit Sheet(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }

    /// nullptr for a never-written cell.
    const Cell* find(Coord c) const;
    Cell& touch(Coord c);
    /// Storage of column `col`, grown to at least `rows` cells (row r is
    /// element r-1).
    std::vector<Cell>& column(int col, int rows);

    Scalar value(Coord c) const
    {
        const Cell* cell = find(c);
        return cell ? cell->value : Scalar{};
    }

    /// Copies the values of `r` into a rows x cols array.
    Array read(const Rect& r) const;

    /// Group anchors in row-major order.
    const std::map<Coord, int>& anchors() const { return anchors_; }
    std::map<Coord, int>& anchors() { return anchors_; }

    /// Calls f(coord, cell) for every stored cell, column by column.
    template <class F>
    void for_each_cell(F&& f) const
    {
        for (const auto& [col, cells] : columns_)
            for (std::size_t i = 0; i < cells.size(); ++i)
                f(Coord{static_cast<int>(i) + 1, col}, cells[i]);
    }

private:
    std::string name_;
    std::map<int, std::vector<Cell>> columns_;
    std::map<Coord, int> anchors_;
};

/// Workbook state: sheets, names, array groups, calculation settings, and
/// the PRNG stream consumed by RAND/RANDBETWEEN. Calculation mode is always
/// manual.
class Workbook {
public:
    Workbook() = default;
    Workbook(const Workbook& other);
    Workbook& operator=(const Workbook& other);
    Workbook(Workbook&&) noexcept = default;
    Workbook& operator=(Workbook&&) noexcept = default;

    int add_sheet(std::string name);
    /// Case-insensitive; -1 when absent.
    int sheet_index(std::string_view name) const;
    /// Index of `name`, creating the sheet if needed.
    int ensure_sheet(std::string_view name);
    int sheet_count() const { return static_cast<int>(sheets_.size()); }
    Sheet& sheet(int i) { return sheets_.at(static_cast<std::size_t>(i)); }
    const Sheet& sheet(int i) const { return sheets_.at(static_cast<std::size_t>(i)); }

    /// Throws ValidationError for an invalid or duplicate (case-insensitive)
    /// name or a range outside the sheet bounds.
    void define_name(std::string_view name, int sheet, const Rect& rect);
    /// Name id, or -1.
    int name_id(std::string_view name) const;
    const NamedRange& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
    const std::vector<NamedRange>& names() const { return names_; }
    /// Range bound to `name`; throws ValidationError if unknown.
    const NamedRange& resolve(std::string_view name) const;

    /// Literal entry (the SET directive). Fails on cells owned by a group.
    void set_value(int sheet, Coord c, const Scalar& v);
    /// Overwrites a stored value without touching formulas or entry order.
    void restore_value(int sheet, Coord c, const Scalar& v);
    /// Stored value; throws ValidationError for out-of-bounds addresses.
    Scalar value(int sheet, Coord c) const;

    /// Registers a formula region and returns its id. The AST must already
    /// be bound. Throws ValidationError on overlap with another group.
    int add_group(int sheet, const Rect& rect, formula::Ast ast, bool scalar_entry);
    const ArrayGroup& group(int id) const { return groups_.at(static_cast<std::size_t>(id)); }
    int group_count() const { return static_cast<int>(groups_.size()); }
    /// Id of the group owning `c`, or -1.
    int group_at(int sheet, Coord c) const;

    /// Resolves names and sheet qualifiers inside `ast` against this
    /// workbook; unqualified references bind to `home_sheet`. Throws
    /// ValidationError for an unknown name or sheet.
    void bind(formula::Node& ast, int home_sheet) const;

    const CalcSettings& settings() const { return settings_; }
    void set_max_iterations(int n);
    /// Sets the seed and restarts the PRNG stream from it.
    void set_rng_seed(std::uint64_t seed);
    SplitMix64& rng() { return rng_; }
    const SplitMix64& rng() const { return rng_; }

    /// Free-form key/value annotations carried through save/load.
    void set_meta(std::string key, std::string value);
    std::optional<std::string> meta(std::string_view key) const;
    const std::vector<std::pair<std::string, std::string>>& meta_entries() const { return meta_; }

    std::uint32_t next_seq() { return ++seq_; }

private:
    std::vector<Sheet> sheets_;
    std::vector<ArrayGroup> groups_;
    std::vector<NamedRange> names_;
    std::unordered_map<std::string, int> name_index_; // lower-cased
    std::vector<std::pair<std::string, std::string>> meta_;
    CalcSettings settings_;
    SplitMix64 rng_{0};
    std::uint32_t seq_ = 0;
};

} // namespace vbp::grid
