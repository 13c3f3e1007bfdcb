#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vbp::grid {

/// Largest column (XFD) and row accepted in A1 notation. Identifiers beyond
/// these bounds (e.g. "itcp1", whose letters exceed XFD) are names.
inline constexpr int max_col = 16384;
inline constexpr int max_row = 1048576;

/// 1-based (row, col) position. Ordering is row-major.
struct Coord {
    int row = 1;
    int col = 1;
    friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Inclusive rectangle of cells.
struct Rect {
    Coord top_left;
    Coord bottom_right;

    int rows() const { return bottom_right.row - top_left.row + 1; }
    int cols() const { return bottom_right.col - top_left.col + 1; }
    bool contains(Coord c) const;
    bool intersects(const Rect& other) const;
    bool valid() const;

    static Rect single(Coord c) { return {c, c}; }
    static Rect of(Coord top_left, int rows, int cols);

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Optionally sheet-qualified cell address ("B2", "VBP!DD485").
struct CellAddr {
    std::string sheet;
    Coord coord;
    friend bool operator==(const CellAddr&, const CellAddr&) = default;
};

/// Optionally sheet-qualified range ("C4:E4", "VBP!E6:H9"); a single cell
/// is a 1x1 range.
struct RangeAddr {
    std::string sheet;
    Rect rect;
    friend bool operator==(const RangeAddr&, const RangeAddr&) = default;
};

/// Bijective base-26 column letters: 1 -> "A", 27 -> "AA", 108 -> "DD".
std::string column_letters(int col);

/// Inverse of column_letters; nullopt for empty/non-letter text or a
/// column beyond max_col.
std::optional<int> column_index(std::string_view letters);

/// Parses a bare A1 cell reference with optional '$' markers and no sheet
/// prefix. Returns nullopt unless the whole text is such a reference.
std::optional<Coord> match_a1(std::string_view text);

/// Parses "B2" or "Sheet!B2". Throws ParseError naming the offending
/// character on malformed input.
CellAddr parse_address(std::string_view text);

/// Parses "A1:B2", "Sheet!A1:B2" or a single cell. Throws ParseError.
RangeAddr parse_range(std::string_view text);

std::string format_coord(Coord c);
std::string format_rect(const Rect& r);
std::string format_address(const CellAddr& a);
std::string format_range(const RangeAddr& r);

} // namespace vbp::grid
