#include "vbp/grid/address.hpp"

#include "vbp/errors.hpp"

#include <algorithm>
#include <cctype>

namespace vbp::grid {

bool Rect::contains(Coord c) const
{
    return c.row >= top_left.row && c.row <= bottom_right.row && c.col >= top_left.col &&
           c.col <= bottom_right.col;
}

bool Rect::intersects(const Rect& o) const
{
    return top_left.row <= o.bottom_right.row && o.top_left.row <= bottom_right.row &&
           top_left.col <= o.bottom_right.col && o.top_left.col <= bottom_right.col;
}

bool Rect::valid() const
{
    return top_left.row >= 1 && top_left.col >= 1 && top_left.row <= bottom_right.row &&
           top_left.col <= bottom_right.col && bottom_right.row <= max_row &&
           bottom_right.col <= max_col;
}

Rect Rect::of(Coord tl, int rows, int cols)
{
    return {tl, {tl.row + rows - 1, tl.col + cols - 1}};
}

std::string column_letters(int col)
{
    std::string out;
    while (col > 0) {
        int rem = (col - 1) % 26;
        out.push_back(static_cast<char>('A' + rem));
        col = (col - 1) / 26;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<int> column_index(std::string_view letters)
{
    if (letters.empty() || letters.size() > 3)
        return std::nullopt;
    int col = 0;
    for (char ch : letters) {
        if (!std::isalpha(static_cast<unsigned char>(ch)))
            return std::nullopt;
        col = col * 26 + (std::toupper(static_cast<unsigned char>(ch)) - 'A' + 1);
    }
    if (col > max_col)
        return std::nullopt;
    return col;
}

std::optional<Coord> match_a1(std::string_view text)
{
    std::size_t i = 0;
    if (i < text.size() && text[i] == '$')
        ++i;
    std::size_t letters_begin = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])))
        ++i;
    auto col = column_index(text.substr(letters_begin, i - letters_begin));
    if (!col)
        return std::nullopt;
    if (i < text.size() && text[i] == '$')
        ++i;
    std::size_t digits_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
    if (i != text.size() || digits_begin == i || text[digits_begin] == '0' || i - digits_begin > 7)
        return std::nullopt;
    int row = std::stoi(std::string(text.substr(digits_begin)));
    if (row > max_row)
        return std::nullopt;
    return Coord{row, *col};
}

namespace {

// Splits an optional "Sheet!" prefix off `text`; returns the offset of the
// cell part.
std::size_t split_sheet(std::string_view text, std::string& sheet)
{
    auto bang = text.find('!');
    if (bang == std::string_view::npos)
        return 0;
    if (bang == 0)
        throw ParseError("empty sheet name before '!'", 0);
    for (std::size_t i = 0; i < bang; ++i) {
        char ch = text[i];
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '.' && ch != '-')
            throw ParseError(std::string("unexpected character '") + ch + "' in sheet name", i);
    }
    sheet = std::string(text.substr(0, bang));
    return bang + 1;
}

Coord parse_cell_part(std::string_view text, std::size_t offset)
{
    std::size_t i = 0;
    auto fail = [&](std::size_t pos, const std::string& what) -> Coord {
        if (pos < text.size())
            throw ParseError("unexpected character '" + std::string(1, text[pos]) + "' in address: " + what,
                             offset + pos);
        throw ParseError("unexpected end of address: " + what, offset + pos);
    };
    if (i < text.size() && text[i] == '$')
        ++i;
    std::size_t lb = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])))
        ++i;
    if (i == lb)
        return fail(i, "expected column letters");
    auto col = column_index(text.substr(lb, i - lb));
    if (!col)
        return fail(lb, "column beyond XFD");
    if (i < text.size() && text[i] == '$')
        ++i;
    std::size_t db = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
    if (i == db)
        return fail(i, "expected row digits");
    if (i != text.size())
        return fail(i, "trailing characters");
    if (text[db] == '0')
        return fail(db, "row must be at least 1");
    if (i - db > 7)
        return fail(db, "row out of range");
    int row = std::stoi(std::string(text.substr(db)));
    if (row > max_row)
        return fail(db, "row out of range");
    return Coord{row, *col};
}

} // namespace

CellAddr parse_address(std::string_view text)
{
    CellAddr out;
    std::size_t off = split_sheet(text, out.sheet);
    out.coord = parse_cell_part(text.substr(off), off);
    return out;
}

RangeAddr parse_range(std::string_view text)
{
    RangeAddr out;
    std::size_t off = split_sheet(text, out.sheet);
    std::string_view body = text.substr(off);
    auto colon = body.find(':');
    if (colon == std::string_view::npos) {
        out.rect = Rect::single(parse_cell_part(body, off));
        return out;
    }
    Coord a = parse_cell_part(body.substr(0, colon), off);
    Coord b = parse_cell_part(body.substr(colon + 1), off + colon + 1);
    out.rect = {{std::min(a.row, b.row), std::min(a.col, b.col)},
                {std::max(a.row, b.row), std::max(a.col, b.col)}};
    return out;
}

std::string format_coord(Coord c)
{
    return column_letters(c.col) + std::to_string(c.row);
}

std::string format_rect(const Rect& r)
{
    if (r.top_left == r.bottom_right)
        return format_coord(r.top_left);
    return format_coord(r.top_left) + ":" + format_coord(r.bottom_right);
}

std::string format_address(const CellAddr& a)
{
    return a.sheet.empty() ? format_coord(a.coord) : a.sheet + "!" + format_coord(a.coord);
}

std::string format_range(const RangeAddr& r)
{
    return r.sheet.empty() ? format_rect(r.rect) : r.sheet + "!" + format_rect(r.rect);
}

} // namespace vbp::grid
