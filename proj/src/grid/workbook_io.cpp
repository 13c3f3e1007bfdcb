#include "vbp/grid/workbook_io.hpp"

#include "vbp/calc/calculate.hpp"
#include "vbp/errors.hpp"
#include "vbp/formula/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

namespace vbp::grid {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// Splits off the first whitespace-delimited word.
std::string_view next_word(std::string_view& rest)
{
    rest = trim(rest);
    std::size_t end = rest.find_first_of(" \t");
    std::string_view word = rest.substr(0, end);
    rest = end == std::string_view::npos ? std::string_view{} : trim(rest.substr(end));
    return word;
}

std::uint64_t parse_u64(std::string_view s)
{
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ValidationError("expected a non-negative integer, found '" + std::string(s) + "'");
    return v;
}

struct Target {
    int sheet;
    Rect rect;
};

Target target(Workbook& wb, std::string_view text)
{
    RangeAddr r = parse_range(text);
    int sheet = wb.ensure_sheet(r.sheet.empty() ? "Sheet1" : r.sheet);
    return {sheet, r.rect};
}

void execute(Workbook& wb, std::string_view line)
{
    std::string_view rest = line;
    std::string_view verb = next_word(rest);
    if (verb == "NAME") {
        std::string_view name = next_word(rest);
        Target t = target(wb, next_word(rest));
        if (!rest.empty())
            throw ValidationError("unexpected text after NAME range");
        wb.define_name(name, t.sheet, t.rect);
    } else if (verb == "SET" || verb == "VALUE") {
        Target t = target(wb, next_word(rest));
        if (t.rect.rows() != 1 || t.rect.cols() != 1)
            throw ValidationError(std::string(verb) + " takes a single cell");
        Scalar v = parse_literal(rest);
        if (verb == "SET")
            wb.set_value(t.sheet, t.rect.top_left, v);
        else
            wb.restore_value(t.sheet, t.rect.top_left, v);
    } else if (verb == "ARRAY" || verb == "CELL") {
        Target t = target(wb, next_word(rest));
        if (verb == "CELL" && (t.rect.rows() != 1 || t.rect.cols() != 1))
            throw ValidationError("CELL takes a single cell; use ARRAY for regions");
        if (rest.empty() || rest.front() != '=')
            throw ValidationError("expected '=' followed by a formula");
        calc::enter_formula(wb, t.sheet, t.rect, rest, verb == "CELL");
    } else if (verb == "OPTION") {
        std::string_view key = next_word(rest);
        std::string_view val = next_word(rest);
        if (key == "max_iterations")
            wb.set_max_iterations(static_cast<int>(std::min<std::uint64_t>(parse_u64(val), 1u << 30)));
        else if (key == "rng_seed")
            wb.set_rng_seed(parse_u64(val));
        else if (key == "rng_state")
            wb.rng().set_state(parse_u64(val));
        else
            throw ValidationError("unknown option '" + std::string(key) + "'");
    } else if (verb == "META") {
        std::string_view key = next_word(rest);
        if (key.empty())
            throw ValidationError("META needs a key");
        wb.set_meta(std::string(key), std::string(rest));
    } else {
        throw ValidationError("unknown directive '" + std::string(verb) + "'");
    }
}

} // namespace

Scalar parse_literal(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        throw ValidationError("missing literal");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            throw ValidationError("unterminated text literal");
        std::string out;
        for (std::size_t i = 1; i + 1 < text.size(); ++i) {
            if (text[i] == '"') {
                if (i + 2 < text.size() && text[i + 1] == '"') {
                    out.push_back('"');
                    ++i;
                    continue;
                }
                throw ValidationError("stray quote in text literal");
            }
            out.push_back(text[i]);
        }
        return Scalar::text(out);
    }
    if (text == "TRUE")
        return Scalar::boolean(true);
    if (text == "FALSE")
        return Scalar::boolean(false);
    for (ErrorCode code : {ErrorCode::div0, ErrorCode::value, ErrorCode::ref, ErrorCode::name, ErrorCode::num,
                           ErrorCode::na})
        if (text == error_text(code))
            return Scalar::error(code);
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw ValidationError("malformed literal '" + std::string(text) + "'");
    return Scalar::number(v);
}

std::string format_literal(const Scalar& s)
{
    if (s.is_text()) {
        std::string out = "\"";
        for (char c : s.text()) {
            if (c == '"')
                out.push_back('"');
            out.push_back(c);
        }
        return out + "\"";
    }
    return to_display(s);
}

void apply_directives(Workbook& wb, std::string_view text)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        std::size_t nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#')
            continue;
        try {
            execute(wb, line);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position());
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

Workbook load_workbook(std::string_view text)
{
    Workbook wb;
    apply_directives(wb, text);
    return wb;
}

Workbook load_workbook_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open workbook '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return load_workbook(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.position());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string save_workbook(const Workbook& wb)
{
    std::ostringstream out;
    out << "OPTION rng_seed " << wb.settings().rng_seed << '\n';
    out << "OPTION max_iterations " << wb.settings().max_iterations << '\n';
    for (const auto& [k, v] : wb.meta_entries())
        out << "META " << k << ' ' << v << '\n';

    // Re-emit entries in their original order so that reloading replays
    // the same entry evaluation sequence.
    std::vector<std::tuple<std::uint32_t, std::string>> entries;
    for (const auto& n : wb.names())
        entries.emplace_back(n.seq, "NAME " + n.name + ' ' + wb.sheet(n.sheet).name() + '!' + format_rect(n.rect));
    for (int s = 0; s < wb.sheet_count(); ++s) {
        const Sheet& sh = wb.sheet(s);
        sh.for_each_cell([&](Coord c, const Cell& cell) {
            if (cell.group < 0 && cell.seq > 0 && !cell.value.is_blank())
                entries.emplace_back(cell.seq, "SET " + sh.name() + '!' + format_coord(c) + ' ' +
                                                   format_literal(cell.value));
        });
    }
    for (int id = 0; id < wb.group_count(); ++id) {
        const ArrayGroup& g = wb.group(id);
        entries.emplace_back(g.seq, std::string(g.scalar_entry ? "CELL " : "ARRAY ") + wb.sheet(g.sheet).name() +
                                        '!' + format_rect(g.rect) + " =" + formula::format_formula(*g.ast));
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& e : entries)
        out << std::get<1>(e) << '\n';

    for (int s = 0; s < wb.sheet_count(); ++s) {
        const Sheet& sh = wb.sheet(s);
        std::vector<std::pair<Coord, Scalar>> vals;
        sh.for_each_cell([&](Coord c, const Cell& cell) {
            if (cell.group >= 0)
                vals.emplace_back(c, cell.value);
        });
        std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [c, v] : vals)
            out << "VALUE " << sh.name() << '!' << format_coord(c) << ' ' << format_literal(v) << '\n';
    }
    out << "OPTION rng_state " << wb.rng().state() << '\n';
    return out.str();
}

void save_workbook_file(const Workbook& wb, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write workbook '" + path.string() + "'");
    out << save_workbook(wb);
}

} // namespace vbp::grid
