#include "vbp/builder/runs.hpp"

#include "vbp/builder/builder.hpp"
#include "vbp/builder/layout.hpp"
#include "vbp/calc/calculate.hpp"
#include "vbp/errors.hpp"

#include <charconv>
#include <string>

namespace vbp::builder {

namespace {

std::string required_meta(const grid::Workbook& wb, std::string_view key)
{
    auto v = wb.meta(key);
    if (!v)
        throw ValidationError("workbook has no '" + std::string(key) + "' metadata; was it built by vbp?");
    return *v;
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        out.push_back(s.substr(start, comma - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

double number_of(const Scalar& s, const std::string& where)
{
    if (!s.is_number())
        throw NumericalError(where + " holds " + (s.is_blank() ? std::string("a blank") : to_display(s)) +
                             " instead of a number");
    return s.number();
}

Layout layout_of(const grid::Workbook& wb)
{
    return compute_layout(spec_from_workbook(wb), std::stoi(required_meta(wb, "samples")));
}

void set_ru(grid::Workbook& wb, double v)
{
    const auto& ru = wb.resolve("ru");
    wb.set_value(ru.sheet, ru.rect.top_left, Scalar::number(v));
}

} // namespace

int training_sheet(const grid::Workbook& wb)
{
    int s = wb.sheet_index(sheet_name);
    if (s < 0)
        throw ValidationError(std::string("workbook has no '") + sheet_name + "' sheet");
    return s;
}

void init_run(grid::Workbook& wb, std::ostream* trace)
{
    set_ru(wb, 0.0);
    wb.set_max_iterations(1);
    calc::calculate_sheet(wb, training_sheet(wb), trace, -1);
}

void train_run(grid::Workbook& wb, int iterations, std::ostream* trace, int pass_offset)
{
    if (iterations < 0)
        throw ValidationError("iterations must be non-negative");
    if (iterations == 0)
        return;
    set_ru(wb, 1.0);
    wb.set_max_iterations(iterations);
    calc::calculate_sheet(wb, training_sheet(wb), trace, pass_offset);
}

std::vector<oracle::Matrix> extract_weights(const grid::Workbook& wb, char region)
{
    const int q = static_cast<int>(parse_topology(required_meta(wb, "topology")).size()) - 1;
    std::vector<oracle::Matrix> out;
    for (int h = 1; h <= q; ++h) {
        const std::string name = "w_" + std::to_string(h) + region;
        const auto& nr = wb.resolve(name);
        oracle::Matrix m(static_cast<std::size_t>(nr.rect.rows()), static_cast<std::size_t>(nr.rect.cols()));
        for (int i = 0; i < nr.rect.rows(); ++i)
            for (int j = 0; j < nr.rect.cols(); ++j) {
                grid::Coord c{nr.rect.top_left.row + i, nr.rect.top_left.col + j};
                m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    number_of(wb.value(nr.sheet, c), name + " at " + grid::format_coord(c));
            }
        out.push_back(std::move(m));
    }
    return out;
}

NetworkSpec spec_from_workbook(const grid::Workbook& wb)
{
    NetworkSpec spec;
    spec.topology = parse_topology(required_meta(wb, "topology"));
    for (const auto& a : split_commas(required_meta(wb, "activations")))
        spec.activations.push_back(parse_activation(a));
    for (const auto& e : split_commas(required_meta(wb, "eta"))) {
        double v = 0.0;
        auto res = std::from_chars(e.data(), e.data() + e.size(), v);
        if (res.ec != std::errc() || res.ptr != e.data() + e.size())
            throw ValidationError("malformed eta metadata '" + e + "'");
        spec.eta.push_back(v);
    }
    if (spec.eta.size() == 1 && spec.layers() > 1)
        spec.eta.assign(static_cast<std::size_t>(spec.layers()), spec.eta.front());
    spec.seed = wb.settings().rng_seed;
    spec.sampling = parse_sampling(required_meta(wb, "sampling"));
    if (auto s = wb.meta("stride"))
        spec.stride = std::stoi(*s);
    if (auto p = wb.meta("pair_offset"))
        spec.pair_offset = std::stoi(*p);
    spec.init = parse_init(required_meta(wb, "init"));
    spec.validate();
    return spec;
}

std::vector<std::vector<double>> training_records(const grid::Workbook& wb)
{
    const auto& nr = wb.resolve("TrData");
    std::vector<std::vector<double>> out;
    for (int i = 0; i < nr.rect.rows(); ++i) {
        std::vector<double> row;
        for (int j = 0; j < nr.rect.cols(); ++j) {
            grid::Coord c{nr.rect.top_left.row + i, nr.rect.top_left.col + j};
            row.push_back(number_of(wb.value(nr.sheet, c), "TrData " + grid::format_coord(c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<double> ema_values(const grid::Workbook& wb)
{
    const Layout L = layout_of(wb);
    const int sheet = training_sheet(wb);
    std::vector<double> out;
    for (int i = 0; i < L.ema.rows(); ++i) {
        grid::Coord c{L.ema.top_left.row + i, L.ema.top_left.col};
        out.push_back(number_of(wb.value(sheet, c), "EMA " + grid::format_coord(c)));
    }
    return out;
}

} // namespace vbp::builder
