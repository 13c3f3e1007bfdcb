#include "vbp/builder/builder.hpp"
#include "vbp/builder/runs.hpp"
#include "vbp/calc/calculate.hpp"
#include "vbp/cli/commands.hpp"
#include "vbp/grid/workbook_io.hpp"
#include "vbp/oracle/least_squares.hpp"
#include "vbp/oracle/simulate.hpp"

#include <cmath>
#include <functional>
#include <ostream>

namespace vbp::cli {

namespace {

double at(const grid::Workbook& wb, std::string_view addr)
{
    auto a = grid::parse_address(addr);
    Scalar s = wb.value(0, a.coord);
    return s.is_number() ? s.number() : std::nan("");
}

bool row_equals(const grid::Workbook& wb, const std::vector<std::string>& cells, const std::vector<double>& want)
{
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (at(wb, cells[i]) != want[i])
            return false;
    return true;
}

bool circular_counters()
{
    auto wb = grid::load_workbook("CELL B2 =B2+1\nCELL D2 =D4+1\nCELL D4 =D2+1\n");
    if (!row_equals(wb, {"B2", "D2", "D4"}, {1, 1, 2}))
        return false;
    calc::calculate_sheet(wb, 0);
    return row_equals(wb, {"B2", "D2", "D4"}, {2, 3, 4});
}

bool lagged_state()
{
    auto wb = grid::load_workbook("CELL G20 =G20+1\nCELL F20 =G20\nCELL E20 =F20\nCELL D20 =E20\n"
                                  "CELL H20 =G20\nCELL I20 =H20\n");
    const std::vector<std::string> row{"D20", "E20", "F20", "G20", "H20", "I20"};
    if (!row_equals(wb, row, {1, 1, 1, 1, 1, 1}))
        return false;
    calc::calculate_sheet(wb, 0);
    calc::calculate_sheet(wb, 0);
    if (!row_equals(wb, row, {1, 1, 2, 3, 3, 3}))
        return false;
    calc::calculate_sheet(wb, 0);
    return row_equals(wb, row, {1, 2, 3, 4, 4, 4});
}

bool outer_product()
{
    auto wb = grid::load_workbook("SET C4 1\nSET D4 2\nSET E4 3\nSET G4 4\nSET G5 5\nNAME a_ C4:E4\nNAME b_ G4:G5\n"
                                  "ARRAY C8:E9 =a_*b_\n");
    return row_equals(wb, {"C8", "D8", "E8", "C9", "D9", "E9"}, {4, 8, 12, 5, 10, 15});
}

bool mmult_restriction()
{
    auto wb = grid::load_workbook("SET B25 1\nSET C25 2\nSET D25 3\nSET B26 4\nSET C26 5\nSET D26 6\n"
                                  "SET B27 0\nSET C27 1\nSET D27 1\nSET F25 3\nSET F26 5\nSET F27 1\n"
                                  "NAME w_1 B25:D27\nNAME x F25:F27\n"
                                  "ARRAY H25:H27 =MMULT(w_1,x)\nARRAY J25:J26 =MMULT(w_1,x)\nCELL L25 =MMULT(w_1,x)\n");
    return row_equals(wb, {"H25", "H26", "H27", "J25", "J26", "L25"}, {16, 43, 6, 16, 43, 16});
}

bool least_squares_fit()
{
    oracle::Matrix x{{0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}};
    oracle::Matrix t{{0, 1, 1, 0}, {0, 0, 0, 1}};
    oracle::Matrix w = oracle::least_squares(x, t);
    oracle::Matrix want{{0, 0, 0.5}, {0.5, 0.5, -0.25}};
    return oracle::max_abs_diff(w, want) < 1e-9;
}

bool ema_coefficients()
{
    auto text = builder::build_directives(
        [] {
            NetworkSpec s;
            s.topology = {2, 2, 2, 2};
            s.activations.assign(3, Activation::tanh);
            s.eta.assign(3, 0.1);
            return s;
        }(),
        {{}, {{0, 0, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 1}}});
    return text.find("0.4*R31:R32+0.6*S31:S32") != std::string::npos;
}

bool engine_matches_oracle()
{
    NetworkSpec s;
    s.topology = {2, 2, 2, 2};
    s.activations.assign(3, Activation::tanh);
    s.eta.assign(3, 0.1);
    s.seed = 1;
    builder::TrainingSet d{{}, {{0, 0, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 1}}};
    auto wb = builder::build_workbook(s, d);
    builder::init_run(wb);
    builder::train_run(wb, 100);
    auto traj = oracle::simulate_vbp(s, d.records, 100);
    auto got = builder::extract_weights(wb);
    for (std::size_t h = 0; h < got.size(); ++h)
        if (oracle::max_abs_diff(got[h], traj.back()[h]) > 1e-10)
            return false;
    return true;
}

} // namespace

int cmd_selftest(const Options&, std::ostream& out)
{
    const std::vector<std::pair<const char*, std::function<bool()>>> checks{
        {"circular counters", circular_counters},
        {"lagged state row", lagged_state},
        {"outer product broadcast", outer_product},
        {"mmult restriction", mmult_restriction},
        {"least squares xor/and", least_squares_fit},
        {"ema coefficients", ema_coefficients},
        {"engine matches oracle", engine_matches_oracle},
    };
    int failed = 0;
    for (const auto& [name, check] : checks) {
        bool ok = false;
        try {
            ok = check();
        } catch (const std::exception& e) {
            out << name << ": " << e.what() << "\n";
        }
        out << (ok ? "PASS " : "FAIL ") << name << "\n";
        failed += !ok;
    }
    out << (checks.size() - static_cast<std::size_t>(failed)) << "/" << checks.size() << " checks passed\n";
    return failed ? 1 : 0;
}

} // namespace vbp::cli
