#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vbp/builder/builder.hpp"
#include "vbp/builder/generators.hpp"
#include "vbp/builder/runs.hpp"
#include "vbp/calc/calculate.hpp"
#include "vbp/errors.hpp"
#include "vbp/formula/format.hpp"
#include "vbp/grid/workbook_io.hpp"
#include "vbp/oracle/simulate.hpp"

#include <sstream>

using namespace vbp;
using namespace vbp::builder;

namespace {

const TrainingSet xor_and{{"x1", "x2", "targ1", "targ2"}, {{0, 0, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 1}}};

NetworkSpec xor_spec()
{
    NetworkSpec s;
    s.topology = {2, 2, 2, 2};
    s.activations.assign(3, Activation::tanh);
    s.eta.assign(3, 0.1);
    s.seed = 3;
    return s;
}

std::string formula_at(const grid::Workbook& wb, const char* addr)
{
    auto a = grid::parse_address(addr);
    int id = wb.group_at(0, a.coord);
    REQUIRE(id >= 0);
    return formula::format_formula(*wb.group(id).ast);
}

double max_diff(const std::vector<oracle::Matrix>& a, const std::vector<oracle::Matrix>& b)
{
    double d = 0.0;
    for (std::size_t h = 0; h < a.size(); ++h)
        d = std::max(d, oracle::max_abs_diff(a[h], b[h]));
    return d;
}

} // namespace

TEST_CASE("layout of the 4-record 2-2-2-2 sheet")
{
    Layout l = compute_layout(xor_spec(), 4);
    CHECK(grid::format_rect(l.trdata) == "E6:H9");
    CHECK(grid::format_coord(l.counter) == "K5");
    CHECK(grid::format_coord(l.itc) == "K6");
    CHECK(grid::format_coord(l.itcp1) == "K7");
    CHECK(grid::format_coord(l.eta[0]) == "K11");
    CHECK(grid::format_coord(l.ru) == "K14");
    CHECK(grid::format_rect(l.sample_a) == "E11:H11");
    CHECK(grid::format_rect(l.sample_b) == "E12:H12");
    CHECK(l.a.header_row == 17);
    CHECK(l.b.header_row == 23);
    CHECK(grid::format_rect(l.a.w[0]) == "E18:G19");
    CHECK(grid::format_rect(l.a.out[2]) == "P18:P19");
    CHECK(grid::format_rect(l.a.del[0]) == "T18:T19");
    CHECK(grid::format_rect(l.ema) == "S31:S32");
    CHECK(l.a.w_name(1) == "w_1A");
    CHECK(l.b.out_name(3, 3) == "outB");
    CHECK(l.a.del_name(3, 3) == "delA");
    CHECK(l.a.prev_name(1, 3) == "inpA");
    CHECK(l.a.prev_name(2, 3) == "out_1A");
}

TEST_CASE("per-layer learning rates get their own cells")
{
    NetworkSpec s = xor_spec();
    s.eta = {0.1, 0.2, 0.3};
    Layout l = compute_layout(s, 4);
    REQUIRE(l.eta.size() == 3);
    CHECK(l.eta_name(2) == "eta_2");
    grid::Workbook wb = build_workbook(s, xor_and);
    CHECK(wb.value(0, l.eta[2]).number() == 0.3);
    CHECK(formula_at(wb, "E24").find("eta_1") != std::string::npos);
}

TEST_CASE("activation and derivative formulas")
{
    CHECK(activation_formula(Activation::tanh, "z") == "TANH(z)");
    CHECK(activation_formula(Activation::logistic, "z") == "1/(1+EXP(-z))");
    CHECK(activation_formula(Activation::identity, "z") == "z");
    CHECK(activation_formula(Activation::relu, "z") == "IF(z>0,z,0)");
    CHECK(derivative_formula(Activation::tanh, "o") == "(1-o^2)");
    CHECK(derivative_formula(Activation::logistic, "o") == "(o*(1-o))");
    CHECK(derivative_formula(Activation::identity, "o").empty());
    CHECK(derivative_formula(Activation::relu, "o") == "IF(o>0,1,0)");
}

TEST_CASE("generated formulas")
{
    grid::Workbook wb = build_workbook(xor_spec(), xor_and);
    CHECK(formula_at(wb, "K6") == "MOD(itc+1,4)");
    CHECK(formula_at(wb, "K7") == "MOD(itc+1,4)");
    CHECK(formula_at(wb, "E11") == "OFFSET(TrData,itc,)");
    CHECK(formula_at(wb, "E18") == "IF(ru=0,RAND(),w_1B+eta*(TRANSPOSE(inpB)*del_1B))");
    CHECK(formula_at(wb, "H18") == "TANH(MMULT(w_1A,inpA))");
    CHECK(formula_at(wb, "R18") == "(targA-outA)*(1-outA^2)");
    CHECK(formula_at(wb, "S18") == "MMULT(TRANSPOSE(w_3A),delA)*(1-out_2A^2)");
    CHECK(formula_at(wb, "E24") == "w_1A+eta*(TRANSPOSE(inpA)*del_1A)");
    CHECK(formula_at(wb, "S31") == "IF(S31:S32=0,R31:R32,0.4*R31:R32+0.6*S31:S32)");
    CHECK(wb.value(0, {20, 4}).number() == 1.0);
    CHECK(wb.value(0, {20, 8}).number() == 1.0);
}

TEST_CASE("entry state and the ru gate")
{
    grid::Workbook wb = build_workbook(xor_spec(), xor_and);
    CHECK(wb.value(0, {6, 11}).number() == 1.0);
    CHECK(wb.value(0, {7, 11}).number() == 2.0);
    init_run(wb);
    for (const auto& w : extract_weights(wb, 'A'))
        for (double v : w.data()) {
            CHECK(v >= 0.0);
            CHECK(v < 1.0);
        }
    CHECK(wb.value(0, {14, 11}).number() == 0.0);
    train_run(wb, 1);
    CHECK(wb.value(0, {14, 11}).number() == 1.0);
    CHECK(wb.settings().max_iterations == 1);
}

TEST_CASE("symmetric init draws from [-1, 1)")
{
    NetworkSpec s = xor_spec();
    s.init = RandomInit::symmetric;
    grid::Workbook wb = build_workbook(s, xor_and);
    init_run(wb);
    bool negative = false;
    for (const auto& w : extract_weights(wb, 'A'))
        for (double v : w.data()) {
            CHECK(v >= -1.0);
            CHECK(v < 1.0);
            negative = negative || v < 0.0;
        }
    CHECK(negative);
}

TEST_CASE("engine matches oracle in every sampling mode and activation")
{
    const std::vector<std::pair<Sampling, std::vector<Activation>>> cases{
        {Sampling::sequential, {Activation::logistic, Activation::relu, Activation::identity}},
        {Sampling::shuffled, {Activation::tanh, Activation::tanh, Activation::logistic}},
        {Sampling::random, {Activation::relu, Activation::tanh, Activation::identity}},
    };
    for (const auto& [mode, acts] : cases) {
        NetworkSpec s = xor_spec();
        s.sampling = mode;
        s.activations = acts;
        s.init = RandomInit::symmetric;
        s.eta = {0.05, 0.1, 0.2};
        grid::Workbook wb = build_workbook(s, xor_and);
        init_run(wb);
        train_run(wb, 200);
        auto traj = oracle::simulate_vbp(s, xor_and.records, 200);
        CAPTURE(sampling_name(mode));
        CHECK(max_diff(extract_weights(wb), traj.back()) <= 1e-12);
    }
}

TEST_CASE("an oracle simulator tracks counters and PRNG state")
{
    NetworkSpec s = xor_spec();
    s.sampling = Sampling::random;
    grid::Workbook wb = build_workbook(s, xor_and);
    oracle::VbpSimulator sim(s, xor_and.records);
    init_run(wb);
    sim.init_pass();
    for (int i = 0; i < 17; ++i) {
        train_run(wb, 1);
        sim.train_pass();
    }
    CHECK(wb.value(0, {6, 11}).number() == sim.itc());
    CHECK(wb.value(0, {7, 11}).number() == sim.itcp1());
    CHECK(wb.rng().state() == sim.rng_state());
}

TEST_CASE("a saved workbook resumes training identically")
{
    grid::Workbook wb = build_workbook(xor_spec(), xor_and);
    init_run(wb);
    train_run(wb, 10);
    grid::Workbook resumed = grid::load_workbook(grid::save_workbook(wb));
    train_run(wb, 25);
    train_run(resumed, 25);
    CHECK(max_diff(extract_weights(wb), extract_weights(resumed)) == 0.0);
}

TEST_CASE("metadata and data read back")
{
    NetworkSpec s = xor_spec();
    s.sampling = Sampling::shuffled;
    s.init = RandomInit::symmetric;
    grid::Workbook wb = build_workbook(s, xor_and);
    NetworkSpec back = spec_from_workbook(wb);
    CHECK(back.topology == s.topology);
    CHECK(back.activations == s.activations);
    CHECK(back.eta == s.eta);
    CHECK(back.seed == s.seed);
    CHECK(back.sampling == Sampling::shuffled);
    CHECK(back.init == RandomInit::symmetric);
    CHECK(training_records(wb) == xor_and.records);
    CHECK(training_sheet(wb) == 0);
    CHECK(ema_values(wb).size() == 2);
}

TEST_CASE("mismatched data is rejected")
{
    TrainingSet bad{{}, {{0, 0, 0}}};
    CHECK_THROWS_AS(build_workbook(xor_spec(), bad), ValidationError);
    NetworkSpec s = xor_spec();
    s.topology = {2, 2};
    s.activations = {Activation::tanh, Activation::tanh};
    CHECK_THROWS_AS(build_workbook(s, xor_and), ValidationError);
}

TEST_CASE("traces number passes from the init pass")
{
    grid::Workbook wb = build_workbook(xor_spec(), xor_and);
    std::ostringstream trace;
    init_run(wb, &trace);
    train_run(wb, 2, &trace, 0);
    const std::string t = trace.str();
    CHECK(t.rfind("0,VBP!", 0) == 0);
    CHECK(t.find("\n1,VBP!K5,") != std::string::npos);
    CHECK(t.find("\n2,VBP!K5,") != std::string::npos);
}

TEST_CASE("EMA formula coefficients")
{
    const auto e = grid::Rect::single({3, 2});
    const auto m = grid::Rect::single({3, 3});
    CHECK(ema_formula(e, m, 4) == "=IF(C3=0,B3,0.4*B3+0.6*C3)");
    CHECK(ema_formula(e, m, 1) == "=IF(C3=0,B3,1*B3+0*C3)");
}

TEST_CASE("tabulation fills one row per pass")
{
    grid::Workbook wb = grid::load_workbook("CELL D11 =MOD(D11+1,3)\nCELL P18 =D11*10\n");
    auto tab = gen_tabulation(wb, 0, {11, 4}, {{18, 16}}, {{0}, {10}, {25}}, 28, 3);
    CHECK(wb.value(0, {tab.outputs[0].top_left.row + 1, tab.outputs[0].top_left.col}).number() == 10.0);
    CHECK(wb.value(0, tab.outputs[0].top_left).number() == 0.0);
    calc::calculate_sheet(wb, 0);
    calc::calculate_sheet(wb, 0);
    CHECK(wb.value(0, {tab.outputs[0].top_left.row + 2, tab.outputs[0].top_left.col}).number() == 20.0);
    CHECK(wb.value(0, tab.averages[0]).number() == doctest::Approx(5.0 / 3.0));
    CHECK_THROWS_AS(gen_tabulation(wb, 0, {11, 4}, {{18, 16}}, {{0, 1}}, 40, 3), ValidationError);
}

TEST_CASE("forward sheet evaluates literal weights")
{
    NetworkSpec s = xor_spec();
    s.topology = {2, 1};
    s.activations = {Activation::identity};
    s.eta = {0.1};
    TrainingSet d{{}, {{1, 2, 0}, {3, 4, 0}}};
    grid::Workbook wb = grid::load_workbook(forward_directives(s, {{{0.5, -1, 2}}}, d));
    ForwardLayout f = forward_layout(s, 2);
    CHECK(wb.value(0, f.driver).number() == 1.0);
    CHECK(wb.value(0, f.region.out[0].top_left).number() == 0.5 * 3 - 4 + 2);
    calc::calculate_sheet(wb, 0);
    CHECK(wb.value(0, f.region.out[0].top_left).number() == 0.5 * 1 - 2 + 2);
    CHECK_THROWS_AS(forward_directives(s, {{{0.5, -1}}}, d), ValidationError);
}
