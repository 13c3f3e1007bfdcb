#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vbp/calc/calculate.hpp"
#include "vbp/calc/evaluator.hpp"
#include "vbp/calc/kernels.hpp"
#include "vbp/grid/workbook_io.hpp"

#include <cmath>
#include <sstream>

using namespace vbp;
using namespace vbp::calc;

namespace {

Scalar eval(const char* setup, const char* formula)
{
    grid::Workbook wb = grid::load_workbook(setup);
    if (wb.sheet_count() == 0)
        wb.add_sheet("Sheet1");
    Value v = evaluate_text(wb, 0, formula);
    return v.is_scalar() ? v.scalar() : v.array()(0, 0);
}

Value eval_value(const char* setup, const char* formula)
{
    grid::Workbook wb = grid::load_workbook(setup);
    if (wb.sheet_count() == 0)
        wb.add_sheet("Sheet1");
    return evaluate_text(wb, 0, formula);
}

Array random_array(SplitMix64& rng, std::size_t rows, std::size_t cols)
{
    Array a(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        a.data()[i] = Scalar::number(4.0 * rng.uniform() - 2.0);
    return a;
}

} // namespace

TEST_CASE("scalar arithmetic and comparisons")
{
    CHECK(eval("", "=1+2*3").number() == 7.0);
    CHECK(eval("", "=-2^2").number() == 4.0);
    CHECK(eval("", "=2^3^2").number() == 512.0);
    CHECK(eval("", "=7/2").number() == 3.5);
    CHECK(eval("", "=1<2").boolean());
    CHECK_FALSE(eval("", "=1<>1").boolean());
    CHECK(eval("", "=TRUE+1").number() == 2.0);
    CHECK(eval("", "=MOD(-1,4)").number() == 3.0);
    CHECK(eval("", "=MOD(5,4)").number() == 1.0);
    CHECK(eval("", "=ABS(-2.5)").number() == 2.5);
    CHECK(eval("", "=TANH(0.5)").number() == std::tanh(0.5));
    CHECK(eval("", "=EXP(1)").number() == std::exp(1.0));
}

TEST_CASE("errors propagate")
{
    CHECK(eval("", "=1/0").error() == ErrorCode::div0);
    CHECK(eval("", "=MOD(1,0)").error() == ErrorCode::div0);
    CHECK(eval("", "=1/0+1").error() == ErrorCode::div0);
    CHECK(eval("SET A1 \"x\"\n", "=A1*2").error() == ErrorCode::value);
    CHECK(eval("", "=EXP(1000)").error() == ErrorCode::num);
    CHECK(eval("", "=MINVERSE(MMULT(1,0))").is_error());
}

TEST_CASE("blank cells read as zero")
{
    CHECK(eval("SET A1 1\n", "=A1+B7").number() == 1.0);
}

TEST_CASE("IF evaluates lazily")
{
    CHECK(eval("", "=IF(1<2,3,1/0)").number() == 3.0);
    CHECK(eval("", "=IF(0,1/0,4)").number() == 4.0);
    grid::Workbook wb = grid::load_workbook("OPTION rng_seed 5\nSET A1 1\n");
    const auto before = wb.rng().state();
    evaluate_text(wb, 0, "=IF(1=1,2,RAND())");
    CHECK(wb.rng().state() == before);
}

TEST_CASE("broadcasting")
{
    Value outer = eval_value("SET C4 1\nSET D4 2\nSET E4 3\nSET G4 4\nSET G5 5\n", "=C4:E4*G4:G5");
    REQUIRE(outer.rows() == 2);
    REQUIRE(outer.cols() == 3);
    CHECK(outer.array()(1, 2).number() == 15.0);
    Value bad = eval_value("SET A1 1\nSET B1 2\nSET C1 3\nSET A2 1\nSET B2 2\n", "=A1:C1+A2:B2");
    REQUIRE(bad.is_array());
    CHECK(bad.cols() == 3);
    CHECK(bad.array()(0, 0).error() == ErrorCode::value);
}

TEST_CASE("splice fills, restricts and pads with #N/A")
{
    Array filled = splice(Scalar::number(2), 2, 2);
    CHECK(filled(1, 1).number() == 2.0);
    Array big(3, 3, Scalar::number(1));
    big(0, 1) = Scalar::number(5);
    Array restricted = splice(big, 1, 2);
    CHECK(restricted(0, 1).number() == 5.0);
    Array small(2, 1, Scalar::number(3));
    Array padded = splice(small, 3, 2);
    CHECK(padded(1, 0).number() == 3.0);
    CHECK(padded(0, 1).error() == ErrorCode::na);
    CHECK(padded(2, 0).error() == ErrorCode::na);
    Array one(1, 1, Scalar::number(9));
    CHECK(splice(one, 2, 2)(1, 1).number() == 9.0);
    CHECK(splice(Scalar{}, 1, 1)(0, 0).number() == 0.0);
}

TEST_CASE("referenced ranges splice like their values")
{
    grid::Workbook wb = grid::load_workbook("SET A1 1\nSET A2 2\nSET A3 3\nSET B1 7\nNAME col A1:A3\n"
                                            "ARRAY D1:D2 =col\nARRAY E1:E4 =col\nARRAY F1:G2 =B1\nARRAY H1:I1 =A1:A2\n");
    CHECK(wb.value(0, {2, 4}).number() == 2.0);
    CHECK(wb.value(0, {3, 5}).number() == 3.0);
    CHECK(wb.value(0, {4, 5}).error() == ErrorCode::na);
    CHECK(wb.value(0, {2, 7}).number() == 7.0);
    CHECK(wb.value(0, {1, 9}).error() == ErrorCode::na);
}

TEST_CASE("OFFSET selects records")
{
    const char* data = "SET E6 0\nSET F6 0\nSET E7 0\nSET F7 1\nSET E8 1\nSET F8 0\nNAME TrData E6:F8\nSET K6 2\n"
                       "NAME itc K6\n";
    grid::Workbook wb = grid::load_workbook(std::string(data) + "ARRAY E11:F11 =OFFSET(TrData,itc,)\n");
    CHECK(wb.value(0, {11, 5}).number() == 1.0);
    CHECK(wb.value(0, {11, 6}).number() == 0.0);
    CHECK(eval(data, "=OFFSET(E6,1,1)").number() == 1.0);
    CHECK(eval(data, "=OFFSET(TrData,-7,0)").error() == ErrorCode::ref);
}

TEST_CASE("MMULT, TRANSPOSE and MINVERSE")
{
    const char* m = "SET A1 2\nSET B1 1\nSET A2 1\nSET B2 3\nNAME m A1:B2\n";
    Value inv = eval_value(m, "=MINVERSE(m)");
    REQUIRE(inv.rows() == 2);
    CHECK(inv.array()(0, 0).number() == doctest::Approx(0.6));
    CHECK(inv.array()(0, 1).number() == doctest::Approx(-0.2));
    Value id = eval_value(m, "=MMULT(m,MINVERSE(m))");
    CHECK(id.array()(0, 0).number() == doctest::Approx(1.0));
    CHECK(id.array()(1, 0).number() == doctest::Approx(0.0));
    Value t = eval_value("SET A1 1\nSET B1 2\nSET C1 3\n", "=TRANSPOSE(A1:C1)");
    CHECK(t.rows() == 3);
    CHECK(t.cols() == 1);
    CHECK(eval(m, "=MMULT(m,A1:A1)").error() == ErrorCode::value);
    CHECK(eval("SET A1 1\nSET B1 1\nSET A2 1\nSET B2 1\n", "=MINVERSE(A1:B2)").error() == ErrorCode::num);
}

TEST_CASE("aggregates")
{
    const char* d = "SET A1 1\nSET A2 2\nSET A3 6\n";
    CHECK(eval(d, "=SUM(A1:A3)").number() == 9.0);
    CHECK(eval(d, "=AVERAGE(A1:A3)").number() == 3.0);
    CHECK(eval(d, "=MAX(A1:A3)").number() == 6.0);
    CHECK(eval(d, "=MIN(A1:A3)").number() == 1.0);
    CHECK(eval(d, "=STDEV(A1:A3)").number() == doctest::Approx(std::sqrt(7.0)));
    CHECK(eval(d, "=ISNUMBER(A1)").boolean());
}

TEST_CASE("RAND draws once per output cell in row-major order")
{
    grid::Workbook wb = grid::load_workbook("OPTION rng_seed 11\nARRAY A1:B2 =RAND()\n");
    SplitMix64 ref(11);
    CHECK(wb.value(0, {1, 1}).number() == ref.uniform());
    CHECK(wb.value(0, {1, 2}).number() == ref.uniform());
    CHECK(wb.value(0, {2, 1}).number() == ref.uniform());
    CHECK(wb.value(0, {2, 2}).number() == ref.uniform());
    grid::Workbook rb = grid::load_workbook("OPTION rng_seed 3\nCELL A1 =RANDBETWEEN(0,3)\n");
    SplitMix64 r2(3);
    CHECK(rb.value(0, {1, 1}).number() == static_cast<double>(r2.between(0, 3)));
}

TEST_CASE("max_iterations repeats the row-major sweep")
{
    grid::Workbook wb = grid::load_workbook("OPTION max_iterations 4\nCELL A1 =A1+1\n");
    calculate_sheet(wb, 0);
    CHECK(wb.value(0, {1, 1}).number() == 5.0);
}

TEST_CASE("trace records changed cells")
{
    grid::Workbook wb = grid::load_workbook("CELL A1 =A1+1\nSET B1 3\nCELL C1 =B1\n");
    std::ostringstream trace;
    calculate_sheet(wb, 0, &trace, 10);
    CHECK(trace.str() == "11,Sheet1!A1,1,2\n");
}

TEST_CASE("serial and parallel kernels agree exactly")
{
    SplitMix64 rng(99);
    for (std::size_t n : {1u, 7u, 64u, 200u}) {
        Array a = random_array(rng, n, n);
        Array b = random_array(rng, n, n);
        Array col = random_array(rng, n, 1);
        Array row = random_array(rng, 1, n);
        CHECK(serial::broadcast(formula::BinOp::mul, a, b) == parallel::broadcast(formula::BinOp::mul, a, b));
        CHECK(serial::broadcast(formula::BinOp::sub, col, row) == parallel::broadcast(formula::BinOp::sub, col, row));
        CHECK(serial::broadcast(formula::BinOp::add, a, Scalar::number(1.5)) ==
              parallel::broadcast(formula::BinOp::add, a, Scalar::number(1.5)));
        CHECK(serial::transpose(a) == parallel::transpose(a));
        CHECK(serial::mmult(a, b) == parallel::mmult(a, b));
        CHECK(serial::mmult(a, col) == parallel::mmult(a, col));
    }
}

TEST_CASE("broadcast shapes")
{
    CHECK(broadcast_shape(1, 3, 2, 1) == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK(broadcast_shape(2, 3, 2, 3) == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK_FALSE(broadcast_shape(2, 3, 3, 2));
}

TEST_CASE("the kernel mode switch keeps engine results identical")
{
    const char* text = "OPTION rng_seed 4\nARRAY A1:C40 =RAND()\nARRAY E1:G40 =A1:C40*2-1\n"
                       "ARRAY I1:K3 =MMULT(TRANSPOSE(A1:C40),E1:G40)\n";
    set_kernel_mode(KernelMode::serial);
    grid::Workbook s = grid::load_workbook(text);
    set_kernel_mode(KernelMode::parallel);
    grid::Workbook p = grid::load_workbook(text);
    set_kernel_mode(KernelMode::serial);
    CHECK(grid::save_workbook(s) == grid::save_workbook(p));
}
