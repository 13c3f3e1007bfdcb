#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vbp/calc/calculate.hpp"
#include "vbp/errors.hpp"
#include "vbp/grid/workbook_io.hpp"

using namespace vbp;
using namespace vbp::grid;

TEST_CASE("column letters are bijective base 26")
{
    CHECK(column_letters(1) == "A");
    CHECK(column_letters(26) == "Z");
    CHECK(column_letters(27) == "AA");
    CHECK(column_letters(108) == "DD");
    CHECK(column_letters(16384) == "XFD");
    for (int c = 1; c <= 20000; c += 7)
        if (c <= max_col)
            CHECK(column_index(column_letters(c)) == c);
    CHECK_FALSE(column_index("XFE"));
    CHECK_FALSE(column_index(""));
}

TEST_CASE("addresses round-trip")
{
    for (const char* text : {"A1", "B2", "VBP!DD485", "Sheet1!C4:E4", "XFD1048576"}) {
        RangeAddr r = parse_range(text);
        CHECK(format_range(r) == text);
    }
    CHECK(parse_address("$C$4").coord == Coord{4, 3});
    RangeAddr flipped = parse_range("E9:C4");
    CHECK(format_rect(flipped.rect) == "C4:E9");
}

TEST_CASE("malformed addresses name the offending position")
{
    try {
        parse_address("C0");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 1);
    }
    CHECK_THROWS_AS(parse_address("4C"), ParseError);
    CHECK_THROWS_AS(parse_range("A1:"), ParseError);
    CHECK_THROWS_AS(parse_address("!A1"), ParseError);
    CHECK_FALSE(match_a1("itcp1"));
    CHECK(match_a1("$B$2") == Coord{2, 2});
}

TEST_CASE("rect geometry")
{
    Rect r = Rect::of({3, 2}, 2, 4);
    CHECK(r.rows() == 2);
    CHECK(r.cols() == 4);
    CHECK(r.contains({4, 5}));
    CHECK_FALSE(r.contains({5, 5}));
    CHECK(r.intersects(Rect::single({4, 2})));
    CHECK_FALSE(r.intersects(Rect::single({2, 2})));
}

TEST_CASE("names are case-insensitive and unique")
{
    Workbook wb;
    int s = wb.add_sheet("VBP");
    wb.define_name("TrData", s, parse_range("E6:H9").rect);
    CHECK(wb.name_id("trdata") >= 0);
    CHECK(wb.resolve("TRDATA").rect == parse_range("E6:H9").rect);
    CHECK_THROWS_AS(wb.define_name("trDATA", s, Rect::single({1, 1})), ValidationError);
    CHECK_THROWS_AS(wb.define_name("B2", s, Rect::single({1, 1})), ValidationError);
    CHECK_THROWS_AS(wb.resolve("missing"), ValidationError);
}

TEST_CASE("literals cannot overwrite formula cells and groups cannot overlap")
{
    Workbook wb = load_workbook("SET A1 2\nARRAY B1:B3 =A1*2\n");
    CHECK(wb.value(0, {3, 2}).number() == 4.0);
    CHECK_THROWS_AS(wb.set_value(0, {2, 2}, Scalar::number(1)), ValidationError);
    CHECK_THROWS_AS(load_workbook("ARRAY B1:B3 =1\nARRAY A2:C2 =2\n"), ValidationError);
    CHECK(wb.group_at(0, {2, 2}) >= 0);
    CHECK(wb.group_at(0, {4, 2}) == -1);
}

TEST_CASE("anchors iterate row-major")
{
    Workbook wb = load_workbook("CELL C1 =1\nCELL A2 =2\nCELL B1 =3\n");
    std::vector<Coord> order;
    for (const auto& [c, id] : wb.sheet(0).anchors())
        order.push_back(c);
    CHECK(order == std::vector<Coord>{{1, 2}, {1, 3}, {2, 1}});
}

TEST_CASE("literal parsing")
{
    CHECK(parse_literal("1.5").number() == 1.5);
    CHECK(parse_literal("TRUE").boolean());
    CHECK(parse_literal("\"a \"\"b\"\"\"").text() == "a \"b\"");
    CHECK(parse_literal("#N/A").error() == ErrorCode::na);
    CHECK_THROWS_AS(parse_literal("1.5x"), ValidationError);
    CHECK(format_literal(Scalar::text("say \"hi\"")) == "\"say \"\"hi\"\"\"");
}

TEST_CASE("save and load reproduce state and continue identically")
{
    const char* text = "OPTION rng_seed 7\nSET A1 3\nNAME x A1\nCELL B1 =B1+x\nARRAY C1:C2 =RAND()\n"
                       "SET D1 \"label\"\n";
    Workbook wb = load_workbook(text);
    calc::calculate_sheet(wb, 0);
    Workbook copy = load_workbook(save_workbook(wb));
    CHECK(save_workbook(copy) == save_workbook(wb));
    calc::calculate_sheet(wb, 0);
    calc::calculate_sheet(copy, 0);
    for (Coord c : {Coord{1, 2}, Coord{1, 3}, Coord{2, 3}})
        CHECK(wb.value(0, c) == copy.value(0, c));
    CHECK(copy.value(0, {1, 4}).text() == "label");
}

TEST_CASE("directive errors carry line numbers")
{
    try {
        load_workbook("SET A1 1\nBOGUS A1\n");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
    }
    CHECK_THROWS_AS(load_workbook("CELL A1:B2 =1\n"), ValidationError);
    CHECK_THROWS_AS(load_workbook("OPTION colour blue\n"), ValidationError);
}

TEST_CASE("workbook copies are independent")
{
    Workbook wb = load_workbook("CELL A1 =A1+1\n");
    Workbook copy = wb;
    calc::calculate_sheet(copy, 0);
    CHECK(wb.value(0, {1, 1}).number() == 1.0);
    CHECK(copy.value(0, {1, 1}).number() == 2.0);
}
