#include "tietz/errors.hpp"
#include "tietz/moldb.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace tietz;

namespace {

struct Printed
{
    char const* name;
    char const* c_h; ///< as printed, digit groups and all
};

// Threshold column of the reference table.
Printed const kTable[] = {
    {"HF", "0.168 490 115"},  {"Cl2", "0.012 624 657"}, {"I2", "0.003 478 812"}, {"H2", "0.301 313 237"},
    {"O2", "0.043 832 785"},  {"N2", "0,047 071 975"},  {"CO", "0.083 156 934"}, {"NO", "0.043 908 643"},
    {"O2+", "0.040 649 248"}, {"NO+", "0.054 710 486"}, {"N2+", "0.048 681 178"},
};

std::filesystem::path write_temp(std::string const& name, std::string const& text)
{
    auto const path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("builtin table thresholds")
{
    auto const& rows = builtin_molecules();
    REQUIRE(rows.size() == 11);
    for (auto const& printed : kTable) {
        CAPTURE(printed.name);
        auto const m = find_molecule(rows, printed.name);
        REQUIRE(m.has_value());
        auto const want = parse_number(printed.c_h);
        REQUIRE(want.has_value());
        CHECK(std::abs(m->c_h_min - *want) / *want <= 1e-6);
        CHECK(m->c_h_min == std::exp(-m->b_h * m->r_e));
        CHECK(!m->D.has_value());
        CHECK(!m->mu.has_value());
    }
    CHECK(find_molecule(rows, "H2(X1Sigma_g+)")->b_h == 1.61890);
    CHECK(find_molecule(rows, "I2")->r_e == 2.666);
    CHECK(!find_molecule(rows, "He2").has_value());
}

TEST_CASE("number parsing")
{
    CHECK(parse_number("0,047") == 0.047);
    CHECK(parse_number("1.942 07") == 1.94207);
    CHECK(parse_number("2\xE2\x80\x89" "200\xE2\x80\x89" "354") == 2200354.0);
    CHECK(parse_number("0.301\xC2\xA0" "313") == 0.301313);
    CHECK(parse_number("-0.25") == -0.25);
    CHECK(parse_number("+3") == 3.0);
    CHECK(parse_number("1e-3") == 1e-3);
    CHECK(!parse_number("").has_value());
    CHECK(!parse_number("1,2.3").has_value());
    CHECK(!parse_number("0,1,2").has_value());
    CHECK(!parse_number("abc").has_value());
    CHECK(!parse_number("1.5x").has_value());
}

TEST_CASE("well-formed file")
{
    auto const path = write_temp("tietz_one.mol", "# test molecule\n"
                                                  "name = LiH(X1Sigma+)\n"
                                                  "b_h = 1,128 8   # decimal comma\n"
                                                  "r_e = 1.595\n"
                                                  "D = 2.515\n"
                                                  "mu = 0.8801\n"
                                                  "c_h = 0.2\n");
    auto const records = load_molecules(path);
    REQUIRE(records.size() == 1);
    auto const& m = records[0];
    CHECK(m.name == "LiH(X1Sigma+)");
    CHECK(m.b_h == 1.1288);
    CHECK(m.r_e == 1.595);
    CHECK(m.D == 2.515);
    CHECK(m.mu == 0.8801);
    CHECK(m.c_h == 0.2);
    CHECK(m.c_h_min == std::exp(-1.1288 * 1.595));
    std::filesystem::remove(path);
}

TEST_CASE("several records separated by blank lines")
{
    auto const records = parse_molecules("name = A\nb_h = 1\nr_e = 1\n\n\n# comment\nname = B\nb_h = 2\nr_e = 0.5\n");
    REQUIRE(records.size() == 2);
    CHECK(records[1].name == "B");
    CHECK(records[1].c_h_min == std::exp(-1.0));
}

TEST_CASE("parse errors carry the line number")
{
    auto line_of = [](std::string const& text) {
        try {
            parse_molecules(text);
        }
        catch (ParseError const& e) {
            return e.line();
        }
        return -1;
    };

    try {
        parse_molecules("name = X\nr_e = 1.0\n");
        FAIL("expected a parse error");
    }
    catch (ParseError const& e) {
        CHECK(std::string(e.what()).find("b_h") != std::string::npos);
        CHECK(std::string(e.what()).find("line 1") == 0);
        CHECK(e.line() == 1);
    }
    CHECK(line_of("name = A\nb_h = 1\nr_e = 1\n\nname = B\nb_h = 1\n") == 5);
    CHECK(line_of("name = A\nb_h = one\nr_e = 1\n") == 2);
    CHECK(line_of("name = A\nb_h = 1\nr_e = 1\ncolour = red\n") == 4);
    CHECK(line_of("name = A\nb_h 1\n") == 2);
    CHECK(line_of("b_h = 1\nr_e = 1\n") == 1);
    CHECK(line_of("name = A\nb_h = 1\nr_e = 1\nc_h = 1.0\n") == 4);
    CHECK(line_of("name = A\nb_h = -1\nr_e = 1\n") == 3);
    CHECK_THROWS_AS(load_molecules("/nonexistent/tietz.mol"), Error);
}

TEST_CASE("default molecules honour the environment")
{
    auto const path = write_temp("tietz_env.mol", "name = Xe2\nb_h = 1.5\nr_e = 4.4\n");
    ::setenv("TIETZ_SPECTRA_DATA", path.c_str(), 1);
    auto const with = default_molecules();
    ::unsetenv("TIETZ_SPECTRA_DATA");
    auto const without = default_molecules();
    CHECK(with.size() == 12);
    CHECK(with.back().name == "Xe2");
    CHECK(without.size() == 11);
    std::filesystem::remove(path);
}
