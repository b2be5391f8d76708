#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hankel/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace hankel;
using measures::AtomicMeasure;
using measures::Axis;
using measures::DensityMeasure;

TEST_CASE("measure literal round trip: atoms") {
    const AtomicMeasure m({{0.5, 1.25}, {2.0, 0.1}}, Axis::SigmaHalfLine);
    const auto j = io::measure_to_json(m);
    const auto back = std::get<AtomicMeasure>(io::measure_from_json(j));
    REQUIRE(back.size() == 2);
    CHECK(back.axis() == Axis::SigmaHalfLine);
    CHECK(back.atoms()[0].position == 0.5);
    CHECK(back.atoms()[0].weight == 1.25);
    CHECK(back.atoms()[1].position == 2.0);
    CHECK_FALSE(back.is_signed());

    const AtomicMeasure s({{0.0, 1.0}, {1.0, -1.0}}, Axis::SigmaLine, true);
    const auto sj = io::measure_to_json(s);
    CHECK(std::get<AtomicMeasure>(io::measure_from_json(sj)).is_signed());
}

TEST_CASE("measure literal round trip: density") {
    DensityMeasure d;
    d.axis = Axis::SigmaLine;
    d.start = -1.0;
    d.step = 0.25;
    d.values = {0.1, 0.2, 0.30000000000000004, 0.0};
    const auto j = io::measure_to_json(d);
    const auto back = std::get<DensityMeasure>(io::measure_from_json(j));
    CHECK(back.start == d.start);
    CHECK(back.step == d.step);
    REQUIRE(back.values.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(back.values[i] == d.values[i]);
}

TEST_CASE("measure literal errors") {
    CHECK_THROWS(io::measure_from_json(nlohmann::json{{"axis", "nope"}, {"atoms", {{1.0, 1.0}}}}));
    CHECK_THROWS(io::measure_from_json(nlohmann::json{{"axis", "Sigma"}}));
    nlohmann::json bad{{"axis", "Sigma"},
                       {"grid", {{"start", 0.0}, {"step", 0.1}, {"n", 5}}},
                       {"values", {1.0, 2.0}}};
    CHECK_THROWS(io::measure_from_json(bad));
}

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(io::format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(std::stod(io::format_double(0.1)) == 0.1);
    CHECK(std::stod(io::format_double(-2.718281828459045)) == -2.718281828459045);
}

TEST_CASE("ids CSV layout") {
    spectra::IdsCurve c;
    c.lambda = {0.5, 1.0};
    c.value = {0.25, 0.125};
    c.window_length = 80.0;
    c.scheme = 'a';
    const std::string path = "/tmp/hankel_test_ids.csv";
    io::write_ids_csv(c, path);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "lambda,ids,scheme,M");
    std::getline(in, line);
    CHECK(line == "0.5,0.25,a,40");
    std::remove(path.c_str());
}
