#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rotator/io.hpp"

using namespace rotator;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("doubles round-trip through the CSV format") {
    for (double x : {1.0 / 3.0, -2.718281828459045e-7, 1e17, 0.1, -0.0, 5.0}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("chart state JSON round-trip") {
    ChartState s;
    s.theta = 1.234;
    s.phi_sph = -0.5;
    s.V = {0.1, -0.2, 0.3};
    s.theta_dot = 0.7;
    s.phi_sph_dot = -1.1;
    const ChartState back = chart_state_from_json(chart_state_to_json(s));
    CHECK(back.theta == s.theta);
    CHECK(back.phi_sph == s.phi_sph);
    CHECK(back.theta_dot == s.theta_dot);
    CHECK(back.phi_sph_dot == s.phi_sph_dot);
    for (int i = 0; i < 3; ++i) CHECK(back.V[i] == s.V[i]);

    CHECK_THROWS_AS(chart_state_from_json("{\"theta\": 1}"), ConfigError);
    CHECK_THROWS_AS(chart_state_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(chart_state_from_file("/nonexistent/state.json"), ConfigError);
}

TEST_CASE("csv writer emits deterministic bytes") {
    const std::string path1 = "test_out_a.csv", path2 = "test_out_b.csv";
    for (const std::string& path : {path1, path2}) {
        CsvWriter csv(path, {"a", "b"});
        csv.row({1.0 / 3.0, -7.25e-13});
        csv.row({2.0, 3.0});
    }
    const std::string a = slurp(path1), b = slurp(path2);
    CHECK(a == b);
    CHECK(a.substr(0, 4) == "a,b\n");
    CHECK(a.find("0.33333333333333331") != std::string::npos);
    std::remove(path1.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("sidecar stores the resolved configuration") {
    const std::string path = "test_sidecar.json";
    write_sidecar(path, "hessian", {{"profile", "affine:1"}, {"seed", "42"}}, 0.25);
    const std::string text = slurp(path);
    CHECK(text.find("\"command\": \"hessian\"") != std::string::npos);
    CHECK(text.find("\"profile\": \"affine:1\"") != std::string::npos);
    CHECK(text.find("\"seed\": 42") != std::string::npos);
    CHECK(text.find("\"version\"") != std::string::npos);
    std::remove(path.c_str());
}
