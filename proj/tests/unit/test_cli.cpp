#include <doctest.h>

#include "hidsym/cli.hpp"

using namespace hidsym;
using namespace hidsym::cli;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_input(text, "in.txt");
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

Report run_preset(const std::string& name, std::map<std::string, mpq_class> params = {}) {
    auto in = parse_input(preset_text(name, params), name);
    apply_params(in, params);
    return run_analysis(in);
}

}  // namespace

TEST_CASE("input errors carry line numbers") {
    CHECK(error_of("chart x y\nmetric\n  x x = 1\n  y y = 1 +\n").rfind("in.txt:4:", 0) == 0);
    CHECK(error_of("chart x y\nmetric\n  x x = 1\n  y y = q\n").find("in.txt:4:") == 0);
    CHECK(error_of("chart x y\nmetric\n  x z = 1\n").find("in.txt:3: 'z' is not a coordinate") == 0);
    CHECK(error_of("chart x y\nfrobnicate\n").find("in.txt:2: unknown directive") == 0);
    CHECK(error_of("chart x x\n").find("repeated") != std::string::npos);
    CHECK(error_of("chart x y\nmetric\n  x x = 1\n  y y = 1\nvector K\n  x = 1\nreduce K via nowhere\n")
              .find("in.txt:7: unknown coordinate map 'nowhere'") == 0);
    CHECK(error_of("chart x y\nmetric\n  x x = 1\n  x x = 2\n").find("given twice") != std::string::npos);
    CHECK(error_of("metric\n  x x = 1\n").find("in.txt:1:") == 0);
    CHECK(error_of("chart x\n").find("no metric") != std::string::npos);
}

TEST_CASE("input grammar round trip") {
    auto in = parse_input(R"(chart t R
param s = 1/2
param k
options
  degree 1
  seed 7
metric
  t t = -1
  R R = exp(s*ln(R))   # comment
vector K
  t = 1
reduce K via identity
  label translation
  candidate C
    R = R
    eta = w/2
  expect typeii C
  expect equation
    R R = 1
    B R = 0
    V = 0
)",
                          "x");
    REQUIRE(in.params.size() == 2);
    CHECK(*in.params[0].value == mpq_class(1, 2));
    CHECK_FALSE(in.params[1].value);
    CHECK(in.options.degree == 1);
    CHECK(in.options.seed == 7);
    REQUIRE(in.reductions.size() == 1);
    const auto& r = in.reductions[0];
    CHECK(r.label == "translation");
    REQUIRE(r.candidates.size() == 1);
    CHECK(r.candidates[0].eta);
    CHECK(r.expect_typeii->size() == 1);
    CHECK(r.expect_equation->A.size() == 1);
    apply_params(in, {{"k", 3}});
    CHECK(*in.params[1].value == 3);
    CHECK_THROWS_AS(apply_params(in, {{"nope", 1}}), ValidationError);
}

TEST_CASE("every preset parses") {
    for (const auto& n : preset_names()) {
        std::map<std::string, mpq_class> p;
        CHECK_NOTHROW(parse_input(preset_text(n, p), n));
    }
    std::map<std::string, mpq_class> bad{{"n", 9}};
    CHECK_THROWS_AS(preset_text("frw", bad), ValidationError);
    CHECK_THROWS_AS(preset_text("nothing", bad), ValidationError);
}

TEST_CASE("flat 3-space with no vectors discovers ten symmetries") {
    auto rep = run_preset("flat3");
    CHECK(rep.exit_code == 0);
    CHECK(rep.json["conformal_algebra"]["dimension"] == 10);
    CHECK(rep.json["symmetries"]["count"] == 10);
}

TEST_CASE("Petrov III report") {
    auto rep = run_preset("petrov3");
    CHECK(rep.exit_code == 0);
    CHECK(rep.json["schema"] == 1);
    CHECK(rep.json["symmetries"]["count"] == 4);
    const auto& r = rep.json["reductions"][0];
    CHECK(r["typeii"].empty());
    CHECK(r["expected_equation"]["verdict"] == "exact");
    CHECK(rep.text().find("TypeII: none") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
    auto a = run_preset("lrs_s2").json_text();
    auto b = run_preset("lrs_s2").json_text();
    CHECK(a == b);
}

TEST_CASE("reduction references are validated") {
    auto in = parse_input("chart x y\nmetric\n  x x = 1\n  y y = 1\nvector K\n  x = y\nreduce K via identity\n", "f");
    try {
        run_analysis(in);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("f:7:") == 0);
    }
    auto in2 = parse_input("chart x y\nmetric\n  x x = 1\n  y y = 1\nvector K\n  x = 1\nreduce K via identity\n"
                           "  candidate C\n    q = 1\n",
                           "g");
    CHECK_THROWS_WITH_AS(run_analysis(in2), doctest::Contains("g:8:"), ValidationError);
}

TEST_CASE("singular parameter values are a validation error") {
    CHECK_THROWS_AS(run_preset("lrs", {{"s", 2}}), ValidationError);
}
