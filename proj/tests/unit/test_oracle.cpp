// Values frozen by tools/derive_oracle.py (sympy).
#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "hidsym/conformal.hpp"
#include "hidsym/liesym.hpp"
#include "hidsym/sym/parse.hpp"

using namespace hidsym;
using geom::Chart;
using geom::Metric;
using sym::Expr;

namespace {

const nlohmann::json& derived() {
    static const nlohmann::json j = [] {
        std::ifstream f(HIDSYM_GOLDEN_DIR "/derived.json");
        REQUIRE(f);
        return nlohmann::json::parse(f);
    }();
    return j;
}

Expr P(const std::string& s) { return sym::parse(s); }

Expr D(const char* key) { return P(derived().at(key).get<std::string>()); }

bool equal(const Expr& a, const Expr& b) { return sym::is_zero(a - b).zero(); }

Metric diag(std::vector<std::string> coords, std::vector<const char*> entries) {
    sym::ExprMatrix g(coords.size(), std::vector<Expr>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) g[i][i] = P(entries[i]);
    return Metric(Chart{coords}, g);
}

}  // namespace

TEST_CASE("oracle: derivatives and inverses") {
    CHECK(equal(sym::diff(P("cosh(theta)^2*cosh(phi)^2"), "theta"), D("diff_cosh")));
    sym::ExprMatrix g(4, std::vector<Expr>(4));
    g[0][0] = P("3*x/2");
    g[0][1] = g[1][0] = Expr(1);
    g[2][2] = g[3][3] = P("v^2/x^3");
    Metric m(Chart{{"rho", "v", "x", "y"}}, g);
    const auto& blk = derived().at("petrov_inverse_block");
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(equal(m.inverse()[i][j], P(blk[i][j].get<std::string>())));
}

TEST_CASE("oracle: connection, Hessian and curvature") {
    Metric lrs = diag({"t", "R", "z", "y"}, {"-1", "1", "exp(s*ln(R))", "exp(s*ln(R))"});
    CHECK(equal(lrs.christoffel()[1][2][2], D("lrs_christoffel_R_zz")));
    Metric frw = diag({"t", "x", "y", "z"}, {"exp(2*t)", "-exp(2*t)", "-exp(2*t)", "-exp(2*t)"});
    CHECK(equal(frw.christoffel()[0][0][0], D("frw_christoffel_t_tt")));
    auto h = geom::hessian(frw, P("t"));
    const auto& want = derived().at("frw_hessian_t");
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(equal(h[i][j], P(want[i][j].get<std::string>())));

    CHECK(equal(geom::ricci_scalar(diag({"theta", "phi"}, {"1", "sin(theta)^2"})), D("ricci_unit_sphere")));
    std::vector<std::string> c = {"theta", "phi", "zeta"};
    CHECK(equal(geom::ricci_scalar(diag(c, {"1", "cosh(theta)^2", "cosh(theta)^2*cosh(phi)^2"})),
                D("ricci_unit_hyperbolic")));
    CHECK(equal(geom::ricci_scalar(diag(c, {"-1", "-cosh(theta)^2", "-cosh(theta)^2*cosh(phi)^2"})),
                D("ricci_negative_hyperbolic")));
}

TEST_CASE("oracle: conformal algebra") {
    Metric e2 = diag({"x", "y"}, {"1", "1"});
    CHECK_FALSE(D("rotation_curl").is_zero());
    CHECK(geom::is_gradient(e2, {P("y"), P("-x")}).nonzero());
    CHECK(conf::solve_ckv_ansatz(e2, 1).size() == derived().at("ckv_dimension_E2_degree1").get<std::size_t>());
    CHECK(conf::solve_ckv_ansatz(diag({"t", "x", "y"}, {"-1", "1", "1"}), 2).size() ==
          derived().at("ckv_dimension_M3_degree2").get<std::size_t>());
    Metric m4 = diag({"t", "x", "y", "z"}, {"-1", "1", "1", "1"});
    CHECK(conf::solve_ckv_ansatz(m4, 2).size() == derived().at("ckv_dimension_M4_degree2").get<std::size_t>());
    auto r = conf::conformal_rescale_check(m4, {P("t"), P("x"), P("y"), P("z")}, P("exp(t)"));
    CHECK(equal(r.psi_scaled, D("rescaled_psi_H")));
}

TEST_CASE("oracle: prolongation on the wave equation") {
    Metric m4 = diag({"t", "x", "y", "z"}, {"1", "-1", "-1", "-1"});
    auto wave = geom::laplace_beltrami(m4);
    auto h = lie::verify_by_prolongation(wave, lie::from_vector("H", {P("t"), P("x"), P("y"), P("z")}));
    CHECK(h.ok() == D("wave_H_residual").is_zero());
    CHECK(equal(h.lambda, D("wave_H_lambda")));
    auto bad = lie::verify_by_prolongation(wave, lie::from_vector("t2", {P("t^2"), Expr(), Expr(), Expr()}));
    CHECK(bad.satisfied == (derived().at("wave_t2_violated").get<bool>() ? sym::ZeroState::NonZero
                                                                          : sym::ZeroState::Zero));
}
