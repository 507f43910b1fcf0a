#include <doctest.h>

#include "hidsym/liesym.hpp"
#include "hidsym/sym/parse.hpp"

using namespace hidsym;
using namespace hidsym::lie;
using geom::Chart;
using sym::parse;

namespace {

Expr P(const char* s) { return parse(s); }

Metric diag(std::vector<std::string> coords, std::vector<const char*> entries) {
    sym::ExprMatrix g(coords.size(), std::vector<Expr>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) g[i][i] = P(entries[i]);
    return Metric(Chart{coords}, g);
}

Vector V(std::initializer_list<const char*> xs) {
    Vector v;
    for (auto x : xs) v.push_back(P(x));
    return v;
}

}  // namespace

TEST_CASE("prolongation oracle on the wave equation") {
    Metric m4 = diag({"t", "x", "y", "z"}, {"1", "-1", "-1", "-1"});
    LinearPDE wave = geom::laplace_beltrami(m4);
    auto r = verify_by_prolongation(wave, u_scaling(4));
    CHECK(r.ok());
    auto h = verify_by_prolongation(wave, from_vector("H", V({"t", "x", "y", "z"})));
    CHECK(h.ok());
    CHECK(h.lambda == Expr(-2));
    auto bad = from_vector("bad", V({"t^2", "0", "0", "0"}));
    CHECK(verify_by_prolongation(wave, bad).satisfied == sym::ZeroState::NonZero);
    CHECK(check_linear_pde_symmetry(wave, bad).satisfied == sym::ZeroState::NonZero);
    CHECK(verify_by_prolongation(wave, generic_solution(4)).ok());
}

TEST_CASE("laplace symmetries of flat space agree with both checks") {
    Metric m4 = diag({"t", "x", "y", "z"}, {"1", "-1", "-1", "-1"});
    LinearPDE wave = geom::laplace_beltrami(m4);
    auto catalog = conf::solve_ckv_ansatz(m4, 2);
    auto syms = laplace_symmetries(m4, catalog);
    CHECK(syms.generators.size() == 17);
    CHECK(syms.rejected.empty());
    for (const auto& X : syms.generators) {
        INFO(X.name, ": ", render(X, m4.chart().coords));
        CHECK(check_linear_pde_symmetry(wave, X).ok());
        CHECK(verify_by_prolongation(wave, X).ok());
    }
    // Sp.CKV generator carries the -psi u term.
    auto xl = from_vector("XL", V({"(t^2 + x^2 + y^2 + z^2)/2", "t*x", "t*y", "t*z"}), P("-t"));
    CHECK(verify_by_prolongation(wave, xl).ok());
    auto wrong = from_vector("XC", V({"(t^2 + x^2 + y^2 + z^2)/2", "t*x", "t*y", "t*z"}));
    CHECK_FALSE(verify_by_prolongation(wave, wrong).ok());
}

TEST_CASE("symmetry ansatz recovers the conformal-algebra list") {
    Metric m3 = diag({"t", "x", "y"}, {"1", "-1", "-1"});
    LinearPDE wave = geom::laplace_beltrami(m3);
    auto found = solve_symmetry_ansatz(wave, 2);
    CHECK(found.size() == 10);
    for (const auto& X : found) CHECK(verify_by_prolongation(wave, X).ok());
}

TEST_CASE("klein-gordon and poisson conditions") {
    Metric cone = diag({"p", "th", "y"}, {"1", "p^2", "p^2"});
    auto dil = conf::classify(cone, V({"p", "0", "0"}), "D");
    REQUIRE(dil.verdict == conf::Verdict::Conformal);
    CHECK(dil.vector->cls == conf::CkvClass::HV);
    auto kg = klein_gordon_symmetries(cone, P("4/p^2"), {*dil.vector});
    CHECK(kg.generators.size() == 3);
    LinearPDE eq = geom::klein_gordon(cone, P("4/p^2"));
    CHECK(verify_by_prolongation(eq, kg.generators[0]).ok());

    Metric m3 = diag({"t", "x", "y"}, {"-1", "1", "1"});
    auto hv = conf::classify(m3, V({"t", "x", "y"}), "H");
    auto rej = klein_gordon_symmetries(m3, P("1"), {*hv.vector});
    CHECK(rej.generators.size() == 2);
    CHECK(rej.rejected.size() == 1);
    auto lap = laplace_symmetries(m3, {*hv.vector});
    auto kg0 = klein_gordon_symmetries(m3, Expr(), {*hv.vector});
    CHECK(lap.generators.size() == kg0.generators.size());

    Metric e3 = diag({"x", "y", "z"}, {"1", "1", "1"});
    auto p = poisson_symmetry_check(e3, P("u^2"), u_scaling(3));
    CHECK(p.satisfied == sym::ZeroState::NonZero);
    auto ok = poisson_symmetry_check(e3, Expr(), u_scaling(3));
    CHECK(ok.ok());
    auto h3 = from_vector("H", V({"x", "y", "z"}), P("-1/2"));
    CHECK(poisson_symmetry_check(e3, Expr(), h3).ok());
    CHECK(poisson_symmetry_check(e3, P("x*u"), h3).satisfied == sym::ZeroState::NonZero);
}
