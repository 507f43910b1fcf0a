#include <doctest.h>

#include "hidsym/classify.hpp"
#include "hidsym/sym/parse.hpp"

using namespace hidsym;
using namespace hidsym::cls;
using geom::Chart;
using geom::Metric;
using sym::parse;

namespace {

Expr P(const char* s) { return parse(s); }

Metric diag(std::vector<std::string> coords, std::vector<const char*> entries) {
    sym::ExprMatrix g(coords.size(), std::vector<Expr>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) g[i][i] = P(entries[i]);
    return Metric(Chart{coords}, g);
}

SymmetryGenerator G(const char* name, std::initializer_list<const char*> xs, const char* a = "0") {
    geom::Vector v;
    for (auto x : xs) v.push_back(P(x));
    return lie::from_vector(name, v, P(a));
}

std::vector<SymmetryGenerator> gens(const std::vector<const SymmetryProvenance*>& v) {
    std::vector<SymmetryGenerator> out;
    for (auto* p : v) out.push_back(p->generator);
    return out;
}

}  // namespace

TEST_CASE("wave equation reduced by a translation has three hidden symmetries") {
    Metric m4 = diag({"t", "x", "y", "z"}, {"1", "-1", "-1", "-1"});
    auto wave = geom::laplace_beltrami(m4);
    auto syms = lie::laplace_symmetries(m4, conf::solve_ckv_ansatz(m4, 2));
    auto Kz = G("Kz", {"0", "0", "0", "1"});
    auto r = red::reduce(wave, Kz, {red::registry_map("identity")});
    r.laplace = red::as_laplace_form(r.reduced);
    auto a = classify_reduced(m4.chart(), syms.generators, r, {});
    auto inh = a.with_tag(Tag::Inherited);
    auto t2 = a.with_tag(Tag::TypeII);
    CHECK(inh.size() == 7);
    REQUIRE(t2.size() == 3);
    CHECK(a.with_tag(Tag::Trivial).size() == 2);
    auto inherited = gens(inh);
    auto all = inherited;
    for (auto* p : t2) all.push_back(p->generator);
    for (auto X : {G("C1", {"(t^2 + x^2 + y^2)/2", "t*x", "t*y"}, "-t/2"),
                   G("C2", {"t*x", "(t^2 + x^2 - y^2)/2", "x*y"}, "-x/2"),
                   G("C3", {"t*y", "x*y", "(t^2 - x^2 + y^2)/2"}, "-y/2")}) {
        CHECK(in_span_mod_u(X, all));
        CHECK_FALSE(in_span_mod_u(X, inherited));
    }
}

TEST_CASE("Petrov III reduction has no hidden symmetries") {
    sym::ExprMatrix g(4, std::vector<Expr>(4));
    g[0][0] = P("3*x/2");
    g[0][1] = g[1][0] = Expr(1);
    g[2][2] = g[3][3] = P("v^2/x^3");
    Metric m(Chart{{"rho", "v", "x", "y"}}, g);
    std::vector<SymmetryGenerator> orig = {G("X1", {"1", "0", "0", "0"}), G("X2", {"0", "0", "0", "1"}),
                                           G("X3", {"-rho", "v", "2*x", "2*y"}), G("X4", {"rho", "v", "0", "0"})};
    auto r = red::reduce(geom::laplace_beltrami(m), orig[3], {red::registry_map("petrov3")});
    auto a = classify_reduced(m.chart(), orig, r, {});
    CHECK(a.with_tag(Tag::TypeII).empty());
    auto inh = gens(a.with_tag(Tag::Inherited));
    CHECK(inh.size() == 2);
    CHECK(in_span_mod_u(G("dy", {"0", "0", "1"}), inh));
    CHECK(in_span_mod_u(G("D", {"-sigma", "x", "y"}), inh));
}

TEST_CASE("proper CKV filter on hyperbolic 3-space") {
    Metric h = diag({"theta", "phi", "zeta"}, {"1", "cosh(theta)^2", "cosh(theta)^2*cosh(phi)^2"});
    std::vector<conf::ConformalVector> cat;
    std::vector<std::vector<const char*>> vs = {
        {"sinh(theta)*cosh(phi)*cosh(zeta)", "sinh(phi)*cosh(zeta)/cosh(theta)",
         "sinh(zeta)/(cosh(theta)*cosh(phi))"},
        {"cosh(theta)", "0", "0"},
        {"sinh(theta)*sinh(phi)", "cosh(phi)/cosh(theta)", "0"},
        {"sinh(theta)*cosh(phi)*sinh(zeta)", "sinh(phi)*sinh(zeta)/cosh(theta)",
         "cosh(zeta)/(cosh(theta)*cosh(phi))"}};
    for (std::size_t k = 0; k < vs.size(); ++k) {
        geom::Vector xi;
        for (auto c : vs[k]) xi.push_back(P(c));
        auto c = conf::classify(h, xi, "P" + std::to_string(k + 1));
        REQUIRE(c.verdict == conf::Verdict::Conformal);
        CHECK(c.vector->cls == conf::CkvClass::Proper);
        cat.push_back(*c.vector);
    }
    auto f = proper_ckv_filter(h, cat);
    REQUIRE(f.size() == 4);
    for (const auto& v : f) {
        CHECK_FALSE(v.accepted);
        REQUIRE(v.curvature_check);
        CHECK(*v.curvature_check);
    }
    // A special CKV of flat space is always admitted.
    Metric e3 = diag({"x", "y", "z"}, {"1", "1", "1"});
    auto c = conf::classify(e3, {P("(x^2 - y^2 - z^2)/2"), P("x*y"), P("x*z")}, "S");
    REQUIRE(c.vector);
    auto g = proper_ckv_filter(e3, {*c.vector});
    CHECK(g[0].accepted);
}
