#include "corpus.hpp"

#include <random>

namespace hidsym::testing {

using sym::Expr;

namespace {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    mpq_class rational() {
        mpq_class q(uniform(-9, 9), uniform(1, 5));
        q.canonicalize();
        return q == 0 ? mpq_class(1) : q;
    }

    Expr monomial() {
        Expr m(1);
        for (const char* v : {"x", "y", "z"})
            for (int k = uniform(0, 1); k > 0; --k) m *= Expr::symbol(v);
        return m;
    }

    Expr poly(int terms) {
        Expr p;
        for (int k = 0; k < terms; ++k) p += Expr(rational()) * monomial();
        return p.is_zero() ? Expr::symbol("x") + Expr(1) : p;
    }

    // Strictly positive on the reals.
    Expr positive() {
        Expr m = monomial();
        return Expr(abs(rational())) * m * m + Expr(uniform(1, 4));
    }

    Expr rational_fn() { return poly(uniform(1, 2)) / positive(); }

    Expr small_arg() { return Expr(mpq_class(uniform(1, 3), uniform(2, 6))) * poly(uniform(1, 2)); }

private:
    std::mt19937_64 rng_;
};

constexpr int kTemplates = 18;

CorpusCase identity(Gen& g, int which) {
    Expr a = g.rational_fn(), b = g.rational_fn(), c = g.positive(), d = g.positive();
    Expr s = g.small_arg(), t = g.small_arg();
    Expr two(2);
    switch (which) {
        case 0:
            return {"square of a sum", (a + b) * (a + b) - (a * a + two * a * b + b * b)};
        case 1:
            return {"difference of cubes", (a * a * a - b * b * b) - (a - b) * (a * a + a * b + b * b)};
        case 2:
            return {"common denominator", a / c + b / c - (a + b) / c};
        case 3:
            return {"cancellation", (a * c) / (c * d) * d - a};
        case 4:
            return {"sin^2 + cos^2", b * (sym::sin(s) * sym::sin(s) + sym::cos(s) * sym::cos(s)) - b};
        case 5:
            return {"cosh^2 - sinh^2", a * (sym::cosh(s) * sym::cosh(s) - sym::sinh(s) * sym::sinh(s) - Expr(1))};
        case 6:
            return {"exp of a sum", sym::exp(s) * sym::exp(t) - sym::exp(s + t)};
        case 7:
            return {"double angle sin", sym::sin(two * s) - two * sym::sin(s) * sym::cos(s)};
        case 8:
            return {"double angle cos", sym::cos(two * s) - (sym::cos(s) * sym::cos(s) - sym::sin(s) * sym::sin(s))};
        case 9:
            return {"cosh addition",
                    sym::cosh(s + t) - (sym::cosh(s) * sym::cosh(t) + sym::sinh(s) * sym::sinh(t))};
        case 10:
            return {"sinh addition",
                    sym::sinh(s + t) - (sym::sinh(s) * sym::cosh(t) + sym::cosh(s) * sym::sinh(t))};
        case 11:
            return {"product rule", sym::diff(a * sym::sin(b), "x") -
                                        (sym::diff(a, "x") * sym::sin(b) + a * sym::cos(b) * sym::diff(b, "x"))};
        case 12:
            return {"quotient rule",
                    sym::diff(a / c, "y") - (sym::diff(a, "y") * c - a * sym::diff(c, "y")) / (c * c)};
        case 13:
            return {"log of a product", sym::ln(c * d) - sym::ln(c) - sym::ln(d)};
        case 14:
            return {"square root squared", sym::sqrt(c) * sym::sqrt(c) - c};
        case 15:
            return {"exp of a log", sym::exp(sym::ln(c)) - c};
        case 16:
            return {"fourth powers",
                    sym::cosh(s) * sym::cosh(s) * sym::cosh(s) * sym::cosh(s) -
                        sym::sinh(s) * sym::sinh(s) * sym::sinh(s) * sym::sinh(s) -
                        sym::cosh(s) * sym::cosh(s) - sym::sinh(s) * sym::sinh(s)};
        default:
            return {"tan quotient", sym::tan(s) * sym::cos(s) - sym::sin(s)};
    }
}

}  // namespace

std::vector<CorpusCase> identity_corpus(std::size_t n, std::uint64_t seed) {
    Gen g(seed);
    std::vector<CorpusCase> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(identity(g, static_cast<int>(k % kTemplates)));
    return out;
}

std::vector<CorpusCase> perturbed_corpus(std::size_t n, std::uint64_t seed) {
    Gen g(seed);
    std::vector<CorpusCase> out;
    for (std::size_t k = 0; k < n; ++k) {
        auto c = identity(g, static_cast<int>(k % kTemplates));
        mpq_class eps(1, g.uniform(100, 10000));
        switch (g.uniform(0, 2)) {
            case 0:
                c.expr += Expr(eps) * g.monomial();
                break;
            case 1:
                c.expr += Expr(eps) * sym::sin(Expr::symbol("y")) / g.positive();
                break;
            default:
                c.expr += Expr(eps) * sym::exp(Expr::symbol("z"));
                break;
        }
        c.label += " (perturbed)";
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace hidsym::testing
