#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "internal.hpp"

namespace hidsym::sym {

using namespace detail;

namespace {

long double mpz_to_ld(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) return static_cast<long double>(mpz_get_si(z.get_mpz_t()));
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::ldexp(static_cast<long double>(m), static_cast<int>(exp));
}

long double real_pow(long double v, Frac e) {
    if (e.is_integer()) return std::pow(v, static_cast<long double>(e.num()));
    if (v >= 0) return std::pow(v, e.to_long_double());
    if (e.den() % 2 == 1) {
        long double r = std::pow(-v, e.to_long_double());
        return (e.num() % 2 == 0) ? r : -r;
    }
    return std::numeric_limits<long double>::quiet_NaN();
}

class Evaluator {
public:
    explicit Evaluator(const std::map<std::string, long double>& p) : point_(p) {}

    long double atom(Atom a) {
        auto it = cache_.find(a);
        if (it != cache_.end()) return it->second;
        long double v = 0;
        switch (a->kind) {
            case AtomKind::Symbol: {
                auto p = point_.find(a->name);
                if (p == point_.end()) throw std::invalid_argument("no value for symbol '" + a->name + "'");
                v = p->second;
                break;
            }
            case AtomKind::Power:
                v = expr(a->payload);
                break;
            case AtomKind::Exp:
                v = std::exp(expr(a->payload));
                break;
            case AtomKind::Func: {
                long double x = expr(a->payload);
                switch (a->kernel) {
                    case Kernel::Sin:
                        v = std::sin(x);
                        break;
                    case Kernel::Cos:
                        v = std::cos(x);
                        break;
                    case Kernel::Sinh:
                        v = std::sinh(x);
                        break;
                    case Kernel::Cosh:
                        v = std::cosh(x);
                        break;
                    case Kernel::Ln:
                        v = x > 0 ? std::log(x) : std::numeric_limits<long double>::quiet_NaN();
                        break;
                }
                break;
            }
        }
        cache_.emplace(a, v);
        return v;
    }

    // Sum of terms and sum of absolute values of terms.
    std::pair<long double, long double> poly(const Poly& p) {
        long double sum = 0, mag = 0;
        for (const auto& t : p.terms()) {
            long double v = mpz_to_ld(t.coef.get_num()) / mpz_to_ld(t.coef.get_den());
            for (const auto& f : t.mono) v *= real_pow(atom(f.atom), f.exp);
            sum += v;
            mag += std::fabs(v);
        }
        return {sum, mag};
    }

    long double expr(const Expr& e) {
        long double n = poly(e.num()).first;
        if (e.den().is_one()) return n;
        long double d = poly(e.den()).first;
        if (d == 0) return std::numeric_limits<long double>::quiet_NaN();
        return n / d;
    }

private:
    const std::map<std::string, long double>& point_;
    std::unordered_map<Atom, long double> cache_;
};

}  // namespace

long double evaluate(const Expr& e, const std::map<std::string, long double>& point) {
    Evaluator ev(point);
    return ev.expr(e);
}

namespace detail {

std::pair<long double, long double> evaluate_with_scale(const Poly& p, const std::map<std::string, long double>& point) {
    Evaluator ev(point);
    return ev.poly(p);
}

}  // namespace detail

}  // namespace hidsym::sym
