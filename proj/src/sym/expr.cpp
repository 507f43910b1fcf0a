#include <algorithm>
#include <stdexcept>

#include "internal.hpp"

namespace hidsym::sym {

using namespace detail;

struct Expr::Data {
    Poly num;
    Poly den;
    std::size_t hash;
};

namespace {

std::shared_ptr<const Expr::Data> make_data(Poly num, Poly den);

const std::shared_ptr<const Expr::Data>& zero_data() {
    static const std::shared_ptr<const Expr::Data> z = make_data(Poly(), Poly(1));
    return z;
}

std::shared_ptr<const Expr::Data> make_data(Poly num, Poly den) {
    std::size_t h = hash_combine(num.hash(), den.hash() * 7 + 1);
    return std::make_shared<const Expr::Data>(Expr::Data{std::move(num), std::move(den), h});
}

// Brings num/den into canonical form: powers expanded, exp atoms and
// fractional monomial exponents removed from the denominator, common factors
// cancelled, denominator monic.
void canonicalize(Poly& num, Poly& den) {
    if (den.is_zero()) throw std::domain_error("division by zero");
    for (int round = 0; round < 4; ++round) {
        num = expand_powers(num);
        den = expand_powers(den);
        if (num.is_zero()) {
            den = Poly(1);
            return;
        }
        Monomial shift;
        for (const auto& f : monomial_content(den)) {
            if (is_unit_atom(f.atom)) {
                shift.push_back(Factor{f.atom, -f.exp});
            } else if (!f.exp.is_integer()) {
                shift.push_back(Factor{f.atom, Frac(f.exp.ceil()) - f.exp});
            }
        }
        if (!shift.empty()) {
            num = num.times_monomial(shift);
            den = den.times_monomial(shift);
            if (needs_power_expansion(num) || needs_power_expansion(den)) continue;
        }
        break;
    }
    if (auto c = den.constant_value()) {
        num = num.scaled(1 / *c);
        den = Poly(1);
        return;
    }
    Poly g = gcd(num, den);
    if (!g.is_one()) {
        num = *divide_exact(num, g);
        den = *divide_exact(den, g);
    }
    if (auto c = den.constant_value()) {
        num = num.scaled(1 / *c);
        den = Poly(1);
        return;
    }
    mpq_class lc = den.leading().coef;
    if (lc != 1) {
        num = num.scaled(1 / lc);
        den = den.scaled(1 / lc);
    }
}

Expr poly_expr(Poly p) { return Expr::from_poly(p); }

// True when num/den is known to be free of common factors and only the
// denominator's shape still needs normalizing.
bool denominator_is_clean(const Poly& num, const Poly& den) {
    if (needs_power_expansion(num) || needs_power_expansion(den)) return false;
    for (const auto& f : monomial_content(den))
        if (is_unit_atom(f.atom) || !f.exp.is_integer()) return false;
    return true;
}

}  // namespace

Expr Expr::reduced(Poly num, Poly den) {
    if (num.is_zero()) return Expr();
    if (!denominator_is_clean(num, den)) return fraction(num, den);
    if (auto c = den.constant_value()) return Expr(make_data(num.scaled(1 / *c), Poly(1)));
    mpq_class lc = den.leading().coef;
    if (lc != 1) {
        num = num.scaled(1 / lc);
        den = den.scaled(1 / lc);
    }
    return Expr(make_data(std::move(num), std::move(den)));
}

namespace {

}  // namespace

Expr::Expr() : d_(zero_data()) {}
Expr::Expr(int v) : Expr(mpq_class(v)) {}
Expr::Expr(long v) : Expr(mpq_class(v)) {}
Expr::Expr(const mpq_class& v) : d_(v == 0 ? zero_data() : make_data(Poly(v), Poly(1))) {}

Expr Expr::symbol(const std::string& name) {
    return Expr(make_data(Poly::monomial({Factor{intern_symbol(name), Frac(1)}}), Poly(1)));
}

Expr Expr::from_poly(const Poly& p) {
    if (needs_power_expansion(p)) return fraction(p, Poly(1));
    return Expr(make_data(p, Poly(1)));
}

Expr Expr::fraction(const Poly& num, const Poly& den) {
    Poly n = num, d = den;
    canonicalize(n, d);
    return Expr(make_data(std::move(n), std::move(d)));
}

const Poly& Expr::num() const { return d_->num; }
const Poly& Expr::den() const { return d_->den; }
std::size_t Expr::hash() const { return d_->hash; }

std::optional<mpq_class> Expr::constant_value() const {
    if (!den().is_one()) return std::nullopt;
    return num().constant_value();
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den().is_one() && b.den().is_one()) return Expr::from_poly(a.num() + b.num());
    if (a.den() == b.den()) return Expr::fraction(a.num() + b.num(), a.den());
    Poly g = gcd(a.den(), b.den());
    if (g.is_one()) {
        Poly n = a.num() * b.den() + b.num() * a.den();
        Poly d = a.den() * b.den();
        if (n.is_zero()) return Expr();
        if (needs_power_expansion(n)) return Expr::fraction(n, d);
        return Expr(make_data(std::move(n), std::move(d)));
    }
    // Henrici: with both inputs reduced, a common factor of the new numerator
    // and denominator can only come from g.
    Poly da = *divide_exact(a.den(), g);
    Poly db = *divide_exact(b.den(), g);
    Poly t = a.num() * db + b.num() * da;
    if (t.is_zero()) return Expr();
    if (needs_power_expansion(t)) return Expr::fraction(t, da * b.den());
    Poly g2 = gcd(t, g);
    if (g2.is_one()) return Expr::reduced(std::move(t), da * b.den());
    return Expr::reduced(*divide_exact(t, g2), da * *divide_exact(b.den(), g2));
}

Expr Expr::operator-() const {
    if (is_zero()) return *this;
    return Expr(make_data(-num(), den()));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.den().is_one() && b.den().is_one()) return Expr::from_poly(a.num() * b.num());
    Poly g1 = b.den().is_one() ? Poly(1) : gcd(a.num(), b.den());
    Poly g2 = a.den().is_one() ? Poly(1) : gcd(b.num(), a.den());
    Poly n1 = g1.is_one() ? a.num() : *divide_exact(a.num(), g1);
    Poly d2 = g1.is_one() ? b.den() : *divide_exact(b.den(), g1);
    Poly n2 = g2.is_one() ? b.num() : *divide_exact(b.num(), g2);
    Poly d1 = g2.is_one() ? a.den() : *divide_exact(a.den(), g2);
    Poly n = n1 * n2;
    Poly d = d1 * d2;
    return Expr::reduced(std::move(n), std::move(d));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return a * Expr::fraction(b.den(), b.num());
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.d_ == b.d_) return true;
    if (a.d_->hash != b.d_->hash) return false;
    return a.num() == b.num() && a.den() == b.den();
}

int compare(const Expr& a, const Expr& b) {
    if (a.d_ == b.d_) return 0;
    int c = compare(a.num(), b.num());
    if (c != 0) return c;
    return compare(a.den(), b.den());
}

// ---------------------------------------------------------------------------
// Atoms as expressions

Expr atom_expr(Atom a) { return atom_power(a, Frac(1)); }

Expr atom_power(Atom a, Frac e) {
    if (e.is_zero()) return Expr(1);
    if (a->kind == AtomKind::Power) {
        // The atom stands for its base polynomial.
        return pow(poly_expr(a->payload.num()), e);
    }
    if (is_unit_atom(a) || e.positive()) return Expr::from_poly(Poly::monomial({Factor{a, e}}));
    return Expr::fraction(Poly(1), Poly::monomial({Factor{a, -e}}));
}

namespace {

// Splits off small perfect q-th powers from a positive integer:
// n = s^q * t with t free of q-th powers of primes below the trial bound.
void extract_root(const mpz_class& n, long q, mpz_class& s, mpz_class& t) {
    s = 1;
    t = n;
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), q) != 0) {
        s = r;
        t = 1;
        return;
    }
    for (unsigned long p = 2; p < 1000; ++p) {
        mpz_class pq;
        mpz_ui_pow_ui(pq.get_mpz_t(), p, static_cast<unsigned long>(q));
        if (pq > t) break;
        while (mpz_divisible_p(t.get_mpz_t(), pq.get_mpz_t())) {
            t /= pq;
            s *= p;
        }
    }
}

// c^f for a rational constant and 0 < f < 1.
Expr constant_root(const mpq_class& c, Frac f) {
    if (c == 0) return Expr();
    if (c < 0) {
        if (f.den() % 2 == 1) {
            Expr r = constant_root(-c, f);
            return (f.num() % 2 == 0) ? r : -r;
        }
        // Even root of a negative constant: kept as an opaque power.
        Atom a = intern_power(Poly(c));
        return Expr::from_poly(Poly::monomial({Factor{a, f}}));
    }
    long q = static_cast<long>(f.den());
    auto int_root = [&](const mpz_class& n) -> Expr {
        mpz_class s, t;
        extract_root(n, q, s, t);
        // n^f = s^p * t^f
        mpz_class sp;
        mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(f.num()));
        Expr out{mpq_class(sp)};
        if (t != 1) out = out * Expr::from_poly(Poly::monomial({Factor{intern_power(Poly(mpq_class(t))), f}}));
        return out;
    };
    Expr r = int_root(c.get_num());
    if (c.get_den() != 1) r = r / int_root(c.get_den());
    return r;
}

// P^f for a polynomial P and 0 < f < 1.
Expr poly_root(const Poly& p, Frac f) {
    if (auto c = p.constant_value()) return constant_root(*c, f);
    Monomial m = monomial_content(p);
    Poly rest = p.times_monomial(mono_pow(m, Frac(-1)));
    mpq_class c = rational_content(rest);
    rest = rest.scaled(1 / c);
    if (c < 0 && f.den() % 2 == 0) {
        // Keep the sign inside the radicand.
        Poly whole = p.scaled(1 / (-c));
        Atom a = intern_power(whole);
        return constant_root(-c, f) * Expr::from_poly(Poly::monomial({Factor{a, f}}));
    }
    Expr out = constant_root(c, f);
    for (const auto& fac : m) out = out * atom_power(fac.atom, fac.exp * f);
    if (!rest.is_one()) {
        if (f.den() == 2) {
            if (auto s = poly_sqrt(rest)) {
                return out * pow(Expr::from_poly(*s), Frac(f.num()));
            }
        }
        out = out * Expr::from_poly(Poly::monomial({Factor{intern_power(rest), f}}));
    }
    return out;
}

}  // namespace

Expr pow(const Expr& base, Frac e) {
    if (e.is_zero()) return Expr(1);
    if (base.is_zero()) {
        if (e.negative()) throw std::domain_error("zero to a negative power");
        return Expr();
    }
    if (e == Frac(1)) return base;
    if (e.is_integer()) {
        std::int64_t k = e.num() < 0 ? -e.num() : e.num();
        Poly n = poly_pow(base.num(), static_cast<unsigned>(k));
        Poly d = poly_pow(base.den(), static_cast<unsigned>(k));
        return e.negative() ? Expr::fraction(d, n) : Expr::fraction(n, d);
    }
    std::int64_t k = e.floor();
    Frac f = e - Frac(k);
    Expr r = poly_root(base.num(), f);
    if (!base.den().is_one()) r = r / poly_root(base.den(), f);
    if (k != 0) r = r * pow(base, Frac(k));
    return r;
}

Expr exp(const Expr& a) {
    if (a.is_zero()) return Expr(1);
    if (!a.den().is_one()) return atom_expr(intern_exp(a));
    Expr out(1);
    Monomial units;
    for (const auto& t : a.num().terms()) {
        if (t.mono.size() == 1 && t.mono[0].exp == Frac(1) && t.mono[0].atom->kind == AtomKind::Func &&
            t.mono[0].atom->kernel == Kernel::Ln) {
            out = out * pow(t.mono[0].atom->payload, to_frac(t.coef));
            continue;
        }
        Atom e = intern_exp(Expr::from_poly(Poly::monomial(t.mono)));
        units.push_back(Factor{e, to_frac(t.coef)});
    }
    std::sort(units.begin(), units.end(), [](const Factor& x, const Factor& y) {
        return compare_atoms(x.atom, y.atom) < 0;
    });
    return out * Expr::from_poly(Poly::monomial(units));
}

namespace {

Expr ln_of_poly(const Poly& p, bool negate_sign);

Expr ln_of_atom_power(Atom a, Frac e) {
    Expr ee{to_mpq(e)};
    switch (a->kind) {
        case AtomKind::Exp:
            return ee * a->payload;
        case AtomKind::Power:
            return ee * ln_of_poly(a->payload.num(), false);
        default:
            return ee * atom_expr(intern_func(Kernel::Ln, atom_expr(a)));
    }
}

// ln of a polynomial; when negate_sign is set the polynomial is negated first.
Expr ln_of_poly(const Poly& p0, bool negate_sign) {
    Poly p = negate_sign ? -p0 : p0;
    if (auto c = p.constant_value()) {
        if (*c == 1) return Expr();
        return atom_expr(intern_func(Kernel::Ln, Expr(*c)));
    }
    Monomial m = monomial_content(p);
    Poly rest = p.times_monomial(mono_pow(m, Frac(-1)));
    mpq_class c = rational_content(rest);
    rest = rest.scaled(1 / c);
    Expr out;
    if (c < 0) {
        // ln of a negative content: fold the sign into the remaining factor.
        c = -c;
        rest = -rest;
    }
    if (c != 1) out = out + atom_expr(intern_func(Kernel::Ln, Expr(c)));
    for (const auto& f : m) out = out + ln_of_atom_power(f.atom, f.exp);
    if (!rest.is_one()) out = out + atom_expr(intern_func(Kernel::Ln, Expr::from_poly(rest)));
    return out;
}

Expr trig_atom(Kernel k, const Expr& a) { return atom_expr(intern_func(k, a)); }

bool leading_negative(const Expr& a) { return !a.num().is_zero() && a.num().leading().coef < 0; }

}  // namespace

Expr ln(const Expr& a) {
    if (a.is_zero()) throw std::domain_error("logarithm of zero");
    Expr out = ln_of_poly(a.num(), false);
    if (!a.den().is_one()) out = out - ln_of_poly(a.den(), false);
    return out;
}

Expr sin(const Expr& a) {
    if (a.is_zero()) return Expr();
    if (leading_negative(a)) return -trig_atom(Kernel::Sin, -a);
    return trig_atom(Kernel::Sin, a);
}

Expr cos(const Expr& a) {
    if (a.is_zero()) return Expr(1);
    if (leading_negative(a)) return trig_atom(Kernel::Cos, -a);
    return trig_atom(Kernel::Cos, a);
}

Expr sinh(const Expr& a) {
    if (a.is_zero()) return Expr();
    if (leading_negative(a)) return -trig_atom(Kernel::Sinh, -a);
    return trig_atom(Kernel::Sinh, a);
}

Expr cosh(const Expr& a) {
    if (a.is_zero()) return Expr(1);
    if (leading_negative(a)) return trig_atom(Kernel::Cosh, -a);
    return trig_atom(Kernel::Cosh, a);
}

Expr tan(const Expr& a) { return sin(a) / cos(a); }
Expr tanh(const Expr& a) { return sinh(a) / cosh(a); }
Expr sqrt(const Expr& a) { return pow(a, Frac(1, 2)); }

std::optional<Expr> apply_function(const std::string& name, const Expr& arg) {
    if (name == "exp") return exp(arg);
    if (name == "ln") return ln(arg);
    if (name == "sin") return sin(arg);
    if (name == "cos") return cos(arg);
    if (name == "tan") return tan(arg);
    if (name == "sinh") return sinh(arg);
    if (name == "cosh") return cosh(arg);
    if (name == "tanh") return tanh(arg);
    if (name == "sqrt") return sqrt(arg);
    return std::nullopt;
}

// ---------------------------------------------------------------------------

std::set<std::string> free_symbols(const Expr& e) {
    std::set<std::string> out;
    for (const Poly* p : {&e.num(), &e.den()})
        for (const auto& t : p->terms())
            for (const auto& f : t.mono) out.insert(f.atom->free_symbols.begin(), f.atom->free_symbols.end());
    return out;
}

namespace {
bool atom_depends(Atom a, const std::string& s) {
    return std::binary_search(a->free_symbols.begin(), a->free_symbols.end(), s);
}
}  // namespace

bool depends_on(const Expr& e, const std::string& s) {
    for (const Poly* p : {&e.num(), &e.den()})
        for (const auto& t : p->terms())
            for (const auto& f : t.mono)
                if (atom_depends(f.atom, s)) return true;
    return false;
}

bool depends_on_any(const Expr& e, const std::vector<std::string>& symbols) {
    for (const auto& s : symbols)
        if (depends_on(e, s)) return true;
    return false;
}

bool is_polynomial_in(const Expr& e, const std::vector<std::string>& symbols) {
    if (!e.den().is_one()) return false;
    for (const auto& t : e.num().terms())
        for (const auto& f : t.mono) {
            if (f.atom->kind != AtomKind::Symbol || !f.exp.is_integer()) return false;
            if (std::find(symbols.begin(), symbols.end(), f.atom->name) == symbols.end()) return false;
        }
    return true;
}

std::map<std::vector<int>, mpq_class> polynomial_coefficients(const Expr& e, const std::vector<std::string>& symbols) {
    if (!is_polynomial_in(e, symbols)) throw std::invalid_argument("not a polynomial in the given symbols");
    std::map<std::vector<int>, mpq_class> out;
    for (const auto& t : e.num().terms()) {
        std::vector<int> key(symbols.size(), 0);
        for (const auto& f : t.mono) {
            auto it = std::find(symbols.begin(), symbols.end(), f.atom->name);
            key[static_cast<std::size_t>(it - symbols.begin())] = static_cast<int>(f.exp.num());
        }
        out[key] += t.coef;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trigonometric rewriting

namespace detail {

bool has_reducible_trig(const Poly& p) {
    for (const auto& t : p.terms())
        for (const auto& f : t.mono)
            if (f.atom->kind == AtomKind::Func && (f.atom->kernel == Kernel::Sin || f.atom->kernel == Kernel::Sinh) &&
                f.exp.is_integer() && f.exp.num() >= 2)
                return true;
    return false;
}

Poly trig_reduce(const Poly& p) {
    if (!has_reducible_trig(p)) return p;
    Poly out;
    for (const auto& t : p.terms()) {
        Poly term(t.coef);
        Monomial keep;
        for (const auto& f : t.mono) {
            bool s = f.atom->kind == AtomKind::Func && f.exp.is_integer() && f.exp.num() >= 2 &&
                     (f.atom->kernel == Kernel::Sin || f.atom->kernel == Kernel::Sinh);
            if (!s) {
                keep.push_back(f);
                continue;
            }
            bool hyper = f.atom->kernel == Kernel::Sinh;
            Atom partner = intern_func(hyper ? Kernel::Cosh : Kernel::Cos, f.atom->payload);
            Poly c2 = Poly::monomial({Factor{partner, Frac(2)}});
            // sin^2 = 1 - cos^2, sinh^2 = cosh^2 - 1
            Poly sq = hyper ? c2 - Poly(1) : Poly(1) - c2;
            std::int64_t k = f.exp.num();
            term = term * poly_pow(sq, static_cast<unsigned>(k / 2));
            if (k % 2) keep.push_back(Factor{f.atom, Frac(1)});
        }
        std::sort(keep.begin(), keep.end(), [](const Factor& x, const Factor& y) {
            return compare_atoms(x.atom, y.atom) < 0;
        });
        out = out + term.times_monomial(keep);
    }
    return out;
}

}  // namespace detail

Expr simplify(const Expr& e) {
    if (!has_reducible_trig(e.num()) && !has_reducible_trig(e.den())) return e;
    return Expr::fraction(trig_reduce(e.num()), trig_reduce(e.den()));
}

}  // namespace hidsym::sym
