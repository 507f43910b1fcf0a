#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "internal.hpp"

namespace hidsym::sym {

using namespace detail;

namespace {

bool term_greater(const Term& a, const Term& b) { return compare_monomials(a.mono, b.mono) > 0; }

}  // namespace

Poly::Poly(mpq_class c) {
    c.canonicalize();
    if (c != 0) terms_.push_back(Term{{}, std::move(c)});
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_greater);
    Poly p;
    for (auto& t : terms) {
        t.coef.canonicalize();
        if (!p.terms_.empty() && compare_monomials(p.terms_.back().mono, t.mono) == 0) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) p.terms_.pop_back();
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Poly Poly::monomial(Monomial m, mpq_class c) {
    c.canonicalize();
    Poly p;
    if (c != 0) p.terms_.push_back(Term{std::move(m), std::move(c)});
    return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.empty() && terms_[0].coef == 1; }

std::optional<mpq_class> Poly::constant_value() const {
    if (terms_.empty()) return mpq_class(0);
    if (terms_.size() == 1 && terms_[0].mono.empty()) return terms_[0].coef;
    return std::nullopt;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.terms_.empty()) return b;
    if (b.terms_.empty()) return a;
    Poly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = compare_monomials(a.terms_[i].mono, b.terms_[j].mono);
        if (c > 0) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(b.terms_[j++]);
        } else {
            mpq_class s = a.terms_[i].coef + b.terms_[j].coef;
            if (s != 0) r.terms_.push_back(Term{a.terms_[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::scaled(const mpq_class& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

Poly Poly::times_monomial(const Monomial& m, const mpq_class& c) const {
    if (c == 0) return Poly();
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{mono_mul(t.mono, m), t.coef * c});
    // Multiplying by a monomial preserves a monomial order.
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return Poly();
    if (auto c = a.constant_value()) return b.scaled(*c);
    if (auto c = b.constant_value()) return a.scaled(*c);
    if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coef);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) out.push_back(Term{mono_mul(x.mono, y.mono), x.coef * y.coef});
    return Poly::from_terms(std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const auto& x = a.terms_[i];
        const auto& y = b.terms_[i];
        if (x.coef != y.coef || x.mono.size() != y.mono.size()) return false;
        for (std::size_t k = 0; k < x.mono.size(); ++k)
            if (x.mono[k].atom != y.mono[k].atom || x.mono[k].exp != y.mono[k].exp) return false;
    }
    return true;
}

int compare(const Poly& a, const Poly& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare_monomials(a.terms_[i].mono, b.terms_[i].mono);
        if (c != 0) return c;
        int d = cmp(a.terms_[i].coef, b.terms_[i].coef);
        if (d != 0) return d < 0 ? -1 : 1;
    }
    if (a.terms_.size() == b.terms_.size()) return 0;
    return a.terms_.size() < b.terms_.size() ? -1 : 1;
}

std::size_t Poly::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        h = hash_combine(h, hash_mpq(t.coef));
        for (const auto& f : t.mono) {
            h = hash_combine(h, f.atom->hash);
            h = hash_combine(h, static_cast<std::size_t>(f.exp.num() * 31 + f.exp.den()));
        }
    }
    return h;
}

namespace detail {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Monomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].atom == b[j].atom) {
            Frac e = a[i].exp + b[j].exp;
            if (!e.is_zero()) r.push_back(Factor{a[i].atom, e});
            ++i;
            ++j;
        } else if (compare_atoms(a[i].atom, b[j].atom) < 0) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

Monomial mono_pow(const Monomial& a, Frac e) {
    if (e.is_zero()) return {};
    Monomial r = a;
    for (auto& f : r) f.exp = f.exp * e;
    return r;
}

Monomial mono_div_raw(const Monomial& a, const Monomial& b) { return mono_mul(a, mono_pow(b, Frac(-1))); }

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
    Monomial r = mono_div_raw(a, b);
    for (const auto& f : r)
        if (f.exp.negative() && !is_unit_atom(f.atom)) return std::nullopt;
    return r;
}

Frac exponent_of(const Monomial& m, Atom a) {
    for (const auto& f : m)
        if (f.atom == a) return f.exp;
    return Frac(0);
}

Monomial without(const Monomial& m, Atom a) {
    Monomial r;
    r.reserve(m.size());
    for (const auto& f : m)
        if (f.atom != a) r.push_back(f);
    return r;
}

Monomial monomial_content(const Poly& p) {
    if (p.is_zero()) return {};
    std::vector<Atom> atoms;
    for (const auto& t : p.terms())
        for (const auto& f : t.mono)
            if (std::find(atoms.begin(), atoms.end(), f.atom) == atoms.end()) atoms.push_back(f.atom);
    std::sort(atoms.begin(), atoms.end(), [](Atom x, Atom y) { return compare_atoms(x, y) < 0; });
    Monomial r;
    for (Atom a : atoms) {
        Frac mn = exponent_of(p.terms()[0].mono, a);
        for (const auto& t : p.terms()) {
            Frac x = exponent_of(t.mono, a);
            if (x < mn) mn = x;
        }
        if (!mn.is_zero()) r.push_back(Factor{a, mn});
    }
    return r;
}

mpq_class rational_content(const Poly& p) {
    if (p.is_zero()) return 1;
    mpz_class g = 0, l = 1;
    for (const auto& t : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    }
    mpq_class c(g, l);
    c.canonicalize();
    if (p.leading().coef < 0) c = -c;
    return c;
}

Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    const mpq_class& lc = p.leading().coef;
    if (lc == 1) return p;
    return p.scaled(1 / lc);
}

Frac to_frac(const mpq_class& q) {
    if (!mpz_fits_slong_p(q.get_num_mpz_t()) || !mpz_fits_slong_p(q.get_den_mpz_t()))
        throw std::overflow_error("rational exponent too large");
    return Frac(mpz_get_si(q.get_num_mpz_t()), mpz_get_si(q.get_den_mpz_t()));
}

mpq_class to_mpq(Frac f) {
    mpq_class q(static_cast<long>(f.num()), static_cast<unsigned long>(f.den()));
    q.canonicalize();
    return q;
}

Poly poly_pow(const Poly& p, unsigned k) {
    Poly result(1);
    Poly base = p;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return p;
    auto sqrt_coef = [](const mpq_class& c) -> std::optional<mpq_class> {
        if (c < 0) return std::nullopt;
        if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t()))
            return std::nullopt;
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), c.get_num_mpz_t());
        mpz_sqrt(d.get_mpz_t(), c.get_den_mpz_t());
        return mpq_class(n, d);
    };
    auto c0 = sqrt_coef(p.leading().coef);
    if (!c0) return std::nullopt;
    Monomial m0 = mono_pow(p.leading().mono, Frac(1, 2));
    Poly s = Poly::monomial(m0, *c0);
    Poly lead2 = Poly::monomial(m0, 2 * *c0);
    for (std::size_t iter = 0; iter <= p.size() + 1; ++iter) {
        Poly r = p - s * s;
        if (r.is_zero()) return s;
        auto q = mono_div(r.leading().mono, lead2.leading().mono);
        if (!q) return std::nullopt;
        Poly t = Poly::monomial(*q, r.leading().coef / lead2.leading().coef);
        if (compare_monomials(t.leading().mono, s.terms().back().mono) >= 0) return std::nullopt;
        s = s + t;
    }
    return std::nullopt;
}

bool needs_power_expansion(const Poly& p) {
    for (const auto& t : p.terms())
        for (const auto& f : t.mono)
            if (f.atom->kind == AtomKind::Power && f.exp >= Frac(1)) return true;
    return false;
}

Poly expand_powers(const Poly& p) {
    if (!needs_power_expansion(p)) return p;
    Poly out;
    for (const auto& t : p.terms()) {
        Monomial keep;
        Poly factor(t.coef);
        for (const auto& f : t.mono) {
            if (f.atom->kind == AtomKind::Power && f.exp >= Frac(1)) {
                std::int64_t k = f.exp.floor();
                Frac rest = f.exp - Frac(k);
                factor = factor * poly_pow(f.atom->payload.num(), static_cast<unsigned>(k));
                if (!rest.is_zero()) keep.push_back(Factor{f.atom, rest});
            } else {
                keep.push_back(f);
            }
        }
        out = out + factor.times_monomial(keep);
    }
    return expand_powers(out);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact division and gcd

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return Poly();
    if (auto c = b.constant_value()) return a.scaled(1 / *c);
    if (b.size() == 1) {
        std::vector<Term> q;
        q.reserve(a.size());
        for (const auto& t : a.terms()) {
            auto m = mono_div(t.mono, b.leading().mono);
            if (!m) return std::nullopt;
            q.push_back(Term{std::move(*m), t.coef / b.leading().coef});
        }
        return Poly::from_terms(std::move(q));
    }
    const Monomial floor_mono = mono_div_raw(a.terms().back().mono, b.terms().back().mono);
    std::vector<Term> q;
    Poly r = a;
    while (!r.is_zero()) {
        auto m = mono_div(r.leading().mono, b.leading().mono);
        if (!m) return std::nullopt;
        if (compare_monomials(*m, floor_mono) < 0) return std::nullopt;
        mpq_class c = r.leading().coef / b.leading().coef;
        r = r - b.times_monomial(*m, c);
        q.push_back(Term{std::move(*m), std::move(c)});
    }
    return Poly::from_terms(std::move(q));
}

namespace {

// Univariate view of a polynomial with non-negative integer exponents.
int degree_in(const Poly& p, Atom v) {
    int d = 0;
    for (const auto& t : p.terms()) {
        Frac e = exponent_of(t.mono, v);
        if (e.num() > d) d = static_cast<int>(e.num());
    }
    return d;
}

std::map<int, Poly> coefficients_in(const Poly& p, Atom v) {
    std::map<int, std::vector<Term>> parts;
    for (const auto& t : p.terms()) {
        int e = static_cast<int>(exponent_of(t.mono, v).num());
        parts[e].push_back(Term{without(t.mono, v), t.coef});
    }
    std::map<int, Poly> out;
    for (auto& [e, ts] : parts) out.emplace(e, Poly::from_terms(std::move(ts)));
    return out;
}

Poly leading_coefficient_in(const Poly& p, Atom v) {
    auto cs = coefficients_in(p, v);
    return cs.rbegin()->second;
}

bool contains_atom(const Poly& p, Atom v) {
    for (const auto& t : p.terms())
        for (const auto& f : t.mono)
            if (f.atom == v) return true;
    return false;
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, Atom v) {
    auto cs = coefficients_in(p, v);
    Poly g;
    bool first = true;
    for (auto& [e, c] : cs) {
        if (first) {
            g = monic(c);
            first = false;
        } else {
            g = gcd_rec(g, c);
        }
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

Poly pseudo_remainder(Poly r, const Poly& q, Atom v) {
    int dq = degree_in(q, v);
    Poly lcq = leading_coefficient_in(q, v);
    while (!r.is_zero()) {
        int dr = degree_in(r, v);
        if (dr < dq) break;
        Poly lcr = leading_coefficient_in(r, v);
        Monomial shift;
        if (dr - dq > 0) shift.push_back(Factor{v, Frac(dr - dq)});
        r = r * lcq - (lcr * q).times_monomial(shift);
    }
    return r;
}

Atom pick_variable(const Poly& a, const Poly& b) {
    // Prefer an atom present in both with the smallest combined degree.
    Atom best = nullptr;
    int best_deg = 0;
    for (const auto& t : a.terms())
        for (const auto& f : t.mono) {
            if (!contains_atom(b, f.atom)) continue;
            int d = degree_in(a, f.atom) + degree_in(b, f.atom);
            if (!best || d < best_deg || (d == best_deg && compare_atoms(f.atom, best) < 0)) {
                best = f.atom;
                best_deg = d;
            }
        }
    return best;
}

using Univariate = std::vector<mpq_class>;  // coefficient of v^k at index k

void trim(Univariate& u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
}

// Specializes every atom except v to the rational in `values`.
Univariate specialize(const Poly& p, Atom v, const std::map<Atom, mpq_class>& values) {
    Univariate u(degree_in(p, v) + 1);
    for (const auto& t : p.terms()) {
        mpq_class c = t.coef;
        int k = 0;
        for (const auto& f : t.mono) {
            if (f.atom == v) {
                k = static_cast<int>(f.exp.num());
                continue;
            }
            mpq_class x = values.at(f.atom), pw = 1;
            for (std::int64_t e = f.exp.num(); e > 0; --e) pw *= x;
            c *= pw;
        }
        u[k] += c;
    }
    trim(u);
    return u;
}

// Degree of the univariate gcd over Q.
std::size_t univariate_gcd_degree(Univariate a, Univariate b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        while (a.size() >= b.size()) {
            mpq_class q = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// Proves gcd(a, b) == 1 by specializing all atoms but one. A common factor of
// positive degree in v survives any specialization that keeps the leading
// v-coefficient of a nonzero. False means "not proven", not "shared factor".
bool coprime_by_specialization(const Poly& a, const Poly& b) {
    std::vector<Atom> atoms;
    for (const Poly* p : {&a, &b})
        for (const auto& t : p->terms())
            for (const auto& f : t.mono)
                if (std::find(atoms.begin(), atoms.end(), f.atom) == atoms.end()) atoms.push_back(f.atom);
    std::sort(atoms.begin(), atoms.end(), [](Atom x, Atom y) { return compare_atoms(x, y) < 0; });
    for (Atom v : atoms) {
        if (!contains_atom(a, v) || !contains_atom(b, v)) continue;
        bool proven = false;
        for (int attempt = 0; attempt < 3 && !proven; ++attempt) {
            std::map<Atom, mpq_class> values;
            for (std::size_t i = 0; i < atoms.size(); ++i)
                values[atoms[i]] = mpq_class(static_cast<long>(3 * i + 5 * attempt + 2), static_cast<long>(i % 3 + 1 + attempt));
            Univariate ua = specialize(a, v, values), ub = specialize(b, v, values);
            if (static_cast<int>(ua.size()) != degree_in(a, v) + 1) continue;
            if (ub.empty()) continue;
            proven = univariate_gcd_degree(std::move(ua), std::move(ub)) == 0;
            if (!proven) break;  // likely a genuine common factor
        }
        if (!proven) return false;
    }
    return true;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a == b) return monic(a);
    Atom v = pick_variable(a, b);
    if (!v) return Poly(1);  // a common factor would share an atom
    if (coprime_by_specialization(a, b)) return Poly(1);
    for (const Poly* p : {&a, &b}) {
        // Atoms appearing in only one argument can be eliminated via content.
        for (const auto& t : p->terms())
            for (const auto& f : t.mono) {
                const Poly& other = (p == &a) ? b : a;
                if (!contains_atom(other, f.atom)) {
                    Poly c = content_in(*p, f.atom);
                    return (p == &a) ? gcd_rec(c, b) : gcd_rec(a, c);
                }
            }
    }
    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly pa = ca.is_one() ? a : *divide_exact(a, ca);
    Poly pb = cb.is_one() ? b : *divide_exact(b, cb);
    Poly c = gcd_rec(ca, cb);
    if (degree_in(pa, v) < degree_in(pb, v)) std::swap(pa, pb);
    if (auto q = divide_exact(pa, pb)) return monic(c * pb);
    while (true) {
        Poly r = pseudo_remainder(pa, pb, v);
        if (r.is_zero()) break;
        if (!contains_atom(r, v)) {
            pb = Poly(1);
            break;
        }
        pa = pb;
        Poly cr = content_in(r, v);
        pb = cr.is_one() ? r : *divide_exact(r, cr);
    }
    Poly g = pb;
    Poly cg = content_in(g, v);
    if (!cg.is_one()) g = *divide_exact(g, cg);
    return monic(c * g);
}

// Multiplies exponents of the given atoms by the given integer factors.
Poly rescale(const Poly& p, const std::map<Atom, std::int64_t>& scale, bool inverse) {
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m = t.mono;
        for (auto& f : m) {
            auto it = scale.find(f.atom);
            if (it == scale.end() || it->second == 1) continue;
            f.exp = inverse ? f.exp / Frac(it->second) : f.exp * Frac(it->second);
        }
        out.push_back(Term{std::move(m), t.coef});
    }
    return Poly::from_terms(std::move(out));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    if (a.is_zero() || b.is_zero()) {
        const Poly& p = a.is_zero() ? b : a;
        Monomial cm = monomial_content(p);
        Monomial units;
        for (const auto& f : cm)
            if (is_unit_atom(f.atom)) units.push_back(Factor{f.atom, -f.exp});
        return monic(p.times_monomial(units));
    }
    if (a.is_constant() || b.is_constant()) return Poly(1);
    Monomial ca = monomial_content(a);
    Monomial cb = monomial_content(b);
    Monomial common;
    for (const auto& f : ca) {
        if (is_unit_atom(f.atom)) continue;
        Frac e = exponent_of(cb, f.atom);
        Frac m = f.exp < e ? f.exp : e;
        if (m.positive()) common.push_back(Factor{f.atom, m});
    }
    Poly a1 = a.times_monomial(mono_pow(ca, Frac(-1)));
    Poly b1 = b.times_monomial(mono_pow(cb, Frac(-1)));
    Poly g;
    if (a1.is_constant() || b1.is_constant()) {
        g = Poly(1);
    } else {
        std::map<Atom, std::int64_t> scale;
        for (const Poly* p : {&a1, &b1})
            for (const auto& t : p->terms())
                for (const auto& f : t.mono) {
                    auto& s = scale[f.atom];
                    if (s == 0) s = 1;
                    s = lcm64(s, f.exp.den());
                }
        bool trivial = true;
        for (auto& [atom, s] : scale)
            if (s != 1) trivial = false;
        if (trivial) {
            g = gcd_rec(a1, b1);
        } else {
            g = rescale(gcd_rec(rescale(a1, scale, false), rescale(b1, scale, false)), scale, true);
        }
    }
    return monic(g.times_monomial(common));
}

}  // namespace hidsym::sym
