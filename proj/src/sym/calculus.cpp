#include <algorithm>
#include <unordered_map>

#include "internal.hpp"

namespace hidsym::sym {

using namespace detail;

namespace {

bool atom_depends(Atom a, const std::string& s) {
    return std::binary_search(a->free_symbols.begin(), a->free_symbols.end(), s);
}

class Differentiator {
public:
    explicit Differentiator(const std::string& s) : s_(s) {}

    // d/ds of the atom viewed as a variable (Power atoms stand for their base).
    const Expr& atom_derivative(Atom a) {
        auto it = cache_.find(a);
        if (it != cache_.end()) return it->second;
        Expr d;
        switch (a->kind) {
            case AtomKind::Symbol:
                d = a->name == s_ ? Expr(1) : Expr();
                break;
            case AtomKind::Power:
                d = diff(a->payload, s_);
                break;
            case AtomKind::Exp:
                d = atom_expr(a) * diff(a->payload, s_);
                break;
            case AtomKind::Func: {
                const Expr& arg = a->payload;
                Expr da = diff(arg, s_);
                switch (a->kernel) {
                    case Kernel::Sin:
                        d = cos(arg) * da;
                        break;
                    case Kernel::Cos:
                        d = -sin(arg) * da;
                        break;
                    case Kernel::Sinh:
                        d = cosh(arg) * da;
                        break;
                    case Kernel::Cosh:
                        d = sinh(arg) * da;
                        break;
                    case Kernel::Ln:
                        d = da / arg;
                        break;
                }
                break;
            }
        }
        return cache_.emplace(a, d).first->second;
    }

    Expr poly(const Poly& p) {
        std::vector<Term> direct;
        Expr rest;
        for (const auto& t : p.terms()) {
            for (std::size_t k = 0; k < t.mono.size(); ++k) {
                const Factor& f = t.mono[k];
                if (!atom_depends(f.atom, s_)) continue;
                const Expr& da = atom_derivative(f.atom);
                if (da.is_zero()) continue;
                Monomial others = t.mono;
                others.erase(others.begin() + static_cast<std::ptrdiff_t>(k));
                mpq_class c = t.coef * to_mpq(f.exp);
                Frac lower = f.exp - Frac(1);
                bool stays_polynomial = da.den().is_one() && f.atom->kind != AtomKind::Power &&
                                        (is_unit_atom(f.atom) || !lower.negative());
                if (stays_polynomial) {
                    Monomial m = others;
                    if (!lower.is_zero()) m = mono_mul(m, Monomial{Factor{f.atom, lower}});
                    for (const auto& dt : da.num().terms())
                        direct.push_back(Term{mono_mul(m, dt.mono), c * dt.coef});
                } else {
                    rest += Expr::from_poly(Poly::monomial(others, c)) * atom_power(f.atom, lower) * da;
                }
            }
        }
        Expr out = Expr::from_poly(Poly::from_terms(std::move(direct)));
        return out + rest;
    }

private:
    std::string s_;
    std::unordered_map<Atom, Expr> cache_;
};

}  // namespace

Expr diff(const Expr& e, const std::string& s) {
    if (!depends_on(e, s)) return Expr();
    Differentiator d(s);
    Expr dn = d.poly(e.num());
    if (e.den().is_one()) return dn;
    Expr dd = d.poly(e.den());
    Expr den = Expr::from_poly(e.den());
    Expr num = Expr::from_poly(e.num());
    return (dn * den - num * dd) / (den * den);
}

namespace {

class Substituter {
public:
    explicit Substituter(const std::map<std::string, Expr>& v) : values_(v) {}

    bool touches(Atom a) const {
        for (const auto& s : a->free_symbols)
            if (values_.count(s)) return true;
        return false;
    }

    // Value of the atom after substitution (Power atoms: value of the base).
    const Expr& value(Atom a) {
        auto it = cache_.find(a);
        if (it != cache_.end()) return it->second;
        Expr v;
        switch (a->kind) {
            case AtomKind::Symbol:
                v = values_.at(a->name);
                break;
            case AtomKind::Power:
                v = apply(a->payload);
                break;
            case AtomKind::Exp:
                v = exp(apply(a->payload));
                break;
            case AtomKind::Func: {
                Expr arg = apply(a->payload);
                switch (a->kernel) {
                    case Kernel::Sin:
                        v = sin(arg);
                        break;
                    case Kernel::Cos:
                        v = cos(arg);
                        break;
                    case Kernel::Sinh:
                        v = sinh(arg);
                        break;
                    case Kernel::Cosh:
                        v = cosh(arg);
                        break;
                    case Kernel::Ln:
                        v = ln(arg);
                        break;
                }
                break;
            }
        }
        return cache_.emplace(a, v).first->second;
    }

    Expr poly(const Poly& p) {
        std::vector<Term> untouched;
        Expr rest;
        for (const auto& t : p.terms()) {
            Monomial keep;
            Expr factor(1);
            bool changed = false;
            for (const auto& f : t.mono) {
                if (!touches(f.atom)) {
                    keep.push_back(f);
                    continue;
                }
                changed = true;
                const Expr& v = value(f.atom);
                factor *= (f.exp == Frac(1)) ? v : pow(v, f.exp);
            }
            if (!changed) {
                untouched.push_back(t);
            } else {
                rest += Expr::from_poly(Poly::monomial(keep, t.coef)) * factor;
            }
        }
        return Expr::from_poly(Poly::from_terms(std::move(untouched))) + rest;
    }

    Expr apply(const Expr& e) {
        Expr n = poly(e.num());
        if (e.den().is_one()) return n;
        return n / poly(e.den());
    }

private:
    const std::map<std::string, Expr>& values_;
    std::unordered_map<Atom, Expr> cache_;
};

}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr>& values) {
    if (values.empty()) return e;
    Substituter s(values);
    bool any = false;
    for (const Poly* p : {&e.num(), &e.den()})
        for (const auto& t : p->terms())
            for (const auto& f : t.mono)
                if (s.touches(f.atom)) any = true;
    if (!any) return e;
    return s.apply(e);
}

}  // namespace hidsym::sym
