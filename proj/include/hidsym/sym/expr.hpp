#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hidsym/sym/frac.hpp"

namespace hidsym::sym {

// Canonical representation
// ------------------------
// Every Expr is a reduced fraction num/den of generalized polynomials with
// rational coefficients. A generalized polynomial is a sum of terms
// coef * a1^e1 * ... * ak^ek over interned atoms:
//
//   Symbol   a named variable or parameter
//   Func     sin, cos, sinh, cosh or ln of a canonical argument
//   Exp      exp(m) for a primitive monomial m (or a non-polynomial argument);
//            treated as a unit, so its exponent may be any rational number
//   Power    B^(p/q) for a primitive polynomial B (or a positive integer)
//
// Exponents of non-Exp atoms are non-negative rationals; Power atoms only
// carry exponents in (0,1). tan, tanh, sqrt and exp of sums are rewritten on
// construction, so two structurally different Exprs may still be equal only
// through transcendental identities (sin^2+cos^2=1 and friends).

enum class Kernel { Sin, Cos, Sinh, Cosh, Ln };

enum class AtomKind { Symbol, Func, Exp, Power };

struct AtomNode;
using Atom = const AtomNode*;

struct Factor {
    Atom atom;
    Frac exp;
};

using Monomial = std::vector<Factor>;

struct Term {
    Monomial mono;
    mpq_class coef;
};

// Total order on atoms; deterministic across runs (structural, not by address).
int compare_atoms(Atom a, Atom b);
int compare_monomials(const Monomial& a, const Monomial& b);

class Poly {
public:
    Poly() = default;
    explicit Poly(mpq_class c);
    static Poly from_terms(std::vector<Term> terms);  // sorts and combines
    static Poly monomial(Monomial m, mpq_class c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    std::optional<mpq_class> constant_value() const;
    std::size_t size() const { return terms_.size(); }
    const Term& leading() const { return terms_.front(); }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(const mpq_class& c) const;
    Poly times_monomial(const Monomial& m, const mpq_class& c = 1) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend int compare(const Poly& a, const Poly& b);

    std::size_t hash() const;

private:
    std::vector<Term> terms_;  // strictly descending monomial order, nonzero coefs
};

class Expr {
public:
    Expr();  // zero
    Expr(int v);
    Expr(long v);
    Expr(const mpq_class& v);
    Expr(const char*) = delete;

    static Expr symbol(const std::string& name);
    static Expr from_poly(const Poly& p);
    // Builds num/den and brings it into canonical form.
    static Expr fraction(const Poly& num, const Poly& den);

    const Poly& num() const;
    const Poly& den() const;

    bool is_zero() const { return num().is_zero(); }
    bool is_polynomial() const { return den().is_one(); }
    std::optional<mpq_class> constant_value() const;
    bool is_constant() const { return constant_value().has_value(); }
    std::size_t hash() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr& operator/=(const Expr& o) { return *this = *this / o; }

    // Structural equality of canonical forms.
    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
    friend int compare(const Expr& a, const Expr& b);
    friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

    struct Data;

private:
    explicit Expr(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    // num/den already free of common factors; only normalizes the denominator.
    static Expr reduced(Poly num, Poly den);
    std::shared_ptr<const Data> d_;
};

struct AtomNode {
    AtomKind kind;
    std::string name;  // Symbol
    Kernel kernel{};   // Func
    Expr payload;      // Func argument, Exp exponent, Power base
    std::size_t hash = 0;
    std::vector<std::string> free_symbols;  // sorted, unique
};

Atom intern_symbol(const std::string& name);

// Elementary constructors; all return canonical Exprs.
Expr pow(const Expr& base, Frac e);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);
Expr tanh(const Expr& a);
Expr sqrt(const Expr& a);
// Looks up exp/ln/sin/cos/tan/sinh/cosh/tanh/sqrt by name.
std::optional<Expr> apply_function(const std::string& name, const Expr& arg);

// Value of atom^e as an Expr.
Expr atom_power(Atom a, Frac e);
Expr atom_expr(Atom a);

std::set<std::string> free_symbols(const Expr& e);
bool depends_on(const Expr& e, const std::string& symbol);
bool depends_on_any(const Expr& e, const std::vector<std::string>& symbols);

Expr diff(const Expr& e, const std::string& symbol);
Expr substitute(const Expr& e, const std::map<std::string, Expr>& values);

// Numerical value; NaN when a domain error (pole, log of a negative, ...) occurs.
long double evaluate(const Expr& e, const std::map<std::string, long double>& point);

// Text in the input grammar; parse(render(e)) == e.
std::string render(const Expr& e);
std::string render(const Poly& p);

// Rewrites sin^2 -> 1 - cos^2 and sinh^2 -> cosh^2 - 1 in numerator and
// denominator and renormalizes. Used for presentation and before zero tests.
Expr simplify(const Expr& e);

// True if the expression is a polynomial (integer exponents) in the given
// symbols with rational coefficients and contains no other atoms.
bool is_polynomial_in(const Expr& e, const std::vector<std::string>& symbols);

// Coefficients of a polynomial in the given symbols, keyed by exponent vector.
std::map<std::vector<int>, mpq_class> polynomial_coefficients(const Expr& e,
                                                              const std::vector<std::string>& symbols);

// Greatest common divisor of two generalized polynomials (monic, unit-free).
Poly gcd(const Poly& a, const Poly& b);
// Exact quotient a/b, or nullopt if b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

}  // namespace hidsym::sym

template <>
struct std::hash<hidsym::sym::Expr> {
    std::size_t operator()(const hidsym::sym::Expr& e) const { return e.hash(); }
};
