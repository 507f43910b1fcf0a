#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hidsym/sym/expr.hpp"

namespace hidsym::sym::detail {

Atom intern_func(Kernel k, const Expr& arg);
Atom intern_exp(const Expr& exponent);
Atom intern_power(const Poly& base);

bool is_unit_atom(Atom a);  // Exp atoms are invertible

Monomial mono_mul(const Monomial& a, const Monomial& b);
// a/b allowing any resulting exponents.
Monomial mono_div_raw(const Monomial& a, const Monomial& b);
// a/b if the result has non-negative exponents on all non-unit atoms.
std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b);
Monomial mono_pow(const Monomial& a, Frac e);
Frac exponent_of(const Monomial& m, Atom a);
Monomial without(const Monomial& m, Atom a);

// Monomial content: per atom the minimum exponent over all terms (absent
// atoms count as exponent zero).
Monomial monomial_content(const Poly& p);
// Positive rational c such that p/c has coprime integer coefficients with a
// positive leading coefficient.
mpq_class rational_content(const Poly& p);
Poly monic(const Poly& p);

Frac to_frac(const mpq_class& q);
mpq_class to_mpq(Frac f);

bool needs_power_expansion(const Poly& p);
Poly expand_powers(const Poly& p);

Poly poly_pow(const Poly& p, unsigned k);
std::optional<Poly> poly_sqrt(const Poly& p);

// Rewrites even powers of sin and sinh in terms of cos and cosh.
Poly trig_reduce(const Poly& p);
bool has_reducible_trig(const Poly& p);

// Sum of the terms of p at a point and the sum of their absolute values.
std::pair<long double, long double> evaluate_with_scale(const Poly& p, const std::map<std::string, long double>& point);

std::size_t hash_combine(std::size_t seed, std::size_t v);
std::size_t hash_mpq(const mpq_class& q);

}  // namespace hidsym::sym::detail
