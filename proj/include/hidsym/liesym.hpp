#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hidsym/conformal.hpp"
#include "hidsym/geometry.hpp"

namespace hidsym::lie {

using geom::LinearPDE;
using geom::Metric;
using geom::Vector;
using sym::Expr;

// X = xi^i d_i + (a u + b) d_u.  When generic_b is set, b stands for an
// arbitrary solution of the linear equation and `b` is ignored.
struct SymmetryGenerator {
    std::string name;
    Vector xi;
    Expr a;
    Expr b;
    bool generic_b = false;

    bool is_u_scaling() const;  // xi = 0, b = 0, a nonzero constant
    bool is_trivial() const { return generic_b || is_u_scaling(); }
};

SymmetryGenerator u_scaling(std::size_t n);
SymmetryGenerator generic_solution(std::size_t n);
SymmetryGenerator from_vector(const std::string& name, const Vector& xi, const Expr& a = Expr());

std::string render(const SymmetryGenerator& X, const std::vector<std::string>& coords, const std::string& field = "u");

struct ConditionReport {
    sym::ZeroState satisfied = sym::ZeroState::Unknown;
    Expr lambda;
    std::vector<std::string> residuals;  // "<label>: <expr>" for each failing condition
    bool probabilistic = false;

    bool ok() const { return satisfied == sym::ZeroState::Zero; }
};

struct Rejection {
    std::string name;
    std::string reason;
};

struct SymmetryList {
    std::vector<SymmetryGenerator> generators;  // geometric ones, then u d_u, then b d_u
    std::vector<Rejection> rejected;
};

SymmetryList laplace_symmetries(const Metric& g, const std::vector<conf::ConformalVector>& catalog);
SymmetryList klein_gordon_symmetries(const Metric& g, const Expr& V, const std::vector<conf::ConformalVector>& catalog);

// Generator attached to one CKV (psi term for n > 2, none for n = 2).
SymmetryGenerator generator_for(const Metric& g, const conf::ConformalVector& v);

// Delta u = f(x, u) with f in the chart coordinates and the field.
ConditionReport poisson_symmetry_check(const Metric& g, const Expr& f, const SymmetryGenerator& X,
                                       const std::string& field = "u");

// Direct determining equations for A^ij u_ij - B^i u_i - f = 0.
ConditionReport check_linear_pde_symmetry(const LinearPDE& pde, const SymmetryGenerator& X);

// X^[2] H = lambda H on H = 0, from the prolongation formulas.
ConditionReport verify_by_prolongation(const LinearPDE& pde, const SymmetryGenerator& X);

// Point symmetries xi^k, a polynomial of degree <= degree (with the factor
// lambda - a polynomial too) for a linear PDE with f = V u and coefficients
// rational in the coordinates. Returns a basis of the geometric part, u d_u
// excluded.
std::vector<SymmetryGenerator> solve_symmetry_ansatz(const LinearPDE& pde, int degree);

}  // namespace hidsym::lie
