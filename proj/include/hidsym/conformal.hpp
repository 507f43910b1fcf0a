#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hidsym/geometry.hpp"

namespace hidsym::conf {

using geom::Metric;
using geom::Vector;
using sym::Expr;

class ConformalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CkvClass { KV, HV, SpCKV, Proper };
std::string to_string(CkvClass c);

struct ConformalVector {
    std::string name;
    Vector xi;
    Expr psi;
    CkvClass cls = CkvClass::KV;
    sym::ZeroState gradient = sym::ZeroState::Unknown;
    geom::NormSign norm = geom::NormSign::Indefinite;
    bool probabilistic = false;  // some zero test behind the verdict was numeric
};

enum class Verdict { Conformal, NotCKV, Undecided };

struct Classification {
    Verdict verdict = Verdict::Undecided;
    std::optional<ConformalVector> vector;
    Expr offending;  // residual entry of L_xi g - 2 psi g, or the undecided expression
    std::string reason;
};

Classification classify(const Metric& g, const Vector& xi, const std::string& name = "");

// CKVs with polynomial components of total degree <= degree, found from the
// linear system  n (L_xi g)_ij = (g^kl (L_xi g)_kl) g_ij.  Metric entries
// must be rational functions of the coordinates with rational coefficients.
std::vector<ConformalVector> solve_ckv_ansatz(const Metric& g, int degree, int cap = 3);

struct RescaleCheck {
    Expr psi_g;
    Expr psi_scaled;
};

// Conformal factors of xi for g and for N^2 g, each from its own Lie derivative.
RescaleCheck conformal_rescale_check(const Metric& g, const Vector& xi, const Expr& N);

// Monomial exponent vectors of total degree <= d in n variables, graded then
// lexicographically descending (1, x1, x2, ..., x1^2, x1 x2, ...).
std::vector<std::vector<int>> graded_monomials(std::size_t n, int d);

}  // namespace hidsym::conf
