#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hidsym/liesym.hpp"
#include "hidsym/sym/linalg.hpp"

namespace hidsym::alg {

using lie::SymmetryGenerator;
using sym::QVector;

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SymmetryGenerator lie_bracket(const std::vector<std::string>& coords, const SymmetryGenerator& X,
                              const SymmetryGenerator& Y);

// Rational c with target = sum_k c_k basis[k] (components xi, a, b), if any.
struct SpanResult {
    std::optional<QVector> coefficients;
    bool probabilistic = false;
};
SpanResult express_in_span(const SymmetryGenerator& target, const std::vector<SymmetryGenerator>& basis);

struct CommutatorTable {
    std::vector<SymmetryGenerator> basis;  // input basis, plus u d_u when brackets produce it
    bool u_adjoined = false;
    // c[i][j][k]: coefficient of basis[k] in [basis[i], basis[j]].
    std::vector<std::vector<QVector>> c;
    bool probabilistic = false;
};

CommutatorTable commutator_table(const std::vector<std::string>& coords, const std::vector<SymmetryGenerator>& basis);

// Empty when the identity holds; otherwise descriptions of the violations.
std::vector<std::string> antisymmetry_violations(const CommutatorTable& t);
std::vector<std::string> jacobi_violations(const CommutatorTable& t);

// "[X1, X2] = 2*X1 - X_u" lines for the nonzero entries, i < j.
std::vector<std::string> render_nonzero(const CommutatorTable& t);
std::string render_combination(const QVector& c, const std::vector<SymmetryGenerator>& basis);

// [X_used, Y] = c X_used + d u d_u.
struct NormalizerResult {
    bool in_normalizer = false;
    mpq_class c = 0;
    mpq_class d = 0;
};
NormalizerResult normalizer_test(const std::vector<std::string>& coords, const SymmetryGenerator& used,
                                 const SymmetryGenerator& Y);

}  // namespace hidsym::alg
