#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "hidsym/sym/expr.hpp"
#include "hidsym/sym/zero.hpp"

namespace hidsym::sym {

using QVector = std::vector<mpq_class>;
using QMatrix = std::vector<QVector>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m, std::size_t cols);

// Basis of the right null space; one vector per free column, in column order,
// with a 1 in its own free column.
std::vector<QVector> nullspace(QMatrix m, std::size_t cols);

// Rows r of a rational system with  r . c = 0 for all rows  =>  sum_j c_j columns[j] == 0.
// Denominators are cleared and coefficients of each monomial in the atoms are
// matched, so atoms are treated as algebraically independent (after the
// Pythagorean rewrite). Exact for expressions rational in plain symbols.
QMatrix coefficient_rows(const std::vector<Expr>& columns);

// Symbolic matrix helpers.
using ExprMatrix = std::vector<std::vector<Expr>>;
std::optional<ExprMatrix> inverse(const ExprMatrix& m);
Expr determinant(const ExprMatrix& m);

// Finds rationals c with target = sum_k c_k columns[k] componentwise.
// Candidates come from least squares at random points and are confirmed by
// exact zero tests of the residual.
struct CombinationResult {
    std::optional<QVector> coefficients;
    bool probabilistic = false;  // confirmation relied on numerical probing
};
CombinationResult solve_combination(const std::vector<Expr>& target, const std::vector<std::vector<Expr>>& columns,
                                    const ZeroTestConfig& cfg = default_zero_config());

// Best rational approximation with bounded denominator, if close enough.
std::optional<mpq_class> rationalize(long double x, long max_den = 10000, long double tol = 1e-8L);

}  // namespace hidsym::sym
