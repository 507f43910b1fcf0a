#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hidsym/sym/expr.hpp"
#include "hidsym/sym/linalg.hpp"
#include "hidsym/sym/zero.hpp"

namespace hidsym::geom {

using sym::Expr;
using sym::ExprMatrix;

// Components of a vector field in the coordinate basis of a chart.
using Vector = std::vector<Expr>;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Chart {
    std::vector<std::string> coords;

    std::size_t dim() const { return coords.size(); }
    std::size_t index_of(const std::string& name) const;  // throws if absent
    bool contains(const std::string& name) const;
};

// Symmetric non-degenerate metric g_ij with its inverse.
class Metric {
public:
    Metric(Chart chart, ExprMatrix g);

    const Chart& chart() const { return chart_; }
    std::size_t dim() const { return chart_.dim(); }
    const ExprMatrix& g() const { return g_; }
    const ExprMatrix& inverse() const { return inv_; }
    const Expr& determinant() const { return det_; }

    // Gamma^i_jk, indexed [i][j][k].
    const std::vector<ExprMatrix>& christoffel() const;
    // Gamma^i = g^jk Gamma^i_jk.
    const Vector& contracted_christoffel() const;

    Vector lower(const Vector& xi) const;
    Expr inner(const Vector& a, const Vector& b) const;

private:
    Chart chart_;
    ExprMatrix g_;
    ExprMatrix inv_;
    Expr det_;
    mutable std::shared_ptr<std::vector<ExprMatrix>> christoffel_;
    mutable std::shared_ptr<Vector> contracted_;
};

// Second-order linear PDE  A^ij u_ij - B^i u_i - f = 0  on a chart; f may
// depend on the dependent variable (named `field`).
struct LinearPDE {
    Chart chart;
    std::string field = "u";
    ExprMatrix A;
    Vector B;
    Expr f;

    // V with f = V u when f is linear and homogeneous in the field.
    std::optional<Expr> potential() const;
    bool is_linear() const { return potential().has_value(); }
};

LinearPDE laplace_beltrami(const Metric& g, const std::string& field = "u");
LinearPDE klein_gordon(const Metric& g, const Expr& V, const std::string& field = "u");

// Compares the divergence form (1/sqrt|g|) d_i(sqrt|g| g^ij d_j u) with the
// Christoffel form; returns the first-order residuals (all zero when they agree).
struct DivergenceCheck {
    bool agree = false;
    bool probabilistic = false;
    Vector residual;
};
DivergenceCheck divergence_form_check(const Metric& g);

ExprMatrix lie_derivative_metric(const Metric& g, const Vector& xi);
ExprMatrix hessian(const Metric& g, const Expr& phi);
Expr laplacian(const Metric& g, const Expr& phi);
Expr ricci_scalar(const Metric& g);

// Tri-state: whether xi_i = g_ij xi^j is closed (locally a gradient).
sym::ZeroResult is_gradient(const Metric& g, const Vector& xi);

enum class NormSign { Null, Positive, Negative, Indefinite };
std::string to_string(NormSign s);
NormSign norm_sign(const Metric& g, const Vector& xi);

// Directional derivative xi^i d_i phi.
Expr apply(const std::vector<std::string>& coords, const Vector& xi, const Expr& phi);

}  // namespace hidsym::geom
