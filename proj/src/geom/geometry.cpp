#include "hidsym/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace hidsym::geom {

using sym::diff;
using sym::simplify;

std::size_t Chart::index_of(const std::string& name) const {
    auto it = std::find(coords.begin(), coords.end(), name);
    if (it == coords.end()) throw GeometryError("unknown coordinate '" + name + "'");
    return static_cast<std::size_t>(it - coords.begin());
}

bool Chart::contains(const std::string& name) const {
    return std::find(coords.begin(), coords.end(), name) != coords.end();
}

namespace {

bool is_diagonal(const ExprMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (i != j && !m[i][j].is_zero()) return false;
    return true;
}

}  // namespace

Metric::Metric(Chart chart, ExprMatrix g) : chart_(std::move(chart)), g_(std::move(g)) {
    const std::size_t n = chart_.dim();
    if (n == 0) throw GeometryError("metric on an empty chart");
    if (g_.size() != n) throw GeometryError("metric has wrong number of rows");
    for (const auto& row : g_)
        if (row.size() != n) throw GeometryError("metric has wrong number of columns");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (g_[i][j] == g_[j][i]) continue;
            if (!sym::is_zero(g_[i][j] - g_[j][i]).zero())
                throw GeometryError("metric is not symmetric in (" + chart_.coords[i] + ", " + chart_.coords[j] + ")");
        }
    det_ = sym::determinant(g_);
    auto dz = sym::is_zero(det_);
    if (dz.zero()) throw GeometryError("metric is degenerate (determinant vanishes)");
    if (dz.unknown()) throw GeometryError("cannot decide whether the metric is degenerate");
    if (is_diagonal(g_)) {
        inv_.assign(n, std::vector<Expr>(n));
        for (std::size_t i = 0; i < n; ++i) inv_[i][i] = Expr(1) / g_[i][i];
    } else {
        auto inv = sym::inverse(g_);
        if (!inv) throw GeometryError("metric could not be inverted");
        inv_ = std::move(*inv);
    }
}

const std::vector<ExprMatrix>& Metric::christoffel() const {
    if (christoffel_) return *christoffel_;
    const std::size_t n = dim();
    const auto& x = chart_.coords;
    // dg[k][i][j] = d_k g_ij
    std::vector<ExprMatrix> dg(n, ExprMatrix(n, std::vector<Expr>(n)));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                dg[k][i][j] = diff(g_[i][j], x[k]);
                dg[k][j][i] = dg[k][i][j];
            }
    auto out = std::make_shared<std::vector<ExprMatrix>>(n, ExprMatrix(n, std::vector<Expr>(n)));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j; k < n; ++k) {
            // Gamma_ljk = (g_lj,k + g_lk,j - g_jk,l)/2
            std::vector<Expr> lower(n);
            for (std::size_t l = 0; l < n; ++l) lower[l] = (dg[k][l][j] + dg[j][l][k] - dg[l][j][k]) / Expr(2);
            for (std::size_t i = 0; i < n; ++i) {
                Expr s;
                for (std::size_t l = 0; l < n; ++l)
                    if (!inv_[i][l].is_zero() && !lower[l].is_zero()) s += inv_[i][l] * lower[l];
                s = simplify(s);
                (*out)[i][j][k] = s;
                (*out)[i][k][j] = s;
            }
        }
    christoffel_ = out;
    return *christoffel_;
}

const Vector& Metric::contracted_christoffel() const {
    if (contracted_) return *contracted_;
    const std::size_t n = dim();
    const auto& G = christoffel();
    auto out = std::make_shared<Vector>(n);
    for (std::size_t i = 0; i < n; ++i) {
        Expr s;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!inv_[j][k].is_zero() && !G[i][j][k].is_zero()) s += inv_[j][k] * G[i][j][k];
        (*out)[i] = simplify(s);
    }
    contracted_ = out;
    return *contracted_;
}

Vector Metric::lower(const Vector& xi) const {
    const std::size_t n = dim();
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Expr s;
        for (std::size_t j = 0; j < n; ++j)
            if (!g_[i][j].is_zero() && !xi[j].is_zero()) s += g_[i][j] * xi[j];
        out[i] = s;
    }
    return out;
}

Expr Metric::inner(const Vector& a, const Vector& b) const {
    Vector al = lower(a);
    Expr s;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!al[i].is_zero() && !b[i].is_zero()) s += al[i] * b[i];
    return simplify(s);
}

std::optional<Expr> LinearPDE::potential() const {
    Expr v = diff(f, field);
    if (sym::depends_on(v, field)) return std::nullopt;
    Expr rest = sym::substitute(f, {{field, Expr()}});
    if (!rest.is_zero() && !sym::is_zero(rest).zero()) return std::nullopt;
    return v;
}

LinearPDE laplace_beltrami(const Metric& g, const std::string& field) {
    LinearPDE p;
    p.chart = g.chart();
    p.field = field;
    p.A = g.inverse();
    p.B = g.contracted_christoffel();
    p.f = Expr();
    return p;
}

LinearPDE klein_gordon(const Metric& g, const Expr& V, const std::string& field) {
    LinearPDE p = laplace_beltrami(g, field);
    p.f = V * Expr::symbol(field);
    return p;
}

DivergenceCheck divergence_form_check(const Metric& g) {
    const std::size_t n = g.dim();
    const auto& x = g.chart().coords;
    const auto& inv = g.inverse();
    Vector ddet(n);
    for (std::size_t i = 0; i < n; ++i) ddet[i] = diff(g.determinant(), x[i]) / g.determinant();
    DivergenceCheck out;
    out.agree = true;
    out.residual.resize(n);
    const Vector& gamma = g.contracted_christoffel();
    for (std::size_t j = 0; j < n; ++j) {
        // Divergence form first-order coefficient: d_i g^ij + g^ij d_i ln|g| / 2.
        Expr first;
        for (std::size_t i = 0; i < n; ++i) {
            first += diff(inv[i][j], x[i]);
            if (!inv[i][j].is_zero()) first += inv[i][j] * ddet[i] / Expr(2);
        }
        Expr r = simplify(gamma[j] + first);
        out.residual[j] = r;
        auto z = sym::is_zero(r);
        if (!z.zero()) out.agree = false;
        out.probabilistic = out.probabilistic || z.probabilistic;
    }
    return out;
}

ExprMatrix lie_derivative_metric(const Metric& g, const Vector& xi) {
    const std::size_t n = g.dim();
    const auto& x = g.chart().coords;
    const auto& gm = g.g();
    // dxi[k][i] = d_i xi^k
    ExprMatrix dxi(n, std::vector<Expr>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) dxi[k][i] = diff(xi[k], x[i]);
    ExprMatrix out(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Expr s;
            for (std::size_t k = 0; k < n; ++k) {
                if (!xi[k].is_zero()) s += xi[k] * diff(gm[i][j], x[k]);
                if (!gm[k][j].is_zero() && !dxi[k][i].is_zero()) s += gm[k][j] * dxi[k][i];
                if (!gm[i][k].is_zero() && !dxi[k][j].is_zero()) s += gm[i][k] * dxi[k][j];
            }
            out[i][j] = simplify(s);
            out[j][i] = out[i][j];
        }
    return out;
}

ExprMatrix hessian(const Metric& g, const Expr& phi) {
    const std::size_t n = g.dim();
    const auto& x = g.chart().coords;
    const auto& G = g.christoffel();
    Vector d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = diff(phi, x[k]);
    ExprMatrix out(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Expr s = diff(d[i], x[j]);
            for (std::size_t k = 0; k < n; ++k)
                if (!G[k][i][j].is_zero() && !d[k].is_zero()) s -= G[k][i][j] * d[k];
            out[i][j] = simplify(s);
            out[j][i] = out[i][j];
        }
    return out;
}

Expr laplacian(const Metric& g, const Expr& phi) {
    ExprMatrix h = hessian(g, phi);
    const auto& inv = g.inverse();
    Expr s;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j)
            if (!inv[i][j].is_zero() && !h[i][j].is_zero()) s += inv[i][j] * h[i][j];
    return simplify(s);
}

Expr ricci_scalar(const Metric& g) {
    const std::size_t n = g.dim();
    const auto& x = g.chart().coords;
    const auto& G = g.christoffel();
    const auto& inv = g.inverse();
    // R_sn = d_r G^r_ns - d_n G^r_rs + G^r_rl G^l_ns - G^r_nl G^l_rs
    Vector trace(n);  // G^r_rs
    for (std::size_t s = 0; s < n; ++s) {
        Expr t;
        for (std::size_t r = 0; r < n; ++r) t += G[r][r][s];
        trace[s] = t;
    }
    Expr scalar;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t m = 0; m < n; ++m) {
            if (inv[s][m].is_zero()) continue;
            Expr r;
            for (std::size_t q = 0; q < n; ++q) r += diff(G[q][m][s], x[q]);
            r -= diff(trace[s], x[m]);
            for (std::size_t l = 0; l < n; ++l) {
                if (!trace[l].is_zero() && !G[l][m][s].is_zero()) r += trace[l] * G[l][m][s];
                for (std::size_t q = 0; q < n; ++q)
                    if (!G[q][m][l].is_zero() && !G[l][q][s].is_zero()) r -= G[q][m][l] * G[l][q][s];
            }
            scalar += inv[s][m] * r;
        }
    return simplify(scalar);
}

sym::ZeroResult is_gradient(const Metric& g, const Vector& xi) {
    const std::size_t n = g.dim();
    const auto& x = g.chart().coords;
    Vector low = g.lower(xi);
    sym::ZeroResult out{sym::ZeroState::Zero, false};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto z = sym::is_zero(diff(low[i], x[j]) - diff(low[j], x[i]));
            if (z.nonzero()) return z;
            if (z.unknown()) out.state = sym::ZeroState::Unknown;
            out.probabilistic = out.probabilistic || z.probabilistic;
        }
    return out;
}

std::string to_string(NormSign s) {
    switch (s) {
        case NormSign::Null:
            return "null";
        case NormSign::Positive:
            return "positive";
        case NormSign::Negative:
            return "negative";
        case NormSign::Indefinite:
            return "indefinite";
    }
    return "indefinite";
}

NormSign norm_sign(const Metric& g, const Vector& xi) {
    Expr q = g.inner(xi, xi);
    if (sym::is_zero(q).zero()) return NormSign::Null;
    std::mt19937_64 rng(sym::default_zero_config().seed + q.hash());
    std::uniform_int_distribution<int> part(1, 64);
    auto syms = sym::free_symbols(q);
    int pos = 0, neg = 0;
    for (int trial = 0; trial < 64 && pos + neg < 8; ++trial) {
        std::map<std::string, long double> pt;
        for (const auto& s : syms) {
            long double v = static_cast<long double>(part(rng)) / part(rng);
            pt[s] = (trial < 32 && (rng() & 1u)) ? -v : v;
        }
        long double v = sym::evaluate(q, pt);
        if (!std::isfinite(v) || v == 0) continue;
        (v > 0 ? pos : neg)++;
    }
    if (pos > 0 && neg == 0) return NormSign::Positive;
    if (neg > 0 && pos == 0) return NormSign::Negative;
    return NormSign::Indefinite;
}

Expr apply(const std::vector<std::string>& coords, const Vector& xi, const Expr& phi) {
    Expr s;
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!xi[k].is_zero()) s += xi[k] * diff(phi, coords[k]);
    return s;
}

}  // namespace hidsym::geom
