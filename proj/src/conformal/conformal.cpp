#include "hidsym/conformal.hpp"

#include <algorithm>

#include "hidsym/sym/linalg.hpp"

namespace hidsym::conf {

std::string to_string(CkvClass c) {
    switch (c) {
        case CkvClass::KV:
            return "KV";
        case CkvClass::HV:
            return "HV";
        case CkvClass::SpCKV:
            return "SpCKV";
        case CkvClass::Proper:
            return "ProperCKV";
    }
    return "ProperCKV";
}

namespace {

Expr trace_factor(const Metric& g, const sym::ExprMatrix& L) {
    const std::size_t n = g.dim();
    const auto& inv = g.inverse();
    Expr tr;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!inv[i][j].is_zero() && !L[i][j].is_zero()) tr += inv[i][j] * L[i][j];
    return tr;
}

}  // namespace

Classification classify(const Metric& g, const Vector& xi, const std::string& name) {
    const std::size_t n = g.dim();
    if (xi.size() != n) throw ConformalError("vector '" + name + "' has the wrong number of components");
    Classification out;
    auto L = geom::lie_derivative_metric(g, xi);
    Expr psi = sym::simplify(trace_factor(g, L) / Expr(static_cast<long>(2 * n)));
    bool prob = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Expr r = L[i][j] - Expr(2) * psi * g.g()[i][j];
            if (r.is_zero()) continue;
            auto z = sym::is_zero(r);
            prob = prob || z.probabilistic;
            if (z.zero()) continue;
            out.offending = r;
            if (z.nonzero()) {
                out.verdict = Verdict::NotCKV;
                out.reason = "L_xi g - 2 psi g does not vanish in (" + g.chart().coords[i] + ", " +
                             g.chart().coords[j] + ")";
            } else {
                out.verdict = Verdict::Undecided;
                out.reason = "zero test undecided in (" + g.chart().coords[i] + ", " + g.chart().coords[j] + ")";
            }
            return out;
        }

    ConformalVector cv;
    cv.name = name;
    cv.xi = xi;
    cv.psi = psi;
    auto undecided = [&](const Expr& e, const std::string& why) {
        out.verdict = Verdict::Undecided;
        out.offending = e;
        out.reason = why;
        return out;
    };
    auto psi_zero = psi.is_zero() ? sym::ZeroResult{sym::ZeroState::Zero, false} : sym::is_zero(psi);
    prob = prob || psi_zero.probabilistic;
    if (psi_zero.unknown()) return undecided(psi, "cannot decide whether the conformal factor vanishes");
    if (psi_zero.zero()) {
        cv.cls = CkvClass::KV;
        cv.psi = Expr();
    } else {
        bool constant = true;
        for (const auto& x : g.chart().coords) {
            Expr d = sym::diff(psi, x);
            if (d.is_zero()) continue;
            auto z = sym::is_zero(d);
            prob = prob || z.probabilistic;
            if (z.unknown()) return undecided(d, "cannot decide whether the conformal factor is constant");
            if (z.nonzero()) {
                constant = false;
                break;
            }
        }
        if (constant) {
            cv.cls = CkvClass::HV;
        } else {
            bool special = true;
            auto h = geom::hessian(g, psi);
            for (std::size_t i = 0; i < n && special; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    if (h[i][j].is_zero()) continue;
                    auto z = sym::is_zero(h[i][j]);
                    prob = prob || z.probabilistic;
                    if (z.unknown()) return undecided(h[i][j], "cannot decide whether the Hessian of psi vanishes");
                    if (z.nonzero()) {
                        special = false;
                        break;
                    }
                }
            cv.cls = special ? CkvClass::SpCKV : CkvClass::Proper;
        }
    }
    auto grad = geom::is_gradient(g, xi);
    cv.gradient = grad.state;
    prob = prob || grad.probabilistic;
    cv.norm = geom::norm_sign(g, xi);
    cv.probabilistic = prob;
    out.verdict = Verdict::Conformal;
    out.vector = std::move(cv);
    return out;
}

std::vector<std::vector<int>> graded_monomials(std::size_t n, int d) {
    std::vector<std::vector<int>> out;
    for (int deg = 0; deg <= d; ++deg) {
        // Lexicographically descending exponent vectors of total degree deg.
        std::vector<int> e(n, 0);
        std::vector<std::vector<int>> level;
        auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
            if (pos + 1 == n) {
                e[pos] = left;
                level.push_back(e);
                return;
            }
            for (int k = left; k >= 0; --k) {
                e[pos] = k;
                self(self, pos + 1, left - k);
            }
        };
        if (n == 0) continue;
        rec(rec, 0, deg);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

namespace {

Expr monomial_expr(const std::vector<std::string>& coords, const std::vector<int>& e) {
    Expr m(1);
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (int k = 0; k < e[i]; ++k) m *= Expr::symbol(coords[i]);
    return m;
}

}  // namespace

std::vector<ConformalVector> solve_ckv_ansatz(const Metric& g, int degree, int cap) {
    if (degree < 0) throw ConformalError("ansatz degree must be non-negative");
    if (degree > cap) throw ConformalError("ansatz degree " + std::to_string(degree) + " exceeds the cap " +
                                           std::to_string(cap));
    const auto& coords = g.chart().coords;
    const std::size_t n = g.dim();
    for (const auto& row : g.g())
        for (const auto& e : row)
            if (!sym::is_polynomial_in(Expr::from_poly(e.num()), coords) ||
                !sym::is_polynomial_in(Expr::from_poly(e.den()), coords))
                throw ConformalError("metric entry " + sym::render(e) +
                                     " is not a rational function of the coordinates");

    auto monos = graded_monomials(n, degree);
    struct Column {
        std::size_t mono;
        std::size_t comp;
    };
    std::vector<Column> columns;
    for (std::size_t m = 0; m < monos.size(); ++m)
        for (std::size_t c = 0; c < n; ++c) columns.push_back({m, c});

    // eq[(i,j)][col] = n (L g)_ij - tr(L g) g_ij for xi = basis column.
    const std::size_t neq = n * (n + 1) / 2;
    std::vector<std::vector<Expr>> eq(neq, std::vector<Expr>(columns.size()));
    for (std::size_t col = 0; col < columns.size(); ++col) {
        Vector xi(n);
        xi[columns[col].comp] = monomial_expr(coords, monos[columns[col].mono]);
        auto L = geom::lie_derivative_metric(g, xi);
        Expr tr = trace_factor(g, L);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j, ++k)
                eq[k][col] = Expr(static_cast<long>(n)) * L[i][j] - tr * g.g()[i][j];
    }
    sym::QMatrix system;
    for (const auto& e : eq) {
        auto rows = sym::coefficient_rows(e);
        for (auto& r : rows) system.push_back(std::move(r));
    }
    auto basis = sym::nullspace(system, columns.size());

    std::vector<ConformalVector> out;
    for (std::size_t b = 0; b < basis.size(); ++b) {
        Vector xi(n);
        for (std::size_t col = 0; col < columns.size(); ++col)
            if (basis[b][col] != 0)
                xi[columns[col].comp] += Expr(basis[b][col]) * monomial_expr(coords, monos[columns[col].mono]);
        auto c = classify(g, xi, "V" + std::to_string(b + 1));
        if (c.verdict != Verdict::Conformal)
            throw ConformalError("ansatz solution V" + std::to_string(b + 1) + " failed the CKV check: " + c.reason);
        out.push_back(std::move(*c.vector));
    }
    return out;
}

RescaleCheck conformal_rescale_check(const Metric& g, const Vector& xi, const Expr& N) {
    if (sym::is_zero(N).zero()) throw ConformalError("rescaling factor vanishes");
    auto a = classify(g, xi);
    if (a.verdict != Verdict::Conformal) throw ConformalError("vector is not a CKV of the metric: " + a.reason);
    sym::ExprMatrix scaled = g.g();
    Expr N2 = N * N;
    for (auto& row : scaled)
        for (auto& e : row) e = e * N2;
    Metric gs(g.chart(), scaled);
    auto b = classify(gs, xi);
    if (b.verdict != Verdict::Conformal)
        throw ConformalError("vector is not a CKV of the rescaled metric: " + b.reason);
    return {a.vector->psi, b.vector->psi};
}

}  // namespace hidsym::conf
