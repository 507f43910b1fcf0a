#include "hidsym/sym/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "internal.hpp"

namespace hidsym::sym {

std::vector<std::size_t> rref(QMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        mpq_class inv = 1 / m[row][c];
        for (std::size_t k = c; k < cols; ++k) m[row][k] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            mpq_class f = m[r][c];
            for (std::size_t k = c; k < cols; ++k)
                if (m[row][k] != 0) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    m.resize(row);
    return pivots;
}

std::vector<QVector> nullspace(QMatrix m, std::size_t cols) {
    auto pivots = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

QMatrix coefficient_rows(const std::vector<Expr>& columns) {
    const std::size_t k = columns.size();
    std::vector<Expr> cols;
    cols.reserve(k);
    for (const auto& c : columns) cols.push_back(simplify(c));
    Poly lcm(1);
    for (const auto& c : cols) {
        if (c.is_zero() || c.den().is_one()) continue;
        Poly g = gcd(lcm, c.den());
        auto q = divide_exact(c.den(), g);
        if (!q) throw std::logic_error("gcd does not divide denominator");
        lcm = lcm * *q;
    }
    auto less = [](const Monomial& a, const Monomial& b) { return compare_monomials(a, b) < 0; };
    std::map<Monomial, QVector, decltype(less)> rows(less);
    for (std::size_t j = 0; j < k; ++j) {
        if (cols[j].is_zero()) continue;
        auto q = divide_exact(lcm, cols[j].den());
        if (!q) throw std::logic_error("denominator does not divide lcm");
        Poly n = detail::trig_reduce(cols[j].num() * *q);
        for (const auto& t : n.terms()) {
            auto it = rows.find(t.mono);
            if (it == rows.end()) it = rows.emplace(t.mono, QVector(k, 0)).first;
            it->second[j] += t.coef;
        }
    }
    QMatrix out;
    out.reserve(rows.size());
    for (auto& [m, r] : rows) out.push_back(std::move(r));
    return out;
}

namespace {

bool surely_nonzero(const Expr& e) {
    if (e.is_zero()) return false;
    if (e.is_constant()) return true;
    return !is_zero(e).zero();
}

}  // namespace

std::optional<ExprMatrix> inverse(const ExprMatrix& m0) {
    std::size_t n = m0.size();
    ExprMatrix a = m0;
    ExprMatrix inv(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Expr(1);
    for (std::size_t c = 0; c < n; ++c) {
        // Prefer constant pivots, then the structurally smallest nonzero one.
        std::size_t p = n;
        for (std::size_t r = c; r < n; ++r)
            if (a[r][c].is_constant() && !a[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p == n)
            for (std::size_t r = c; r < n; ++r)
                if (surely_nonzero(a[r][c])) {
                    if (p == n || a[r][c].num().size() < a[p][c].num().size()) p = r;
                }
        if (p == n) return std::nullopt;
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        Expr piv = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] = simplify(a[c][k] / piv);
            inv[c][k] = simplify(inv[c][k] / piv);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Expr f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                if (!a[c][k].is_zero()) a[r][k] = simplify(a[r][k] - f * a[c][k]);
                if (!inv[c][k].is_zero()) inv[r][k] = simplify(inv[r][k] - f * inv[c][k]);
            }
        }
    }
    return inv;
}

Expr determinant(const ExprMatrix& m) {
    std::size_t n = m.size();
    if (n == 0) return Expr(1);
    if (n == 1) return m[0][0];
    if (n == 2) return simplify(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    Expr det;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        ExprMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Expr> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Expr term = m[0][j] * determinant(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return simplify(det);
}

std::optional<mpq_class> rationalize(long double x, long max_den, long double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    long double scale = std::max<long double>(1.0L, std::fabs(x));
    // Continued fraction convergents.
    long double r = x;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        long double a = std::floor(r);
        if (std::fabs(a) > 1e18L) break;
        mpz_class ai(std::to_string(static_cast<long long>(a)));
        mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        long double approx = p1.get_d() / q1.get_d();
        if (std::fabs(approx - x) <= tol * scale) {
            mpq_class out(p1, q1);
            out.canonicalize();
            return out;
        }
        long double frac = r - a;
        if (frac == 0) break;
        r = 1 / frac;
    }
    return std::nullopt;
}

CombinationResult solve_combination(const std::vector<Expr>& target, const std::vector<std::vector<Expr>>& columns,
                                    const ZeroTestConfig& cfg) {
    CombinationResult out;
    const std::size_t comps = target.size();
    const std::size_t k = columns.size();
    auto confirm = [&](const QVector& c) -> bool {
        bool prob = false;
        for (std::size_t i = 0; i < comps; ++i) {
            Expr r = target[i];
            for (std::size_t j = 0; j < k; ++j)
                if (c[j] != 0) r -= Expr(c[j]) * columns[j][i];
            ZeroResult z = is_zero(r, cfg);
            if (!z.zero()) return false;
            prob = prob || z.probabilistic;
        }
        out.probabilistic = prob;
        return true;
    };
    if (k == 0) {
        if (confirm({})) out.coefficients = QVector{};
        return out;
    }
    std::set<std::string> syms;
    for (const auto& e : target)
        for (const auto& s : free_symbols(e)) syms.insert(s);
    for (const auto& col : columns)
        for (const auto& e : col)
            for (const auto& s : free_symbols(e)) syms.insert(s);

    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const std::size_t points = std::max<std::size_t>(6, 2 * k + 2);
    std::vector<std::vector<long double>> rows;
    std::vector<long double> rhs;
    std::mt19937_64 rng(cfg.seed + 17);
    std::uniform_int_distribution<int> part(1, 64);
    std::size_t tries = 0;
    std::size_t good = 0;
    while (good < points && tries < points * 20) {
        ++tries;
        std::map<std::string, long double> pt;
        for (const auto& s : syms) {
            int p = part(rng), q = part(rng);
            if (5 * p < q || p > 5 * q) {
                p = q;
            }
            long double v = static_cast<long double>(p) / q;
            pt[s] = (tries > points * 10 || (rng() & 1u)) ? v : -v;
        }
        std::vector<std::vector<long double>> block(comps, std::vector<long double>(k));
        std::vector<long double> b(comps);
        bool ok = true;
        for (std::size_t i = 0; i < comps && ok; ++i) {
            b[i] = evaluate(target[i], pt);
            ok = std::isfinite(b[i]);
            for (std::size_t j = 0; j < k && ok; ++j) {
                block[i][j] = evaluate(columns[j][i], pt);
                ok = std::isfinite(block[i][j]);
            }
        }
        if (!ok) continue;
        ++good;
        for (std::size_t i = 0; i < comps; ++i) {
            long double s = std::fabs(b[i]);
            for (auto v : block[i]) s = std::max(s, std::fabs(v));
            if (s == 0) continue;
            for (auto& v : block[i]) v /= s;
            rows.push_back(block[i]);
            rhs.push_back(b[i] / s);
        }
    }
    if (good < points) return out;
    if (rows.empty()) {
        QVector zero(k, 0);
        if (confirm(zero)) out.coefficients = zero;
        return out;
    }
    Mat a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k));
    Vec b(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < k; ++j) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = rows[r][j];
        b(static_cast<Eigen::Index>(r)) = rhs[r];
    }
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    qr.setThreshold(1e-12L);
    auto rank = qr.rank();
    // Restrict to an independent set of columns so the solution is unique.
    const auto& perm = qr.colsPermutation().indices();
    Mat sub(a.rows(), rank);
    for (Eigen::Index j = 0; j < rank; ++j) sub.col(j) = a.col(perm(j));
    Vec xs = sub.colPivHouseholderQr().solve(b);
    QVector c(k, 0);
    for (Eigen::Index j = 0; j < rank; ++j) {
        auto q = rationalize(xs(j));
        if (!q) return out;
        c[static_cast<std::size_t>(perm(j))] = *q;
    }
    if (confirm(c)) out.coefficients = c;
    return out;
}

}  // namespace hidsym::sym
