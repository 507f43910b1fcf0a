#include "hidsym/liesym.hpp"

#include <map>

#include "hidsym/sym/linalg.hpp"

namespace hidsym::lie {

using sym::diff;
using sym::simplify;

bool SymmetryGenerator::is_u_scaling() const {
    if (generic_b || !b.is_zero() || a.is_zero() || !a.is_constant()) return false;
    for (const auto& c : xi)
        if (!c.is_zero()) return false;
    return true;
}

SymmetryGenerator u_scaling(std::size_t n) {
    SymmetryGenerator X;
    X.name = "X_u";
    X.xi.assign(n, Expr());
    X.a = Expr(1);
    return X;
}

SymmetryGenerator generic_solution(std::size_t n) {
    SymmetryGenerator X;
    X.name = "X_b";
    X.xi.assign(n, Expr());
    X.generic_b = true;
    return X;
}

SymmetryGenerator from_vector(const std::string& name, const Vector& xi, const Expr& a) {
    SymmetryGenerator X;
    X.name = name;
    X.xi = xi;
    X.a = a;
    return X;
}

namespace {

std::string coefficient_term(const Expr& c, const std::string& op) {
    if (c == Expr(1)) return op;
    if (c == Expr(-1)) return "-" + op;
    std::string s = sym::render(c);
    bool simple = c.den().is_one() && c.num().size() == 1;
    return (simple ? s : "(" + s + ")") + "*" + op;
}

}  // namespace

std::string render(const SymmetryGenerator& X, const std::vector<std::string>& coords, const std::string& field) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < X.xi.size(); ++i)
        if (!X.xi[i].is_zero()) parts.push_back(coefficient_term(X.xi[i], "d_" + coords[i]));
    Expr eta = X.a * Expr::symbol(field) + (X.generic_b ? Expr() : X.b);
    if (!eta.is_zero()) parts.push_back(coefficient_term(eta, "d_" + field));
    if (X.generic_b) parts.push_back("b*d_" + field);
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i][0] == '-')
            out += " - " + parts[i].substr(1);
        else
            out += " + " + parts[i];
    }
    return out;
}

SymmetryGenerator generator_for(const Metric& g, const conf::ConformalVector& v) {
    const long n = static_cast<long>(g.dim());
    // For KVs and HVs the psi term is a constant multiple of u d_u and is
    // absorbed into a0.
    bool constant_psi = v.cls == conf::CkvClass::KV || v.cls == conf::CkvClass::HV;
    Expr a = n > 2 && !constant_psi ? Expr(mpq_class(2 - n, 2)) * v.psi : Expr();
    return from_vector(v.name, v.xi, a);
}

namespace {

void finish(SymmetryList& out, std::size_t n) {
    out.generators.push_back(u_scaling(n));
    out.generators.push_back(generic_solution(n));
}

std::string describe(const sym::ZeroResult& z, const Expr& e) {
    return (z.unknown() ? "undecided: " : "") + sym::render(e);
}

}  // namespace

SymmetryList laplace_symmetries(const Metric& g, const std::vector<conf::ConformalVector>& catalog) {
    SymmetryList out;
    const std::size_t n = g.dim();
    for (const auto& v : catalog) {
        if (n > 2 && v.cls == conf::CkvClass::Proper) {
            Expr lap = geom::laplacian(g, v.psi);
            auto z = sym::is_zero(lap);
            if (!z.zero()) {
                out.rejected.push_back({v.name, "Laplacian of psi does not vanish: " + describe(z, lap)});
                continue;
            }
        }
        out.generators.push_back(generator_for(g, v));
    }
    finish(out, n);
    return out;
}

SymmetryList klein_gordon_symmetries(const Metric& g, const Expr& V, const std::vector<conf::ConformalVector>& catalog) {
    SymmetryList out;
    const std::size_t n = g.dim();
    for (const auto& v : catalog) {
        Expr cond = geom::apply(g.chart().coords, v.xi, V) + Expr(2) * v.psi * V;
        if (n > 2 && v.cls == conf::CkvClass::Proper)
            cond -= Expr(mpq_class(2 - static_cast<long>(n), 2)) * geom::laplacian(g, v.psi);
        auto z = sym::is_zero(cond);
        if (!z.zero()) {
            out.rejected.push_back({v.name, "potential condition fails: " + describe(z, cond)});
            continue;
        }
        out.generators.push_back(generator_for(g, v));
    }
    finish(out, n);
    return out;
}

namespace {

// Accumulates labelled residuals into a report.
struct Checker {
    ConditionReport rep;
    bool undecided = false;
    bool failed = false;

    void check(const std::string& label, const Expr& e) {
        if (e.is_zero()) return;
        auto z = sym::is_zero(e);
        rep.probabilistic = rep.probabilistic || z.probabilistic;
        if (z.zero()) return;
        if (z.unknown()) undecided = true;
        else failed = true;
        rep.residuals.push_back(label + ": " + describe(z, e));
    }
    void fail(const std::string& msg) {
        failed = true;
        rep.residuals.push_back(msg);
    }
    ConditionReport done() {
        rep.satisfied = failed ? sym::ZeroState::NonZero : undecided ? sym::ZeroState::Unknown : sym::ZeroState::Zero;
        return rep;
    }
};

bool is_constant_on(const Expr& e, const std::vector<std::string>& coords, Checker& c, const std::string& label) {
    bool ok = true;
    for (const auto& x : coords) {
        Expr d = diff(e, x);
        if (d.is_zero()) continue;
        std::size_t before = c.rep.residuals.size();
        c.check(label + " d/d" + x, d);
        if (c.rep.residuals.size() != before) ok = false;
    }
    return ok;
}

}  // namespace

ConditionReport poisson_symmetry_check(const Metric& g, const Expr& f, const SymmetryGenerator& X,
                                       const std::string& field) {
    Checker c;
    const long n = static_cast<long>(g.dim());
    const auto& coords = g.chart().coords;
    auto cls = conf::classify(g, X.xi, X.name);
    if (cls.verdict != conf::Verdict::Conformal) {
        c.fail("conformal Killing equation: " + cls.reason);
        return c.done();
    }
    const Expr psi = cls.vector->psi;
    const Expr a0 = n > 2 ? X.a - Expr(mpq_class(2 - n, 2)) * psi : X.a;
    is_constant_on(a0, coords, c, "a0");
    const Expr u = Expr::symbol(field);
    const Expr fu = diff(f, field);
    Expr res = u * geom::laplacian(g, X.a) - geom::apply(coords, X.xi, f) - X.a * u * fu + (X.a - Expr(2) * psi) * f;
    if (X.generic_b) {
        c.check("f linear in " + field, diff(fu, field));
    } else if (!X.b.is_zero()) {
        res += geom::laplacian(g, X.b) - X.b * fu;
    }
    c.check("zeroth-order condition", res);
    c.rep.lambda = simplify(X.a - Expr(2) * psi);
    return c.done();
}

ConditionReport check_linear_pde_symmetry(const LinearPDE& pde, const SymmetryGenerator& X) {
    Checker c;
    const auto& x = pde.chart.coords;
    const std::size_t n = x.size();
    const auto& A = pde.A;
    const auto& B = pde.B;
    if (X.xi.size() != n) throw std::invalid_argument("generator has the wrong number of components");

    // dxi[k][i] = d_i xi^k
    sym::ExprMatrix dxi(n, std::vector<Expr>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) dxi[k][i] = diff(X.xi[k], x[i]);

    // Second-order terms: L_xi A^ij = (lambda - a) A^ij.
    sym::ExprMatrix L(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Expr s = geom::apply(x, X.xi, A[i][j]);
            for (std::size_t k = 0; k < n; ++k) {
                if (!A[k][j].is_zero()) s -= A[k][j] * dxi[i][k];
                if (!A[i][k].is_zero()) s -= A[i][k] * dxi[j][k];
            }
            L[i][j] = L[j][i] = s;
        }
    Expr kappa;
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i)
        for (std::size_t j = i; j < n && !found; ++j)
            if (!A[i][j].is_zero()) {
                kappa = simplify(L[i][j] / A[i][j]);
                found = true;
            }
    if (!found) throw std::invalid_argument("equation has no second-order part");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            c.check("second-order (" + x[i] + "," + x[j] + ")", L[i][j] - kappa * A[i][j]);
    if (c.failed) {
        c.rep.lambda = kappa + X.a;
        return c.done();
    }
    const Expr lambda = simplify(kappa + X.a);
    c.rep.lambda = lambda;

    std::vector<Expr> da(n);
    for (std::size_t i = 0; i < n; ++i) da[i] = diff(X.a, x[i]);
    for (std::size_t k = 0; k < n; ++k) {
        Expr s = X.a * B[k] - lambda * B[k] + geom::apply(x, X.xi, B[k]);
        for (std::size_t i = 0; i < n; ++i) {
            if (!A[i][k].is_zero() && !da[i].is_zero()) s -= Expr(2) * A[i][k] * da[i];
            if (!dxi[k][i].is_zero() && !B[i].is_zero()) s -= dxi[k][i] * B[i];
            for (std::size_t j = 0; j < n; ++j)
                if (!A[i][j].is_zero() && !dxi[k][i].is_zero()) s += A[i][j] * diff(dxi[k][i], x[j]);
        }
        c.check("first-order (" + x[k] + ")", s);
    }

    const Expr u = Expr::symbol(pde.field);
    const Expr fu = diff(pde.f, pde.field);
    auto second_order_part = [&](const Expr& h) {
        Expr s;
        for (std::size_t i = 0; i < n; ++i) {
            Expr hi = diff(h, x[i]);
            if (!B[i].is_zero()) s -= B[i] * hi;
            for (std::size_t j = 0; j < n; ++j)
                if (!A[i][j].is_zero()) s += A[i][j] * diff(hi, x[j]);
        }
        return s;
    };
    Expr res = u * second_order_part(X.a) - geom::apply(x, X.xi, pde.f) - X.a * u * fu + lambda * pde.f;
    if (X.generic_b) {
        c.check("f linear in " + pde.field, diff(fu, pde.field));
    } else if (!X.b.is_zero()) {
        res += second_order_part(X.b) - X.b * fu;
    }
    c.check("zeroth-order condition", res);
    return c.done();
}

ConditionReport verify_by_prolongation(const LinearPDE& pde, const SymmetryGenerator& X) {
    Checker c;
    const auto& x = pde.chart.coords;
    const std::size_t n = x.size();
    const std::string& field = pde.field;
    const Expr u = Expr::symbol(field);
    auto jet1_name = [&](std::size_t i) { return "{" + field + "}_" + x[i]; };
    auto jet2_name = [&](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        return "{" + field + "}_" + x[i] + "," + x[j];
    };
    std::vector<Expr> u1(n);
    sym::ExprMatrix u2(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) {
        u1[i] = Expr::symbol(jet1_name(i));
        for (std::size_t j = 0; j < n; ++j) u2[i][j] = Expr::symbol(jet2_name(i, j));
    }
    // Total derivative of a function of (x, u, u_k).
    auto D = [&](const Expr& F, std::size_t i) {
        Expr s = diff(F, x[i]) + u1[i] * diff(F, field);
        for (std::size_t j = 0; j < n; ++j) {
            Expr d = diff(F, jet1_name(j));
            if (!d.is_zero()) s += u2[i][j] * d;
        }
        return s;
    };

    if (X.generic_b) c.check("f linear in " + field, diff(diff(pde.f, field), field));
    const Expr eta = X.a * u + (X.generic_b ? Expr() : X.b);
    std::vector<Expr> eta1(n);
    for (std::size_t i = 0; i < n; ++i) {
        Expr s = D(eta, i);
        for (std::size_t j = 0; j < n; ++j) {
            Expr d = diff(X.xi[j], x[i]);
            if (!d.is_zero()) s -= u1[j] * d;
        }
        eta1[i] = s;
    }

    Expr H = -pde.f;
    for (std::size_t i = 0; i < n; ++i) {
        if (!pde.B[i].is_zero()) H -= pde.B[i] * u1[i];
        for (std::size_t j = i; j < n; ++j)
            if (!pde.A[i][j].is_zero()) H += (i == j ? Expr(1) : Expr(2)) * pde.A[i][j] * u2[i][j];
    }

    Expr XH;
    for (std::size_t k = 0; k < n; ++k)
        if (!X.xi[k].is_zero()) XH += X.xi[k] * diff(H, x[k]);
    XH += eta * diff(H, field);
    for (std::size_t i = 0; i < n; ++i) {
        Expr d = diff(H, jet1_name(i));
        if (!d.is_zero()) XH += eta1[i] * d;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Expr d = diff(H, jet2_name(i, j));
            if (d.is_zero()) continue;
            Expr e = D(eta1[i], j);
            for (std::size_t k = 0; k < n; ++k) {
                Expr dk = diff(X.xi[k], x[j]);
                if (!dk.is_zero()) e -= u2[i][k] * dk;
            }
            XH += e * d;
        }

    // Eliminate the first diagonal second derivative (or the first mixed one).
    std::size_t p = n, q = n;
    for (std::size_t i = 0; i < n && p == n; ++i)
        if (!pde.A[i][i].is_zero()) p = q = i;
    for (std::size_t i = 0; i < n && p == n; ++i)
        for (std::size_t j = i + 1; j < n && p == n; ++j)
            if (!pde.A[i][j].is_zero()) {
                p = i;
                q = j;
            }
    if (p == n) throw std::invalid_argument("equation has no second-order part");
    const Expr hcoef = diff(H, jet2_name(p, q));
    const Expr lambda = simplify(diff(XH, jet2_name(p, q)) / hcoef);
    c.rep.lambda = lambda;
    // XH - lambda H is free of the eliminated derivative, so it equals XH on H = 0.
    Expr R = XH - lambda * H;

    std::map<std::string, Expr> to_zero;
    for (std::size_t i = 0; i < n; ++i) {
        c.check("coefficient of " + jet1_name(i), diff(R, jet1_name(i)));
        to_zero[jet1_name(i)] = Expr();
        for (std::size_t j = i; j < n; ++j) {
            if (i == p && j == q) continue;
            c.check("coefficient of " + jet2_name(i, j), diff(R, jet2_name(i, j)));
            to_zero[jet2_name(i, j)] = Expr();
        }
    }
    c.check("jet-free part", sym::substitute(R, to_zero));
    return c.done();
}

std::vector<SymmetryGenerator> solve_symmetry_ansatz(const LinearPDE& pde, int degree) {
    auto V = pde.potential();
    if (!V) throw std::invalid_argument("ansatz solver needs f = V u");
    const auto& x = pde.chart.coords;
    const std::size_t n = x.size();
    const auto& A = pde.A;
    const auto& B = pde.B;
    auto monos = conf::graded_monomials(n, degree);
    const std::size_t m = monos.size();
    auto mono = [&](std::size_t k) {
        Expr e(1);
        for (std::size_t i = 0; i < n; ++i)
            for (int r = 0; r < monos[k][i]; ++r) e *= Expr::symbol(x[i]);
        return e;
    };
    // Columns: kappa (= lambda - a) monomials, then a, then xi^1..xi^n per monomial.
    enum Kind { Kappa, Coef, Xi };
    struct Column {
        Kind kind;
        std::size_t mono;
        std::size_t comp;
    };
    std::vector<Column> cols;
    for (std::size_t k = 0; k < m; ++k) cols.push_back({Kappa, k, 0});
    for (std::size_t k = 0; k < m; ++k) cols.push_back({Coef, k, 0});
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t c = 0; c < n; ++c) cols.push_back({Xi, k, c});

    const std::size_t n2 = n * (n + 1) / 2;
    std::vector<std::vector<Expr>> eqs(n2 + n + 1, std::vector<Expr>(cols.size()));
    for (std::size_t col = 0; col < cols.size(); ++col) {
        const Column& C = cols[col];
        const Expr f = mono(C.mono);
        std::size_t e = 0;
        if (C.kind == Kappa) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) eqs[e++][col] = -f * A[i][j];
            for (std::size_t k = 0; k < n; ++k) eqs[e++][col] = -f * B[k];
            eqs[e][col] = f * *V;
        } else if (C.kind == Coef) {
            e = n2;
            for (std::size_t k = 0; k < n; ++k) {
                Expr s;
                for (std::size_t i = 0; i < n; ++i) s -= Expr(2) * A[i][k] * diff(f, x[i]);
                eqs[e++][col] = s;
            }
            Expr s;
            for (std::size_t i = 0; i < n; ++i) {
                Expr fi = diff(f, x[i]);
                s -= fi * B[i];
                for (std::size_t j = 0; j < n; ++j) s += A[i][j] * diff(fi, x[j]);
            }
            eqs[e][col] = s;
        } else {
            const std::size_t c = C.comp;
            // xi = f e_c
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    Expr s = f * diff(A[i][j], x[c]);
                    for (std::size_t k = 0; k < n; ++k) {
                        if (i == c) s -= A[k][j] * diff(f, x[k]);
                        if (j == c) s -= A[i][k] * diff(f, x[k]);
                    }
                    eqs[e++][col] = s;
                }
            for (std::size_t k = 0; k < n; ++k) {
                Expr s = f * diff(B[k], x[c]);
                if (k == c) {
                    for (std::size_t i = 0; i < n; ++i) {
                        Expr fi = diff(f, x[i]);
                        s -= fi * B[i];
                        for (std::size_t j = 0; j < n; ++j) s += A[i][j] * diff(fi, x[j]);
                    }
                }
                eqs[e++][col] = s;
            }
            eqs[e][col] = -f * diff(*V, x[c]);
        }
    }
    sym::QMatrix system;
    for (const auto& e : eqs) {
        auto rows = sym::coefficient_rows(e);
        for (auto& r : rows) system.push_back(std::move(r));
    }
    auto basis = sym::nullspace(system, cols.size());
    std::vector<SymmetryGenerator> out;
    for (const auto& v : basis) {
        SymmetryGenerator X;
        X.xi.assign(n, Expr());
        for (std::size_t col = 0; col < cols.size(); ++col) {
            if (v[col] == 0) continue;
            const Expr term = Expr(v[col]) * mono(cols[col].mono);
            if (cols[col].kind == Coef) X.a += term;
            if (cols[col].kind == Xi) X.xi[cols[col].comp] += term;
        }
        bool geometric = false;
        for (const auto& c : X.xi) geometric = geometric || !c.is_zero();
        if (!geometric) continue;
        X.name = "S" + std::to_string(out.size() + 1);
        out.push_back(std::move(X));
    }
    return out;
}

}  // namespace hidsym::lie
