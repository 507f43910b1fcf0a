#!/usr/bin/env python3
"""Recompute reference values with sympy and write them to tests/golden/derived.json.

The C++ unit tests compare against this file; rerun it only when a value is
meant to change.
"""
import json
import pathlib
import sys

import sympy as sp

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden" / "derived.json"


def text(e):
    """sympy expression in the input grammar of the library."""
    s = sp.sstr(sp.simplify(e), order="lex")
    return s.replace("**", "^").replace("log(", "ln(")


def christoffel(g, x):
    n = len(x)
    gi = g.inv()
    return [[[sp.simplify(sum(gi[i, l] * (sp.diff(g[l, j], x[k]) + sp.diff(g[l, k], x[j]) - sp.diff(g[j, k], x[l]))
                              for l in range(n)) / 2)
              for k in range(n)] for j in range(n)] for i in range(n)]


def ricci_scalar(g, x):
    n = len(x)
    G = christoffel(g, x)
    gi = g.inv()
    R = 0
    for s_ in range(n):
        for m in range(n):
            Ric = sum(sp.diff(G[r][m][s_], x[r]) - sp.diff(G[r][r][s_], x[m]) +
                      sum(G[r][r][l] * G[l][m][s_] - G[r][m][l] * G[l][r][s_] for l in range(n))
                      for r in range(n))
            R += gi[s_, m] * Ric
    return sp.simplify(R)


def hessian(g, x, f):
    n = len(x)
    G = christoffel(g, x)
    return [[sp.simplify(sp.diff(f, x[i], x[j]) - sum(G[k][i][j] * sp.diff(f, x[k]) for k in range(n)))
             for j in range(n)] for i in range(n)]


def lie_metric(g, x, xi):
    n = len(x)
    return sp.Matrix(n, n, lambda i, j: sum(xi[k] * sp.diff(g[i, j], x[k]) + g[k, j] * sp.diff(xi[k], x[i]) +
                                            g[i, k] * sp.diff(xi[k], x[j]) for k in range(n)))


def ckv_dimension(g, x, degree):
    """Dimension of the polynomial CKVs of total degree <= degree, by brute force."""
    n = len(x)
    monos = sorted(sp.itermonomials(x, degree), key=sp.default_sort_key)
    coeffs = []
    xi = []
    for i in range(n):
        cs = sp.symbols(f"c{i}_0:{len(monos)}")
        coeffs += cs
        xi.append(sum(c * m for c, m in zip(cs, monos)))
    L = lie_metric(g, x, xi)
    gi = g.inv()
    trace = sum(gi[i, j] * L[i, j] for i in range(n) for j in range(n))
    eqs = []
    for i in range(n):
        for j in range(i, n):
            e = sp.expand(n * L[i, j] - trace * g[i, j])
            eqs += sp.Poly(e, *x).coeffs() if e != 0 else []
    M = sp.Matrix([[sp.diff(e, c) for c in coeffs] for e in eqs])
    return len(coeffs) - M.rank()


def wave_prolongation(xi, eta, x):
    """lambda and the residual of X^[2] H on H = 0 for the 4-D wave operator H."""
    n = len(x)
    uf = sp.Function("u")(*x)
    etaf = eta(uf)
    e1 = [sp.diff(etaf, x[i]) - sum(sp.diff(uf, x[j]) * sp.diff(xi[j], x[i]) for j in range(n)) for i in range(n)]
    e2 = [[sp.diff(e1[i], x[j]) - sum(sp.diff(uf, x[i], x[k]) * sp.diff(xi[k], x[j]) for k in range(n))
           for j in range(n)] for i in range(n)]
    signs = [1, -1, -1, -1]
    XH = sp.expand(sum(signs[i] * e2[i][i] for i in range(n)))
    utt = sp.diff(uf, x[0], x[0])
    lam = sp.simplify(XH.coeff(utt))
    # H = 0 means u_tt = u_xx + u_yy + u_zz.
    on_shell = XH.subs(utt, sum(sp.diff(uf, x[i], x[i]) for i in range(1, n)))
    return lam, sp.simplify(on_shell)


def main():
    t, x, y, z, R, s = sp.symbols("t x y z R s")
    th, ph, ze = sp.symbols("theta phi zeta")
    out = {}

    out["diff_cosh"] = text(sp.diff(sp.cosh(th) ** 2 * sp.cosh(ph) ** 2, th))

    blk = sp.Matrix([[sp.Rational(3, 2) * x, 1], [1, 0]]).inv()
    out["petrov_inverse_block"] = [[text(blk[i, j]) for j in range(2)] for i in range(2)]

    lrs = sp.diag(-1, 1, R ** s, R ** s)
    out["lrs_christoffel_R_zz"] = text(christoffel(lrs, [t, R, z, y])[1][2][2].rewrite(sp.exp))

    frw = sp.exp(2 * t) * sp.diag(1, -1, -1, -1)
    c4 = [t, x, y, z]
    out["frw_christoffel_t_tt"] = text(christoffel(frw, c4)[0][0][0])
    out["frw_hessian_t"] = [[text(h) for h in row] for row in hessian(frw, c4, t)]

    out["ricci_unit_sphere"] = text(ricci_scalar(sp.diag(1, sp.sin(th) ** 2), [th, ph]))
    hyp = sp.diag(1, sp.cosh(th) ** 2, sp.cosh(th) ** 2 * sp.cosh(ph) ** 2)
    out["ricci_unit_hyperbolic"] = text(ricci_scalar(hyp, [th, ph, ze]))
    out["ricci_negative_hyperbolic"] = text(ricci_scalar(-hyp, [th, ph, ze]))

    # Exterior derivative of the lowered rotation on flat E^2.
    w = [y, -x]
    out["rotation_curl"] = text(sp.diff(w[1], x) - sp.diff(w[0], y))

    out["ckv_dimension_E2_degree1"] = ckv_dimension(sp.diag(1, 1), [x, y], 1)
    out["ckv_dimension_M3_degree2"] = ckv_dimension(sp.diag(-1, 1, 1), [t, x, y], 2)
    out["ckv_dimension_M4_degree2"] = ckv_dimension(sp.diag(-1, 1, 1, 1), c4, 2)

    # Conformal factor of H = t d_t + x d_x + ... for exp(2t) times flat Lorentzian.
    H = [t, x, y, z]
    Lg = lie_metric(sp.exp(2 * t) * sp.diag(-1, 1, 1, 1), c4, H)
    out["rescaled_psi_H"] = text(Lg[1, 1] / (2 * sp.exp(2 * t)))

    lam, rest = wave_prolongation(H, lambda u: sp.Integer(0), c4)
    out["wave_H_lambda"] = text(lam)
    out["wave_H_residual"] = text(rest)
    _, rest_bad = wave_prolongation([t ** 2, 0, 0, 0], lambda u: sp.Integer(0), c4)
    out["wave_t2_violated"] = bool(rest_bad != 0)

    OUT.write_text(json.dumps(out, indent=2) + "\n")
    print(f"wrote {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
