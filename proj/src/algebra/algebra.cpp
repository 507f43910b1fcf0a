#include "hidsym/algebra.hpp"

namespace hidsym::alg {

using sym::Expr;

SymmetryGenerator lie_bracket(const std::vector<std::string>& coords, const SymmetryGenerator& X,
                              const SymmetryGenerator& Y) {
    if (X.generic_b || Y.generic_b) throw AlgebraError("brackets with a generic b d_u are not tabulated");
    const std::size_t n = coords.size();
    if (X.xi.size() != n || Y.xi.size() != n) throw AlgebraError("generators live on different charts");
    SymmetryGenerator Z;
    Z.name = "[" + X.name + "," + Y.name + "]";
    Z.xi.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        Z.xi[k] = geom::apply(coords, X.xi, Y.xi[k]) - geom::apply(coords, Y.xi, X.xi[k]);
    Z.a = geom::apply(coords, X.xi, Y.a) - geom::apply(coords, Y.xi, X.a);
    Z.b = geom::apply(coords, X.xi, Y.b) + X.b * Y.a - geom::apply(coords, Y.xi, X.b) - Y.b * X.a;
    return Z;
}

namespace {

std::vector<Expr> components(const SymmetryGenerator& X) {
    std::vector<Expr> v = X.xi;
    v.push_back(X.a);
    v.push_back(X.b);
    return v;
}

}  // namespace

SpanResult express_in_span(const SymmetryGenerator& target, const std::vector<SymmetryGenerator>& basis) {
    std::vector<std::vector<Expr>> cols;
    for (const auto& B : basis) {
        if (B.generic_b) throw AlgebraError("generic b d_u cannot be part of a span");
        cols.push_back(components(B));
    }
    auto r = sym::solve_combination(components(target), cols);
    return {r.coefficients, r.probabilistic};
}

CommutatorTable commutator_table(const std::vector<std::string>& coords, const std::vector<SymmetryGenerator>& basis) {
    CommutatorTable t;
    t.basis = basis;
    bool has_u = false;
    for (const auto& B : basis) {
        if (B.generic_b) throw AlgebraError("generic b d_u cannot be part of a commutator table");
        if (B.is_u_scaling()) has_u = true;
    }
    std::vector<SymmetryGenerator> span = basis;
    if (!has_u) span.push_back(lie::u_scaling(coords.size()));
    const std::size_t k = basis.size();
    std::vector<std::vector<QVector>> raw(k, std::vector<QVector>(k, QVector(span.size(), 0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            auto Z = lie_bracket(coords, basis[i], basis[j]);
            auto r = express_in_span(Z, span);
            if (!r.coefficients)
                throw AlgebraError("bracket [" + basis[i].name + ", " + basis[j].name +
                                   "] leaves the span: " + lie::render(Z, coords));
            t.probabilistic = t.probabilistic || r.probabilistic;
            raw[i][j] = *r.coefficients;
            for (std::size_t m = 0; m < span.size(); ++m) raw[j][i][m] = -raw[i][j][m];
        }
    bool need_u = false;
    if (!has_u)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) need_u = need_u || raw[i][j].back() != 0;
    if (need_u) {
        t.basis.push_back(span.back());
        t.u_adjoined = true;
    }
    const std::size_t size = t.basis.size();
    t.c.assign(size, std::vector<QVector>(size, QVector(size, 0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t m = 0; m < size; ++m) t.c[i][j][m] = raw[i][j][m];
    if (t.u_adjoined) {
        // u d_u commutes with every generator that has b = 0; check the rest.
        const std::size_t u = size - 1;
        for (std::size_t i = 0; i < k; ++i) {
            auto Z = lie_bracket(coords, t.basis[i], t.basis[u]);
            auto r = express_in_span(Z, t.basis);
            if (!r.coefficients)
                throw AlgebraError("bracket [" + t.basis[i].name + ", " + t.basis[u].name + "] leaves the span");
            t.c[i][u] = *r.coefficients;
            for (std::size_t m = 0; m < size; ++m) t.c[u][i][m] = -t.c[i][u][m];
        }
    }
    return t;
}

std::vector<std::string> antisymmetry_violations(const CommutatorTable& t) {
    std::vector<std::string> out;
    const std::size_t k = t.basis.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t m = 0; m < k; ++m)
                if (t.c[i][j][m] != -t.c[j][i][m] || (i == j && t.c[i][j][m] != 0))
                    out.push_back("c^" + t.basis[m].name + "_(" + t.basis[i].name + "," + t.basis[j].name + ")");
    return out;
}

std::vector<std::string> jacobi_violations(const CommutatorTable& t) {
    std::vector<std::string> out;
    const std::size_t k = t.basis.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (std::size_t l = j + 1; l < k; ++l)
                for (std::size_t r = 0; r < k; ++r) {
                    mpq_class s = 0;
                    for (std::size_t m = 0; m < k; ++m)
                        s += t.c[i][j][m] * t.c[m][l][r] + t.c[j][l][m] * t.c[m][i][r] + t.c[l][i][m] * t.c[m][j][r];
                    if (s != 0)
                        out.push_back("(" + t.basis[i].name + "," + t.basis[j].name + "," + t.basis[l].name +
                                      ") component " + t.basis[r].name);
                }
    return out;
}

std::string render_combination(const QVector& c, const std::vector<SymmetryGenerator>& basis) {
    std::string out;
    for (std::size_t m = 0; m < c.size() && m < basis.size(); ++m) {
        if (c[m] == 0) continue;
        mpq_class v = c[m];
        bool neg = v < 0;
        if (neg) v = -v;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (v != 1) out += v.get_str() + "*";
        out += basis[m].name;
    }
    return out.empty() ? "0" : out;
}

std::vector<std::string> render_nonzero(const CommutatorTable& t) {
    std::vector<std::string> out;
    const std::size_t k = t.basis.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            bool nz = false;
            for (const auto& v : t.c[i][j]) nz = nz || v != 0;
            if (nz)
                out.push_back("[" + t.basis[i].name + ", " + t.basis[j].name + "] = " +
                              render_combination(t.c[i][j], t.basis));
        }
    return out;
}

NormalizerResult normalizer_test(const std::vector<std::string>& coords, const SymmetryGenerator& used,
                                 const SymmetryGenerator& Y) {
    NormalizerResult out;
    if (Y.generic_b) return out;
    auto Z = lie_bracket(coords, used, Y);
    auto r = express_in_span(Z, {used, lie::u_scaling(coords.size())});
    if (!r.coefficients) return out;
    out.in_normalizer = true;
    out.c = (*r.coefficients)[0];
    out.d = (*r.coefficients)[1];
    return out;
}

}  // namespace hidsym::alg
