#include "hidsym/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hidsym/sym/parse.hpp"

namespace hidsym::red {

using sym::ZeroState;

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

bool surely_zero(const Expr& e, bool* prob = nullptr) {
    if (e.is_zero()) return true;
    auto z = sym::is_zero(e);
    if (prob && z.probabilistic) *prob = true;
    return z.zero();
}

bool free_of(const Expr& e, const std::vector<std::string>& vars, bool* prob = nullptr) {
    for (const auto& v : vars) {
        if (!sym::depends_on(e, v)) continue;
        if (!surely_zero(sym::diff(e, v), prob)) return false;
    }
    return true;
}

// Jacobian data of a map, expressed in the new chart.
struct Jacobian {
    std::vector<std::size_t> pos;          // chart positions touched by the map
    sym::ExprMatrix K;                     // d new^a / d old^i over pos x pos
    std::vector<sym::ExprMatrix> second;   // d^2 new^a / d old^i d old^j
    std::map<std::string, Expr> forward;   // old name -> expr in new coords
};

Jacobian jacobian(const Chart& chart, const CoordinateMap& m) {
    Jacobian J;
    Chart nc = apply_chart(chart, m);
    for (const auto& o : m.old_coords) J.pos.push_back(chart.index_of(o));
    const std::size_t k = J.pos.size();
    J.forward = m.forward;
    sym::ExprMatrix Jb(k, std::vector<Expr>(k));
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
            Jb[p][q] = sym::simplify(sym::diff(m.forward.at(m.old_coords[p]), nc.coords[J.pos[q]]));
    auto K = sym::inverse(Jb);
    if (!K) throw ReductionError("map '" + m.name + "' has a singular Jacobian");
    J.K = *K;
    for (auto& row : J.K)
        for (auto& e : row) e = sym::simplify(e);
    J.second.assign(k, sym::ExprMatrix(k, std::vector<Expr>(k)));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Expr> dK(k);
            for (std::size_t b = 0; b < k; ++b) dK[b] = sym::diff(J.K[a][i], nc.coords[J.pos[b]]);
            for (std::size_t j = i; j < k; ++j) {
                Expr s;
                for (std::size_t b = 0; b < k; ++b)
                    if (!dK[b].is_zero() && !J.K[b][j].is_zero()) s += dK[b] * J.K[b][j];
                J.second[a][i][j] = J.second[a][j][i] = sym::simplify(s);
            }
        }
    return J;
}

// Full-chart transformation matrix K^a_i (identity outside the touched block).
Expr K_at(const Jacobian& J, std::size_t a, std::size_t i) {
    auto pa = std::find(J.pos.begin(), J.pos.end(), a);
    auto pi = std::find(J.pos.begin(), J.pos.end(), i);
    if (pa == J.pos.end() || pi == J.pos.end()) return a == i ? Expr(1) : Expr();
    return J.K[pa - J.pos.begin()][pi - J.pos.begin()];
}

Expr sub(const Expr& e, const std::map<std::string, Expr>& F) { return sym::simplify(sym::substitute(e, F)); }

CoordinateMap resolve_identity(const CoordinateMap& m, const SymmetryGenerator& X, const Chart& chart) {
    if (!m.identity) return m;
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < X.xi.size(); ++i)
        if (!surely_zero(X.xi[i])) nz.push_back(i);
    if (nz.size() != 1)
        throw ReductionError("identity map needs a symmetry along a single coordinate; '" + X.name + "' has " +
                             std::to_string(nz.size()) + " nonzero components");
    CoordinateMap r = m;
    r.drop = chart.coords[nz[0]];
    r.phase = Expr::symbol(r.drop);
    return r;
}

Expr gcd_all(const std::vector<Expr>& v) {
    sym::Poly g;
    bool first = true;
    for (const auto& e : v) {
        if (e.is_zero()) continue;
        g = first ? e.num() : sym::gcd(g, e.num());
        first = false;
    }
    if (first) return Expr(1);
    Expr ge = Expr::from_poly(g);
    // Keep numeric coefficients; only divide by the non-constant part.
    if (ge.is_constant()) return Expr(1);
    return ge;
}

Expr exp_content(const std::vector<Expr>& v) {
    std::map<sym::Atom, sym::Frac> lo;
    bool first = true;
    for (const auto& e : v) {
        if (e.is_zero()) continue;
        for (const auto& t : e.num().terms()) {
            std::map<sym::Atom, sym::Frac> here;
            for (const auto& f : t.mono)
                if (f.atom->kind == sym::AtomKind::Exp) here[f.atom] = f.exp;
            if (first) {
                lo = here;
                first = false;
                continue;
            }
            for (auto it = lo.begin(); it != lo.end();) {
                auto h = here.find(it->first);
                sym::Frac x = h == here.end() ? sym::Frac(0) : h->second;
                if (x < it->second) it->second = x;
                if (it->second.is_zero())
                    it = lo.erase(it);
                else
                    ++it;
            }
            for (const auto& [a, x] : here)
                if (!lo.count(a) && x.negative()) lo[a] = x;
        }
    }
    Expr out(1);
    for (const auto& [a, x] : lo) out *= sym::atom_power(a, x);
    return out;
}

std::vector<Expr*> coefficient_slots(LinearPDE& p, Expr& V) {
    std::vector<Expr*> out;
    for (std::size_t i = 0; i < p.A.size(); ++i)
        for (std::size_t j = 0; j < p.A.size(); ++j) out.push_back(&p.A[i][j]);
    for (auto& b : p.B) out.push_back(&b);
    out.push_back(&V);
    return out;
}

}  // namespace

CoordinateMap parse_map(const std::vector<std::string>& lines, int line0) {
    CoordinateMap m;
    std::vector<std::pair<int, std::string>> assignments;
    std::string phase_text;
    int phase_line = line0;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const int ln = line0 + static_cast<int>(k);
        std::string line = trim(lines[k]);
        if (line.empty() || line[0] == '#') continue;
        auto err = [&](const std::string& what) { return ReductionError("line " + std::to_string(ln) + ": " + what); };
        auto eq = line.find('=');
        auto w = words(line);
        if (eq != std::string::npos && w[0] != "note" && w[0] != "phase") {
            assignments.emplace_back(ln, line);
            continue;
        }
        if (w[0] == "map") {
            if (w.size() != 2) throw err("expected 'map <name>'");
            m.name = w[1];
        } else if (w[0] == "old") {
            m.old_coords.assign(w.begin() + 1, w.end());
        } else if (w[0] == "new") {
            m.new_coords.assign(w.begin() + 1, w.end());
        } else if (w[0] == "drop") {
            if (w.size() != 2) throw err("expected 'drop <coordinate>'");
            m.drop = w[1];
        } else if (w[0] == "phase") {
            phase_text = trim(line.substr(5));
            phase_line = ln;
        } else if (w[0] == "note") {
            m.note = trim(line.substr(4));
        } else {
            throw err("unknown map directive '" + w[0] + "'");
        }
    }
    auto err0 = [&](const std::string& what) {
        return ReductionError("map '" + m.name + "' (line " + std::to_string(line0) + "): " + what);
    };
    if (m.name.empty()) throw err0("missing 'map <name>'");
    if (m.old_coords.empty() || m.old_coords.size() != m.new_coords.size())
        throw err0("'old' and 'new' must list the same positive number of coordinates");
    for (const auto& n : m.new_coords)
        if (contains(m.old_coords, n)) throw err0("coordinate '" + n + "' is both old and new");
    if (!m.drop.empty() && !contains(m.new_coords, m.drop)) throw err0("dropped coordinate must be a new coordinate");
    for (const auto& [ln, text] : assignments) {
        auto eq = text.find('=');
        std::string lhs = trim(text.substr(0, eq));
        std::string rhs = trim(text.substr(eq + 1));
        Expr e;
        try {
            e = sym::parse(rhs);
        } catch (const sym::ParseError& pe) {
            throw ReductionError("line " + std::to_string(ln) + ": " + pe.message() + " at column " +
                                 std::to_string(text.find(rhs) + pe.offset() + 1));
        }
        if (contains(m.old_coords, lhs)) {
            for (const auto& v : sym::free_symbols(e))
                if (contains(m.old_coords, v))
                    throw ReductionError("line " + std::to_string(ln) + ": forward expression uses old coordinate '" +
                                         v + "'");
            m.forward[lhs] = e;
        } else if (contains(m.new_coords, lhs)) {
            for (const auto& v : sym::free_symbols(e))
                if (contains(m.new_coords, v))
                    throw ReductionError("line " + std::to_string(ln) + ": inverse expression uses new coordinate '" +
                                         v + "'");
            m.inverse[lhs] = e;
        } else {
            throw ReductionError("line " + std::to_string(ln) + ": '" + lhs + "' is not a coordinate of the map");
        }
    }
    for (const auto& o : m.old_coords)
        if (!m.forward.count(o)) throw err0("no forward expression for '" + o + "'");
    for (const auto& n : m.new_coords)
        if (!m.inverse.count(n)) throw err0("no inverse expression for '" + n + "'");
    if (!phase_text.empty()) {
        try {
            m.phase = sym::parse(phase_text);
        } catch (const sym::ParseError& pe) {
            throw ReductionError("line " + std::to_string(phase_line) + ": " + pe.message());
        }
    } else if (!m.drop.empty()) {
        m.phase = Expr::symbol(m.drop);
    }
    return m;
}

void validate_map(const CoordinateMap& m) {
    if (m.identity) return;
    // Exact round trip first.
    bool exact = true;
    std::map<std::string, Expr> inv(m.inverse.begin(), m.inverse.end());
    for (const auto& o : m.old_coords) {
        Expr r;
        try {
            r = sym::simplify(sym::substitute(m.forward.at(o), inv) - Expr::symbol(o));
        } catch (const std::exception&) {
            exact = false;
            break;
        }
        if (!r.is_zero()) {
            exact = false;
            break;
        }
    }
    if (exact) return;

    // Numeric round trip inverse(forward(y)) = y at random points of the new chart.
    std::set<std::string> params;
    for (const auto& [k, e] : m.forward)
        for (const auto& v : sym::free_symbols(e))
            if (!contains(m.new_coords, v)) params.insert(v);
    std::mt19937_64 rng(sym::default_zero_config().seed ^ std::hash<std::string>{}(m.name));
    std::uniform_real_distribution<long double> U(0.2L, 1.8L);
    int good = 0;
    for (int attempt = 0; attempt < 4000 && good < 10; ++attempt) {
        std::map<std::string, long double> y;
        for (const auto& n : m.new_coords) y[n] = U(rng);
        for (const auto& p : params) y[p] = U(rng);
        std::map<std::string, long double> x = y;
        bool finite = true;
        for (const auto& o : m.old_coords) {
            x[o] = sym::evaluate(m.forward.at(o), y);
            finite = finite && std::isfinite(static_cast<double>(x[o]));
        }
        if (!finite) continue;
        for (const auto& n : m.new_coords) x.erase(n);
        std::vector<long double> back;
        for (const auto& n : m.new_coords) {
            long double v = sym::evaluate(m.inverse.at(n), x);
            if (!std::isfinite(static_cast<double>(v))) finite = false;
            back.push_back(v);
        }
        if (!finite) continue;
        for (std::size_t k = 0; k < m.new_coords.size(); ++k) {
            long double want = y[m.new_coords[k]];
            if (std::fabs(static_cast<double>(back[k] - want)) > 1e-8 * (1 + std::fabs(static_cast<double>(want))))
                throw ReductionError("map '" + m.name + "': inverse does not undo the forward map for '" +
                                     m.new_coords[k] + "'");
        }
        ++good;
    }
    if (good < 10) throw ReductionError("map '" + m.name + "': could not sample its domain for the round-trip check");
}

const std::vector<CoordinateMap>& registry() {
    static const std::vector<CoordinateMap> maps = [] {
        static const char* text = R"(
map hyperspherical
  old t x y z
  new theta phi zeta s
  drop s
  note future light cone interior t > sqrt(x^2+y^2+z^2); s = ln r
  t = exp(s)*cosh(theta)*cosh(phi)*cosh(zeta)
  x = exp(s)*sinh(theta)
  y = exp(s)*cosh(theta)*sinh(phi)
  z = exp(s)*cosh(theta)*cosh(phi)*sinh(zeta)
  s = ln(t^2 - x^2 - y^2 - z^2)/2
  theta = ln(x + sqrt(t^2 - y^2 - z^2)) - ln(t^2 - x^2 - y^2 - z^2)/2
  phi = ln(y + sqrt(t^2 - z^2)) - ln(t^2 - y^2 - z^2)/2
  zeta = ln((t + z)/(t - z))/2
map spckv
  old t R
  new x s
  drop s
  note R > |t|, x = R/(R^2 - t^2) > 0; s = ln R
  t = sqrt(exp(s)*(x*exp(s) - 1)/x)
  R = exp(s)
  x = R/(R^2 - t^2)
  s = ln(R)
map inversion
  old x
  new xbar
  note x > 0
  x = 1/xbar
  xbar = 1/x
map axial
  old x y z
  new R p q
  note x > 0; p = y/x and q = z/x are central-projection coordinates on the sphere
  x = R/sqrt(1 + p^2 + q^2)
  y = p*R/sqrt(1 + p^2 + q^2)
  z = q*R/sqrt(1 + p^2 + q^2)
  R = sqrt(x^2 + y^2 + z^2)
  p = y/x
  q = z/x
map cartesian
  old xbar p q
  new X Y Z
  note X > 0
  xbar = sqrt(X^2 + Y^2 + Z^2)
  p = Y/X
  q = Z/X
  X = xbar/sqrt(1 + p^2 + q^2)
  Y = p*xbar/sqrt(1 + p^2 + q^2)
  Z = q*xbar/sqrt(1 + p^2 + q^2)
map inversion4
  old t x y z
  new s X Y Z
  drop s
  phase -ln(X^2 + Y^2 + Z^2 - s^2/4)
  note x^2 + y^2 + z^2 > t^2; conformal inversion with s = 2t/(x^2 + y^2 + z^2 - t^2)
  t = s/(2*(X^2 + Y^2 + Z^2 - s^2/4))
  x = X/(X^2 + Y^2 + Z^2 - s^2/4)
  y = Y/(X^2 + Y^2 + Z^2 - s^2/4)
  z = Z/(X^2 + Y^2 + Z^2 - s^2/4)
  s = 2*t/(x^2 + y^2 + z^2 - t^2)
  X = x/(x^2 + y^2 + z^2 - t^2)
  Y = y/(x^2 + y^2 + z^2 - t^2)
  Z = z/(x^2 + y^2 + z^2 - t^2)
map lrs_hv
  old t R z y
  new r theta zeta v
  drop r
  note R > |t|; uses the parameter s of the metric
  t = exp(r)*sinh(theta)
  R = exp(r)*cosh(theta)
  z = zeta*exp((2 - s)*r/2)
  y = v*exp((2 - s)*r/2)
  r = ln(R^2 - t^2)/2
  theta = ln((R + t)/(R - t))/2
  zeta = z*exp(-(2 - s)*ln(R^2 - t^2)/4)
  v = y*exp(-(2 - s)*ln(R^2 - t^2)/4)
map petrov3
  old rho v
  new sigma s
  drop s
  note v > 0
  rho = sigma*exp(s)
  v = exp(s)
  sigma = rho/v
  s = ln(v)
map frw_ckv
  old t x
  new R s
  drop s
  phase sqrt(R)*cosh(s)
  note t > |x|; R = t^2 - x^2
  t = sqrt(R)*cosh(s)
  x = sqrt(R)*sinh(s)
  R = t^2 - x^2
  s = ln((t + x)/(t - x))/2
)";
        std::vector<CoordinateMap> out;
        CoordinateMap id;
        id.name = "identity";
        id.identity = true;
        id.note = "straightens a symmetry that is already a coordinate translation";
        out.push_back(id);
        std::vector<std::string> block;
        int start = 0, ln = 0;
        std::istringstream in(text);
        std::string line;
        auto flush = [&] {
            if (block.empty()) return;
            out.push_back(parse_map(block, start));
            block.clear();
        };
        while (std::getline(in, line)) {
            ++ln;
            if (trim(line).rfind("map ", 0) == 0) {
                flush();
                start = ln;
            }
            if (!trim(line).empty()) block.push_back(line);
        }
        flush();
        return out;
    }();
    return maps;
}

const CoordinateMap& registry_map(const std::string& name) {
    for (const auto& m : registry())
        if (m.name == name) return m;
    throw ReductionError("unknown coordinate map '" + name + "'");
}

Chart apply_chart(const Chart& c, const CoordinateMap& m) {
    if (m.identity) return c;
    Chart out = c;
    for (std::size_t k = 0; k < m.old_coords.size(); ++k) {
        if (!c.contains(m.old_coords[k]))
            throw ReductionError("map '" + m.name + "' needs coordinate '" + m.old_coords[k] + "'");
        out.coords[c.index_of(m.old_coords[k])] = m.new_coords[k];
    }
    for (const auto& n : m.new_coords)
        if (c.contains(n)) throw ReductionError("map '" + m.name + "' introduces '" + n + "', already a coordinate");
    return out;
}

LinearPDE transform_pde(const LinearPDE& pde, const CoordinateMap& m) {
    if (m.identity) return pde;
    for (const auto& n : m.new_coords) {
        if (pde.chart.contains(n)) continue;
        bool used = sym::depends_on(pde.f, n);
        for (std::size_t i = 0; i < pde.chart.dim() && !used; ++i) {
            used = sym::depends_on(pde.B[i], n);
            for (const auto& e : pde.A[i]) used = used || sym::depends_on(e, n);
        }
        if (used)
            throw ReductionError("map '" + m.name + "' introduces '" + n + "', already a symbol of the equation");
    }
    const std::size_t n = pde.chart.dim();
    Jacobian J = jacobian(pde.chart, m);
    LinearPDE out;
    out.chart = apply_chart(pde.chart, m);
    out.field = pde.field;
    sym::ExprMatrix A(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = sub(pde.A[i][j], J.forward);
    std::vector<Expr> B(n);
    for (std::size_t i = 0; i < n; ++i) B[i] = sub(pde.B[i], J.forward);
    sym::ExprMatrix K(n, std::vector<Expr>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < n; ++i) K[a][i] = K_at(J, a, i);

    out.A.assign(n, std::vector<Expr>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            Expr s;
            for (std::size_t i = 0; i < n; ++i) {
                if (K[a][i].is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!K[b][j].is_zero() && !A[i][j].is_zero()) s += K[a][i] * A[i][j] * K[b][j];
            }
            out.A[a][b] = out.A[b][a] = sym::simplify(s);
        }
    out.B.assign(n, Expr());
    for (std::size_t a = 0; a < n; ++a) {
        Expr s;
        for (std::size_t i = 0; i < n; ++i)
            if (!K[a][i].is_zero() && !B[i].is_zero()) s += B[i] * K[a][i];
        auto pa = std::find(J.pos.begin(), J.pos.end(), a);
        if (pa != J.pos.end()) {
            const std::size_t ka = pa - J.pos.begin();
            for (std::size_t p = 0; p < J.pos.size(); ++p)
                for (std::size_t q = 0; q < J.pos.size(); ++q) {
                    const Expr& y = J.second[ka][p][q];
                    const Expr& Aij = A[J.pos[p]][J.pos[q]];
                    if (!y.is_zero() && !Aij.is_zero()) s -= Aij * y;
                }
        }
        out.B[a] = sym::simplify(s);
    }
    out.f = sub(pde.f, J.forward);
    return out;
}

SymmetryGenerator push_forward(const SymmetryGenerator& X, const Chart& chart, const CoordinateMap& m) {
    if (m.identity) return X;
    const std::size_t n = chart.dim();
    Jacobian J = jacobian(chart, m);
    SymmetryGenerator Y = X;
    std::vector<Expr> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = sub(X.xi[i], J.forward);
    for (std::size_t a = 0; a < n; ++a) {
        Expr s;
        for (std::size_t i = 0; i < n; ++i) {
            Expr k = K_at(J, a, i);
            if (!k.is_zero() && !xi[i].is_zero()) s += k * xi[i];
        }
        Y.xi[a] = sym::simplify(s);
    }
    Y.a = sub(X.a, J.forward);
    Y.b = sub(X.b, J.forward);
    return Y;
}

Straightening straighten(const SymmetryGenerator& X, const Chart& chart, const std::vector<CoordinateMap>& maps,
                         const std::optional<Expr>& mu_override) {
    if (maps.empty()) throw ReductionError("no straightening map given");
    if (X.generic_b) throw ReductionError("cannot reduce by the generic solution symmetry");
    Straightening st;
    st.chart = chart;
    st.pushed = X;
    for (std::size_t k = 0; k < maps.size(); ++k) {
        CoordinateMap m = resolve_identity(maps[k], st.pushed, st.chart);
        const bool last = k + 1 == maps.size();
        if (!m.drop.empty() && !last)
            throw ReductionError("map '" + m.name + "' drops a coordinate but is not the last straightening map");
        if (m.drop.empty() && last) throw ReductionError("last straightening map '" + m.name + "' drops no coordinate");
        st.pushed = push_forward(st.pushed, st.chart, m);
        st.chart = apply_chart(st.chart, m);
        st.maps.push_back(m);
    }
    const CoordinateMap& last = st.maps.back();
    st.s = last.drop;
    st.phase = last.phase;
    const std::size_t si = st.chart.index_of(st.s);
    std::string residual;
    for (std::size_t i = 0; i < st.chart.dim(); ++i) {
        if (i == si) continue;
        if (!surely_zero(st.pushed.xi[i]))
            residual += (residual.empty() ? "" : ", ") + st.chart.coords[i] + ": " + sym::render(st.pushed.xi[i]);
    }
    if (!residual.empty())
        throw ReductionError("'" + X.name + "' is not straightened by the map; residual components " + residual);
    st.scale = st.pushed.xi[si];
    if (surely_zero(st.scale)) throw ReductionError("'" + X.name + "' has no component along " + st.s);

    Expr Xphi = sym::simplify(geom::apply(st.chart.coords, st.pushed.xi, st.phase));
    Expr a = st.pushed.a;
    if (mu_override) {
        st.mu = *mu_override;
        st.extra_a = sym::simplify(st.mu * Xphi - a);
        if (!free_of(st.extra_a, st.chart.coords))
            throw ReductionError("weight " + sym::render(st.mu) + " needs a non-constant multiple of u d_u: " +
                                 sym::render(st.extra_a));
        st.pushed.a = st.pushed.a + st.extra_a;
    } else if (surely_zero(Xphi)) {
        if (!surely_zero(a)) throw ReductionError("phase is invariant but '" + X.name + "' scales u");
        st.mu = Expr();
    } else {
        st.mu = sym::simplify(a / Xphi);
        if (!free_of(st.mu, st.chart.coords))
            throw ReductionError("weight a/X(phase) = " + sym::render(st.mu) + " is not constant");
    }
    return st;
}

LinearPDE strip_common_factors(const LinearPDE& pde) {
    LinearPDE out = pde;
    auto V = pde.potential();
    if (!V) throw ReductionError("equation is not linear and homogeneous in " + pde.field);
    Expr v = *V;
    auto slots = coefficient_slots(out, v);
    std::vector<Expr> vals;
    for (auto* s : slots) vals.push_back(*s);
    Expr c = exp_content(vals) * gcd_all(vals);
    if (c != Expr(1))
        for (auto* s : slots) *s = sym::simplify(*s / c);
    out.f = v * Expr::symbol(out.field);
    return out;
}

std::optional<LaplaceForm> as_laplace_form(const LinearPDE& pde, const std::optional<Expr>& hint) {
    auto V = pde.potential();
    if (!V) return std::nullopt;
    std::vector<Expr> gauges{Expr(1)};
    if (hint && *hint != Expr(1)) gauges.push_back(*hint);
    const std::size_t n = pde.chart.dim();
    for (const auto& G : gauges) {
        sym::ExprMatrix hinv(n, std::vector<Expr>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) hinv[i][j] = sym::simplify(G * pde.A[i][j]);
        auto h = sym::inverse(hinv);
        if (!h) continue;
        for (auto& row : *h)
            for (auto& e : row) e = sym::simplify(e);
        try {
            Metric g(pde.chart, *h);
            const auto& gamma = g.contracted_christoffel();
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) ok = surely_zero(sym::simplify(gamma[i] - G * pde.B[i]));
            if (ok) return LaplaceForm{g, sym::simplify(G * *V), G};
        } catch (const geom::GeometryError&) {
            continue;
        }
    }
    return std::nullopt;
}

ReductionResult reduce(const LinearPDE& pde, const SymmetryGenerator& X, const std::vector<CoordinateMap>& maps,
                       const std::vector<CoordinateMap>& post_maps, const std::optional<Expr>& mu_override) {
    auto V0 = pde.potential();
    if (!V0) throw ReductionError("only equations linear and homogeneous in the field can be reduced");
    ReductionResult r;
    r.st = straighten(X, pde.chart, maps, mu_override);
    r.used = X;
    r.used.a = sym::simplify(X.a + r.st.extra_a);
    auto check = lie::check_linear_pde_symmetry(pde, r.used);
    if (!check.ok())
        throw ReductionError("'" + X.name + "' is not a symmetry of the equation" +
                             (check.residuals.empty() ? std::string() : ": " + check.residuals.front()));
    r.probabilistic = check.probabilistic;

    LinearPDE p = pde;
    for (const auto& m : r.st.maps) p = transform_pde(p, m);
    const auto& coords = p.chart.coords;
    const std::size_t n = coords.size();
    const std::size_t si = p.chart.index_of(r.st.s);
    Expr V = *p.potential();

    // u = exp(mu Phi) w
    const Expr& mu = r.st.mu;
    if (!mu.is_zero()) {
        const Expr& Phi = r.st.phase;
        std::vector<Expr> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = sym::diff(Phi, coords[i]);
        std::vector<Expr> B = p.B;
        for (std::size_t i = 0; i < n; ++i) {
            Expr s;
            for (std::size_t j = 0; j < n; ++j)
                if (!p.A[i][j].is_zero() && !d[j].is_zero()) s += p.A[i][j] * d[j];
            B[i] = sym::simplify(p.B[i] - Expr(2) * mu * s);
        }
        Expr dV;
        for (std::size_t i = 0; i < n; ++i) {
            if (!d[i].is_zero() && !p.B[i].is_zero()) dV += mu * p.B[i] * d[i];
            for (std::size_t j = 0; j < n; ++j) {
                if (p.A[i][j].is_zero()) continue;
                Expr dd = sym::diff(d[i], coords[j]);
                Expr term = mu * dd + mu * mu * d[i] * d[j];
                if (!term.is_zero()) dV -= p.A[i][j] * term;
            }
        }
        V = sym::simplify(V + dV);
        p.B = B;
    }

    // Coefficients that survive once w does not depend on s.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (i != si) keep.push_back(i);
    std::vector<Expr> k;
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a; b < keep.size(); ++b) k.push_back(p.A[keep[a]][keep[b]]);
    for (auto i : keep) k.push_back(p.B[i]);
    k.push_back(V);
    bool prob = false;
    std::optional<std::size_t> lead;
    for (std::size_t i = 0; i < k.size() && !lead; ++i)
        if (!surely_zero(k[i], &prob)) lead = i;
    if (!lead) throw ReductionError("the reduced equation vanishes identically");
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i].is_zero()) continue;
        Expr ratio = sym::simplify(k[i] / k[*lead]);
        if (!free_of(ratio, {r.st.s}, &prob))
            throw ReductionError("reduced coefficient ratio depends on " + r.st.s + ": " + sym::render(ratio));
    }
    r.probabilistic = r.probabilistic || prob;

    std::optional<Expr> s0;
    for (long cand : {0L, 1L}) {
        try {
            Expr c0 = sym::simplify(sym::substitute(k[*lead], {{r.st.s, Expr(cand)}}));
            if (!surely_zero(c0)) {
                s0 = Expr(cand);
                break;
            }
        } catch (const std::exception&) {
        }
    }
    if (!s0) throw ReductionError("no admissible value of " + r.st.s + " to evaluate the reduced coefficients");
    r.s0 = *s0;
    const std::map<std::string, Expr> at{{r.st.s, *s0}};

    LinearPDE red;
    for (auto i : keep) red.chart.coords.push_back(coords[i]);
    red.field = "w";
    const std::size_t m = keep.size();
    red.A.assign(m, std::vector<Expr>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) red.A[a][b] = sub(p.A[keep[a]][keep[b]], at);
    red.B.resize(m);
    for (std::size_t a = 0; a < m; ++a) red.B[a] = sub(p.B[keep[a]], at);
    red.f = sub(V, at) * Expr::symbol("w");
    red = strip_common_factors(red);
    for (const auto& pm : post_maps) {
        if (!pm.drop.empty()) throw ReductionError("post map '" + pm.name + "' must not drop a coordinate");
        red = strip_common_factors(transform_pde(red, pm));
    }
    r.post_maps = post_maps;
    r.reduced = red;
    return r;
}

Projection project(const SymmetryGenerator& Y, const Chart& original, const ReductionResult& r) {
    Projection out;
    if (Y.generic_b) {
        out.reason = "generic solution symmetry";
        return out;
    }
    SymmetryGenerator P = Y;
    Chart c = original;
    for (const auto& m : r.st.maps) {
        P = push_forward(P, c, m);
        c = apply_chart(c, m);
    }
    const std::size_t si = c.index_of(r.st.s);
    const std::vector<std::string> s{r.st.s};
    Expr a = P.a;
    if (!r.st.mu.is_zero()) a = a - r.st.mu * geom::apply(c.coords, P.xi, r.st.phase);
    a = sym::simplify(a);
    Expr b = P.b;
    if (!b.is_zero() && !r.st.mu.is_zero()) b = sym::simplify(b * sym::exp(-r.st.mu * r.st.phase));
    for (std::size_t i = 0; i < c.dim(); ++i) {
        if (i == si) continue;
        if (!free_of(P.xi[i], s)) {
            out.reason = "component along " + c.coords[i] + " depends on " + r.st.s;
            return out;
        }
    }
    if (!free_of(a, s) || !free_of(b, s)) {
        out.reason = "u d_u coefficient depends on " + r.st.s;
        return out;
    }
    const std::map<std::string, Expr> at{{r.st.s, r.s0}};
    SymmetryGenerator R;
    R.name = Y.name;
    Chart rc;
    for (std::size_t i = 0; i < c.dim(); ++i) {
        if (i == si) continue;
        R.xi.push_back(sub(P.xi[i], at));
        rc.coords.push_back(c.coords[i]);
    }
    R.a = sub(a, at);
    R.b = sub(b, at);
    for (const auto& pm : r.post_maps) {
        R = push_forward(R, rc, pm);
        rc = apply_chart(rc, pm);
    }
    out.generator = R;
    return out;
}

bool same_equation(const LinearPDE& a, const LinearPDE& b) {
    if (a.chart.coords != b.chart.coords) return false;
    auto Va = a.potential(), Vb = b.potential();
    if (!Va || !Vb) return false;
    std::vector<Expr> ka, kb;
    const std::size_t n = a.chart.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            ka.push_back(a.A[i][j]);
            kb.push_back(b.A[i][j]);
        }
    for (std::size_t i = 0; i < n; ++i) {
        ka.push_back(a.B[i]);
        kb.push_back(b.B[i]);
    }
    ka.push_back(*Va);
    kb.push_back(*Vb);
    std::optional<std::size_t> lead;
    for (std::size_t i = 0; i < ka.size() && !lead; ++i)
        if (!surely_zero(ka[i])) lead = i;
    if (!lead) return false;
    if (surely_zero(kb[*lead])) return false;
    Expr lambda = sym::simplify(kb[*lead] / ka[*lead]);
    if (!free_of(lambda, a.chart.coords)) return false;
    for (std::size_t i = 0; i < ka.size(); ++i)
        if (!surely_zero(sym::simplify(kb[i] - lambda * ka[i]))) return false;
    return true;
}

}  // namespace hidsym::red
