#include <algorithm>
#include <set>

#include "hidsym/cli.hpp"

namespace hidsym::cli {

using nlohmann::ordered_json;

namespace {

using Subst = std::map<std::string, Expr>;

Expr inst(const Expr& e, const Subst& p) {
    if (p.empty()) return e;
    try {
        return sym::simplify(sym::substitute(e, p));
    } catch (const std::domain_error& err) {
        throw ValidationError("the parameter values make " + sym::render(e) + " singular (" + err.what() + ")");
    }
}

std::string R(const Expr& e) { return sym::render(e); }

ValidationError at(const AnalysisInput& in, int line, const std::string& what) {
    return ValidationError(in.name + ":" + std::to_string(line) + ": " + what);
}

bool exactly_zero(const Expr& e) { return e.is_zero() || sym::is_zero(e).zero(); }

ordered_json vector_json(const std::vector<std::string>& coords, const geom::Vector& xi) {
    ordered_json o = ordered_json::object();
    for (std::size_t i = 0; i < coords.size(); ++i) o[coords[i]] = R(xi[i]);
    return o;
}

ordered_json generator_json(const lie::SymmetryGenerator& X, const std::vector<std::string>& coords,
                            const std::string& field) {
    ordered_json o;
    o["name"] = X.name;
    o["text"] = lie::render(X, coords, field);
    o["xi"] = vector_json(coords, X.xi);
    o["a"] = R(X.a);
    o["b"] = X.generic_b ? "generic solution" : R(X.b);
    return o;
}

std::string term(const Expr& c, const std::string& what) {
    std::string r = R(c);
    bool plain = r.find_first_of("+-*/ ") == std::string::npos || (r[0] == '-' && r.find_first_of("+-*/ ", 1) == std::string::npos);
    if (r == "1") return what;
    if (r == "-1") return "-" + what;
    return (plain ? r : "(" + r + ")") + "*" + what;
}

std::string pde_text(const geom::LinearPDE& p) {
    const auto& x = p.chart.coords;
    const std::string& w = p.field;
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i; j < x.size(); ++j) {
            Expr c = i == j ? p.A[i][j] : Expr(2) * p.A[i][j];
            if (!c.is_zero()) parts.push_back(term(c, w + "_{" + x[i] + "," + x[j] + "}"));
        }
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!p.B[i].is_zero()) parts.push_back(term(-p.B[i], w + "_{" + x[i] + "}"));
    if (!p.f.is_zero()) parts.push_back(R(-p.f));
    if (parts.empty()) return "0 = 0";
    std::string out = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k)
        out += parts[k][0] == '-' ? " - " + parts[k].substr(1) : " + " + parts[k];
    return out + " = 0";
}

ordered_json pde_json(const geom::LinearPDE& p) {
    ordered_json o;
    o["chart"] = p.chart.coords;
    o["field"] = p.field;
    ordered_json A = ordered_json::object();
    for (std::size_t i = 0; i < p.chart.dim(); ++i)
        for (std::size_t j = i; j < p.chart.dim(); ++j)
            if (!p.A[i][j].is_zero()) A[p.chart.coords[i] + " " + p.chart.coords[j]] = R(p.A[i][j]);
    o["A"] = A;
    o["B"] = vector_json(p.chart.coords, p.B);
    auto V = p.potential();
    o["V"] = V ? R(*V) : R(p.f);
    o["text"] = pde_text(p);
    return o;
}

ordered_json metric_json(const geom::Metric& g) {
    ordered_json o = ordered_json::object();
    const auto& c = g.chart().coords;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i; j < g.dim(); ++j)
            if (!g.g()[i][j].is_zero()) o[c[i] + " " + c[j]] = R(g.g()[i][j]);
    return o;
}

struct Checked {
    bool determining = false;
    bool prolongation = false;
    bool probabilistic = false;
};

// Both checks; disagreement with neither undecided is an internal error.
Checked check_both(const geom::LinearPDE& pde, const lie::SymmetryGenerator& X, std::vector<std::string>& warnings) {
    auto a = lie::check_linear_pde_symmetry(pde, X);
    auto b = lie::verify_by_prolongation(pde, X);
    Checked c{a.ok(), b.ok(), a.probabilistic || b.probabilistic};
    if (a.ok() != b.ok()) {
        if (a.satisfied == sym::ZeroState::Unknown || b.satisfied == sym::ZeroState::Unknown)
            warnings.push_back("zero test undecided while checking " + X.name);
        else
            throw cls::ConsistencyError("determining equations and prolongation disagree on " + X.name);
    }
    return c;
}

std::vector<Expr> coefficients(const geom::LinearPDE& p) {
    std::vector<Expr> c;
    for (const auto& row : p.A) c.insert(c.end(), row.begin(), row.end());
    c.insert(c.end(), p.B.begin(), p.B.end());
    c.push_back(p.f);
    return c;
}

// got = k * want for a nonzero function k; returns 0 for k = 1.
std::optional<Expr> proportionality(const geom::LinearPDE& got, const geom::LinearPDE& want) {
    auto g = coefficients(got), w = coefficients(want);
    std::optional<Expr> k;
    for (std::size_t i = 0; i < w.size() && !k; ++i)
        if (!exactly_zero(w[i])) k = sym::simplify(g[i] / w[i]);
    if (!k || exactly_zero(*k) || sym::depends_on(*k, got.field)) return std::nullopt;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!exactly_zero(g[i] - *k * w[i])) return std::nullopt;
    if (exactly_zero(*k - Expr(1))) return Expr();
    return k;
}

const red::CoordinateMap& find_map(const AnalysisInput& in, const std::string& name) {
    for (const auto& m : in.maps)
        if (m.name == name) return m;
    return red::registry_map(name);
}

red::CoordinateMap instantiate(red::CoordinateMap m, const Subst& params) {
    if (params.empty()) return m;
    Subst p = params;
    for (const auto& c : m.old_coords) p.erase(c);
    for (const auto& c : m.new_coords) p.erase(c);
    for (auto& [k, e] : m.forward) e = inst(e, p);
    for (auto& [k, e] : m.inverse) e = inst(e, p);
    m.phase = inst(m.phase, p);
    return m;
}

void check_symbols(const AnalysisInput& in, int line, const Expr& e, const std::set<std::string>& allowed,
                   const std::string& what) {
    for (const auto& s : sym::free_symbols(e))
        if (!allowed.count(s)) throw at(in, line, what + " uses '" + s + "', not a reduced coordinate or parameter");
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
    return out;
}

ordered_json reduction_section(const AnalysisInput& in, const ReduceSpec& spec, const geom::LinearPDE& pde,
                               const lie::SymmetryList& syms, const Subst& params, std::vector<std::string>& warnings,
                               bool& probabilistic) {
    ordered_json o;
    o["label"] = spec.label;
    o["symmetry"] = spec.symmetry;
    o["via"] = spec.via;
    o["then"] = spec.then;

    const lie::SymmetryGenerator* X = nullptr;
    for (const auto& g : syms.generators)
        if (!g.is_trivial() && g.name == spec.symmetry) X = &g;
    if (!X) {
        for (const auto& r : syms.rejected)
            if (r.name == spec.symmetry)
                throw at(in, spec.line, "'" + spec.symmetry + "' is not a symmetry of the equation: " + r.reason);
        throw at(in, spec.line, "no symmetry named '" + spec.symmetry + "'");
    }
    std::vector<red::CoordinateMap> maps, post;
    for (const auto& n : spec.via) maps.push_back(instantiate(find_map(in, n), params));
    for (const auto& n : spec.then) post.push_back(instantiate(find_map(in, n), params));
    std::optional<Expr> mu;
    if (spec.mu) mu = inst(*spec.mu, params);

    red::ReductionResult r;
    try {
        r = red::reduce(pde, *X, maps, post, mu);
    } catch (const red::ReductionError& e) {
        throw at(in, spec.line, std::string("reduction failed: ") + e.what());
    }
    const auto& rc = r.reduced.chart.coords;
    std::set<std::string> allowed(rc.begin(), rc.end());
    for (const auto& p : in.params) allowed.insert(p.name);
    std::optional<Expr> gauge;
    if (spec.gauge) {
        check_symbols(in, spec.line, *spec.gauge, allowed, "gauge");
        gauge = inst(*spec.gauge, params);
    }
    r.laplace = red::as_laplace_form(r.reduced, gauge);
    probabilistic = probabilistic || r.probabilistic;

    o["s"] = r.st.s;
    o["phase"] = R(r.st.phase);
    o["mu"] = R(r.st.mu);
    if (!r.st.extra_a.is_zero()) o["added_u_scaling"] = R(r.st.extra_a);
    o["s0"] = R(r.s0);
    o["used"] = generator_json(r.used, in.chart.coords, pde.field);
    o["reduced_equation"] = pde_json(r.reduced);

    if (r.laplace) {
        ordered_json lf;
        lf["gauge"] = R(r.laplace->gauge);
        lf["metric"] = metric_json(r.laplace->metric);
        lf["potential"] = R(r.laplace->potential);
        Expr ric = sym::simplify(geom::ricci_scalar(r.laplace->metric));
        lf["ricci_scalar"] = R(ric);
        try {
            auto ckvs = conf::solve_ckv_ansatz(r.laplace->metric, in.options.degree);
            lf["ckv_ansatz_dimension"] = ckvs.size();
        } catch (const conf::ConformalError&) {
            lf["ckv_ansatz_dimension"] = nullptr;
        }
        o["laplace_form"] = lf;
    } else {
        o["laplace_form"] = nullptr;
    }

    if (spec.expect_equation) {
        const auto& e = *spec.expect_equation;
        geom::LinearPDE want;
        want.chart = r.reduced.chart;
        want.field = r.reduced.field;
        const std::size_t n = rc.size();
        want.A.assign(n, std::vector<Expr>(n));
        want.B.assign(n, Expr());
        auto idx = [&](const std::string& c) {
            if (!r.reduced.chart.contains(c)) throw at(in, e.line, "'" + c + "' is not a reduced coordinate");
            return r.reduced.chart.index_of(c);
        };
        for (const auto& [k, v] : e.A) {
            check_symbols(in, e.line, v, allowed, "expected equation");
            auto i = idx(k.first), j = idx(k.second);
            want.A[i][j] = want.A[j][i] = inst(v, params);
        }
        for (const auto& [k, v] : e.B) {
            check_symbols(in, e.line, v, allowed, "expected equation");
            want.B[idx(k)] = inst(v, params);
        }
        check_symbols(in, e.line, e.V, allowed, "expected equation");
        want.f = inst(e.V, params) * Expr::symbol(want.field);
        auto factor = proportionality(r.reduced, want);
        std::string verdict = !factor                  ? "mismatch"
                              : factor->is_zero()       ? "exact"
                              : factor->is_constant()   ? "up to the constant factor " + R(*factor)
                                                        : "up to the factor " + R(*factor);
        o["expected_equation"] = {{"text", pde_text(want)}, {"verdict", verdict}};
        if (!factor) warnings.push_back(spec.label + ": reduced equation differs from the expected one");
    }

    std::vector<cls::Candidate> cands;
    for (const auto& c : spec.candidates) {
        cls::Candidate k;
        k.name = c.name;
        k.xi.assign(rc.size(), Expr());
        for (const auto& [coord, v] : c.components) {
            if (!r.reduced.chart.contains(coord))
                throw at(in, c.line, "candidate " + c.name + ": '" + coord + "' is not a reduced coordinate");
            check_symbols(in, c.line, v, allowed, "candidate " + c.name);
            k.xi[r.reduced.chart.index_of(coord)] = inst(v, params);
        }
        if (c.eta) {
            auto with_w = allowed;
            with_w.insert(r.reduced.field);
            check_symbols(in, c.line, *c.eta, with_w, "candidate " + c.name);
            k.eta = inst(*c.eta, params);
        }
        cands.push_back(std::move(k));
    }

    cls::ClassifyOptions copt;
    copt.degree = in.options.degree;
    copt.ansatz = in.options.ansatz != AnsatzMode::Off;
    cls::ReducedAnalysis a;
    try {
        a = cls::classify_reduced(in.chart, syms.generators, r, cands, copt);
    } catch (const red::ReductionError& e) {
        throw at(in, spec.line, e.what());
    }
    probabilistic = probabilistic || a.probabilistic;
    o["checks"] = a.checks;

    ordered_json ents = ordered_json::array();
    std::vector<std::string> found;
    for (const auto& e : a.entries) {
        auto j = generator_json(e.generator, rc, r.reduced.field);
        j["tag"] = cls::to_string(e.tag);
        if (!e.source.empty()) j["source"] = e.source;
        if (!e.note.empty()) j["note"] = e.note;
        ents.push_back(j);
        if (e.tag == cls::Tag::TypeII) found.push_back(e.generator.name);
    }
    o["symmetries"] = ents;
    o["inherited"] = a.with_tag(cls::Tag::Inherited).size();
    o["typeii"] = found;
    ordered_json rej = ordered_json::array();
    for (const auto& x : a.rejected) rej.push_back({{"name", x.name}, {"reason", x.reason}});
    o["rejected"] = rej;
    if (!a.filter.empty()) {
        ordered_json f = ordered_json::array();
        for (const auto& v : a.filter) {
            ordered_json j{{"name", v.name}, {"class", conf::to_string(v.cls)}, {"accepted", v.accepted},
                           {"reason", v.reason}};
            if (v.curvature_check) j["curvature_identity"] = *v.curvature_check;
            f.push_back(j);
        }
        o["proper_ckv_filter"] = f;
    }
    if (!a.not_projected.empty()) o["not_projected"] = a.not_projected;
    if (!a.notes.empty()) o["notes"] = a.notes;

    if (spec.expect_typeii) {
        const auto& want = *spec.expect_typeii;
        std::vector<std::string> missing, surplus;
        for (const auto& nme : want)
            if (std::find(found.begin(), found.end(), nme) == found.end()) missing.push_back(nme);
        for (const auto& nme : found)
            if (std::find(want.begin(), want.end(), nme) == want.end()) surplus.push_back(nme);
        bool ok = missing.empty() && surplus.empty();
        ordered_json x{{"expected", want}, {"verdict", ok ? "match" : "mismatch"}};
        if (!missing.empty()) x["missing"] = missing;
        if (!surplus.empty()) x["surplus"] = surplus;
        o["expected_typeii"] = x;
        if (!ok)
            warnings.push_back(spec.label + ": TypeII set differs from the expected one" +
                               (surplus.empty() ? "" : " (surplus: " + join(surplus) + ")") +
                               (missing.empty() ? "" : " (missing: " + join(missing) + ")"));
    }
    return o;
}

}  // namespace

Report run_analysis(const AnalysisInput& in) {
    Report rep;
    auto& j = rep.json;
    std::vector<std::string> warnings;
    bool probabilistic = false;

    auto& zc = sym::default_zero_config();
    // Only written when it changes, so concurrent analyses with equal options never race.
    if (zc.samples != in.options.samples) zc.samples = in.options.samples;
    if (zc.seed != in.options.seed) zc.seed = in.options.seed;

    Subst params;
    ordered_json pj = ordered_json::object();
    for (const auto& p : in.params) {
        if (p.value) {
            params[p.name] = Expr(*p.value);
            pj[p.name] = p.value->get_str();
        } else {
            pj[p.name] = nullptr;
        }
    }

    j["schema"] = 1;
    j["name"] = in.name;
    j["chart"] = in.chart.coords;
    j["params"] = pj;
    j["options"] = {{"degree", in.options.degree}, {"samples", in.options.samples}, {"seed", in.options.seed}};

    sym::ExprMatrix gm = in.metric;
    for (auto& row : gm)
        for (auto& e : row) e = inst(e, params);
    std::optional<geom::Metric> g;
    try {
        g.emplace(in.chart, gm);
    } catch (const geom::GeometryError& e) {
        throw ValidationError(in.name + ": " + e.what());
    }
    const auto& coords = in.chart.coords;
    std::optional<Expr> V;
    if (in.potential) V = inst(*in.potential, params);
    auto pde = V ? geom::klein_gordon(*g, *V) : geom::laplace_beltrami(*g);
    j["metric"] = metric_json(*g);
    j["equation"] = {{"kind", V ? "klein-gordon" : "laplace"}, {"text", pde_text(pde)}};

    try {
        // Conformal catalog.
        std::vector<conf::ConformalVector> catalog;
        ordered_json rejv = ordered_json::array();
        for (const auto& v : in.vectors) {
            geom::Vector xi;
            for (const auto& c : v.xi) xi.push_back(inst(c, params));
            auto c = conf::classify(*g, xi, v.name);
            if (c.verdict == conf::Verdict::Conformal) {
                catalog.push_back(*c.vector);
            } else {
                rejv.push_back({{"name", v.name}, {"reason", c.reason}});
                if (c.verdict == conf::Verdict::Undecided) warnings.push_back("undecided CKV test for " + v.name);
            }
        }
        bool run_ansatz = in.options.ansatz == AnsatzMode::On ||
                          (in.options.ansatz == AnsatzMode::Auto && in.vectors.empty());
        std::size_t given = catalog.size();
        if (run_ansatz) {
            try {
                auto found = conf::solve_ckv_ansatz(*g, in.options.degree);
                j["ansatz_dimension"] = found.size();
                std::vector<lie::SymmetryGenerator> span;
                for (const auto& c : catalog) span.push_back(lie::from_vector(c.name, c.xi));
                std::size_t k = 0;
                for (auto& c : found) {
                    auto X = lie::from_vector(c.name, c.xi);
                    if (!span.empty() && alg::express_in_span(X, span).coefficients) continue;
                    c.name = "V" + std::to_string(++k);
                    span.push_back(lie::from_vector(c.name, c.xi));
                    catalog.push_back(c);
                }
            } catch (const conf::ConformalError& e) {
                warnings.push_back(std::string("CKV ansatz skipped: ") + e.what());
            }
        }
        ordered_json cat = ordered_json::array();
        std::map<std::string, int> counts;
        for (std::size_t k = 0; k < catalog.size(); ++k) {
            const auto& c = catalog[k];
            probabilistic = probabilistic || c.probabilistic;
            ++counts[conf::to_string(c.cls)];
            cat.push_back({{"name", c.name},
                           {"source", k < given ? "input" : "ansatz"},
                           {"class", conf::to_string(c.cls)},
                           {"psi", R(c.psi)},
                           {"gradient", c.gradient == sym::ZeroState::Zero      ? "yes"
                                         : c.gradient == sym::ZeroState::NonZero ? "no"
                                                                                 : "undecided"},
                           {"norm", geom::to_string(c.norm)},
                           {"xi", vector_json(coords, c.xi)}});
        }
        ordered_json cj;
        cj["dimension"] = catalog.size();
        ordered_json cc = ordered_json::object();
        for (auto k : {conf::CkvClass::KV, conf::CkvClass::HV, conf::CkvClass::SpCKV, conf::CkvClass::Proper})
            if (counts.count(conf::to_string(k))) cc[conf::to_string(k)] = counts[conf::to_string(k)];
        cj["classes"] = cc;
        cj["vectors"] = cat;
        cj["rejected"] = rejv;
        j["conformal_algebra"] = cj;

        // Symmetries of the equation.
        auto syms = V ? lie::klein_gordon_symmetries(*g, *V, catalog) : lie::laplace_symmetries(*g, catalog);
        ordered_json sj = ordered_json::array();
        std::vector<lie::SymmetryGenerator> nontrivial;
        for (const auto& X : syms.generators) {
            auto jj = generator_json(X, coords, pde.field);
            auto c = check_both(pde, X, warnings);
            probabilistic = probabilistic || c.probabilistic;
            if (!c.determining && !c.prolongation)
                throw cls::ConsistencyError("generated symmetry " + X.name + " fails both symmetry checks");
            jj["checks"] = {{"determining", c.determining}, {"prolongation", c.prolongation}};
            sj.push_back(jj);
            if (!X.is_trivial()) nontrivial.push_back(X);
        }
        ordered_json rs = ordered_json::array();
        for (const auto& x : syms.rejected) rs.push_back({{"name", x.name}, {"reason", x.reason}});
        j["symmetries"] = {{"count", nontrivial.size()}, {"generators", sj}, {"rejected", rs}};

        // Commutators.
        ordered_json tj;
        try {
            auto t = alg::commutator_table(coords, nontrivial);
            auto anti = alg::antisymmetry_violations(t);
            auto jac = alg::jacobi_violations(t);
            if (!anti.empty() || !jac.empty())
                throw cls::ConsistencyError("commutator table violates " +
                                            std::string(!anti.empty() ? "antisymmetry: " + anti[0] : "Jacobi: " + jac[0]));
            std::vector<std::string> names;
            for (const auto& b : t.basis) names.push_back(b.name);
            tj["basis"] = names;
            tj["u_adjoined"] = t.u_adjoined;
            tj["nonzero"] = alg::render_nonzero(t);
            tj["antisymmetry"] = true;
            tj["jacobi"] = true;
            probabilistic = probabilistic || t.probabilistic;
        } catch (const alg::AlgebraError& e) {
            warnings.push_back(std::string("commutator table: ") + e.what());
            tj = nullptr;
        }
        j["commutators"] = tj;

        ordered_json reds = ordered_json::array();
        for (const auto& spec : in.reductions)
            reds.push_back(reduction_section(in, spec, pde, syms, params, warnings, probabilistic));
        j["reductions"] = reds;
    } catch (const cls::ConsistencyError& e) {
        j["error"] = std::string("internal inconsistency: ") + e.what();
        rep.exit_code = 3;
    }
    j["probabilistic"] = probabilistic;
    j["warnings"] = warnings;
    return rep;
}

std::string Report::json_text() const { return json.dump(2) + "\n"; }

namespace {

std::string str(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string Report::text() const {
    const auto& j = json;
    std::string o;
    auto line = [&](const std::string& s) { o += s + "\n"; };
    line("Analysis: " + str(j["name"]));
    line("Chart: " + join(j["chart"].get<std::vector<std::string>>(), " "));
    for (const auto& [k, v] : j["params"].items()) line("Parameter " + k + " = " + (v.is_null() ? "(symbolic)" : str(v)));
    line("Equation: " + str(j["equation"]["text"]));
    if (j.contains("conformal_algebra")) {
        const auto& c = j["conformal_algebra"];
        std::string cls;
        for (const auto& [k, v] : c["classes"].items()) cls += (cls.empty() ? "" : ", ") + str(v) + " " + k;
        line("");
        line("Conformal algebra: dimension " + str(c["dimension"]) + (cls.empty() ? "" : " (" + cls + ")"));
        for (const auto& v : c["vectors"])
            line("  " + str(v["name"]) + " [" + str(v["class"]) + ", psi = " + str(v["psi"]) + "]");
        for (const auto& v : c["rejected"]) line("  rejected " + str(v["name"]) + ": " + str(v["reason"]));
    }
    if (j.contains("symmetries")) {
        line("");
        line("Symmetries (" + str(j["symmetries"]["count"]) + " non-trivial, plus u d_u and b d_u):");
        for (const auto& g : j["symmetries"]["generators"]) line("  " + str(g["name"]) + " = " + str(g["text"]));
        for (const auto& r : j["symmetries"]["rejected"]) line("  rejected " + str(r["name"]) + ": " + str(r["reason"]));
    }
    if (j.contains("commutators") && !j["commutators"].is_null()) {
        line("");
        line("Commutators (nonzero):");
        for (const auto& s : j["commutators"]["nonzero"]) line("  " + str(s));
    }
    if (j.contains("reductions")) {
        for (const auto& r : j["reductions"]) {
            line("");
            line("Reduction by " + str(r["symmetry"]) + " (" + str(r["label"]) + ") via " +
                 join(r["via"].get<std::vector<std::string>>()) +
                 (r["then"].empty() ? "" : ", then " + join(r["then"].get<std::vector<std::string>>())));
            line("  invariant coordinate dropped: " + str(r["s"]) + ", mu = " + str(r["mu"]));
            line("  reduced equation: " + str(r["reduced_equation"]["text"]));
            if (r.contains("expected_equation"))
                line("  expected equation: " + str(r["expected_equation"]["verdict"]));
            if (!r["laplace_form"].is_null()) {
                const auto& lf = r["laplace_form"];
                std::string m;
                for (const auto& [k, v] : lf["metric"].items()) m += (m.empty() ? "" : ", ") + k + ": " + str(v);
                line("  Laplace form: gauge " + str(lf["gauge"]) + ", metric {" + m + "}, potential " +
                     str(lf["potential"]) + ", Ricci scalar " + str(lf["ricci_scalar"]));
            }
            if (r.contains("proper_ckv_filter"))
                for (const auto& f : r["proper_ckv_filter"])
                    line("  filter " + str(f["name"]) + ": " + (f["accepted"].get<bool>() ? "accepted" : "rejected") +
                         " (" + str(f["reason"]) + ")");
            for (const auto& s : r["symmetries"]) {
                std::string src = s.contains("source") ? " from " + str(s["source"]) : "";
                line("  " + str(s["tag"]) + src + ": " + str(s["text"]));
            }
            auto t2 = r["typeii"].get<std::vector<std::string>>();
            line("  TypeII: " + (t2.empty() ? std::string("none") : join(t2)));
            if (r.contains("expected_typeii")) {
                const auto& x = r["expected_typeii"];
                line("  expected TypeII: " + str(x["verdict"]) +
                     (x.contains("surplus") ? ", surplus " + join(x["surplus"].get<std::vector<std::string>>()) : "") +
                     (x.contains("missing") ? ", missing " + join(x["missing"].get<std::vector<std::string>>()) : ""));
            }
        }
    }
    if (j.contains("error")) {
        line("");
        line("ERROR: " + str(j["error"]));
    }
    if (!j["warnings"].empty()) {
        line("");
        line("Warnings:");
        for (const auto& w : j["warnings"]) line("  " + str(w));
    }
    return o;
}

}  // namespace hidsym::cli
