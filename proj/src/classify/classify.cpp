#include "hidsym/classify.hpp"

namespace hidsym::cls {

std::string to_string(Tag t) {
    switch (t) {
        case Tag::Inherited:
            return "Inherited";
        case Tag::TypeII:
            return "TypeII";
        case Tag::Trivial:
            return "Trivial";
    }
    return "TypeII";
}

std::vector<const SymmetryProvenance*> ReducedAnalysis::with_tag(Tag t) const {
    std::vector<const SymmetryProvenance*> out;
    for (const auto& e : entries)
        if (e.tag == t) out.push_back(&e);
    return out;
}

namespace {

bool is_const(const Expr& e, const std::vector<std::string>& coords) {
    for (const auto& x : coords)
        if (sym::depends_on(e, x)) {
            auto d = sym::diff(e, x);
            if (!d.is_zero() && !sym::is_zero(d).zero()) return false;
        }
    return true;
}

bool geometric_part_zero(const SymmetryGenerator& X) {
    for (const auto& c : X.xi)
        if (!c.is_zero() && !sym::is_zero(c).zero()) return false;
    return true;
}

}  // namespace

std::vector<FilterVerdict> proper_ckv_filter(const geom::Metric& h, const std::vector<conf::ConformalVector>& catalog,
                                             const Expr& V) {
    std::vector<FilterVerdict> out;
    const std::size_t n = h.dim();
    const auto& coords = h.chart().coords;
    std::optional<Expr> R;
    Expr ricci = geom::ricci_scalar(h);
    if (is_const(ricci, coords)) R = ricci;
    for (const auto& v : catalog) {
        FilterVerdict f;
        f.name = v.name;
        f.cls = v.cls;
        Expr lap = geom::laplacian(h, v.psi);
        Expr cond = geom::apply(coords, v.xi, V) + Expr(2) * v.psi * V;
        if (n > 2 && v.cls == conf::CkvClass::Proper) cond -= Expr(mpq_class(2 - static_cast<long>(n), 2)) * lap;
        f.residual = sym::simplify(cond);
        auto z = f.residual.is_zero() ? sym::ZeroResult{sym::ZeroState::Zero, false} : sym::is_zero(f.residual);
        f.accepted = z.zero();
        if (f.accepted)
            f.reason = v.cls == conf::CkvClass::Proper ? "admissible proper CKV"
                                                        : conf::to_string(v.cls) + " satisfies the condition";
        else
            f.reason = std::string(V.is_zero() ? "Laplacian of psi" : "potential condition") +
                       (z.unknown() ? " undecided: " : " does not vanish: ") + sym::render(f.residual);
        if (R && v.cls == conf::CkvClass::Proper) {
            // psi_;ab = -R psi g_ab / (n (n-1)) for these spaces with this Ricci sign.
            Expr d = sym::simplify(lap + *R * v.psi / Expr(static_cast<long>(n - 1)));
            f.curvature_check = d.is_zero() || sym::is_zero(d).zero();
        }
        out.push_back(std::move(f));
    }
    return out;
}

bool in_span_mod_u(const SymmetryGenerator& target, const std::vector<SymmetryGenerator>& gens) {
    std::vector<SymmetryGenerator> basis = gens;
    basis.push_back(lie::u_scaling(target.xi.size()));
    return alg::express_in_span(target, basis).coefficients.has_value();
}

ReducedAnalysis classify_reduced(const geom::Chart& original_chart, const std::vector<SymmetryGenerator>& original,
                                 const red::ReductionResult& r, const std::vector<Candidate>& candidates,
                                 const ClassifyOptions& opt) {
    ReducedAnalysis out;
    const auto& pde = r.reduced;
    const auto& coords = pde.chart.coords;
    const std::size_t n = coords.size();

    // Both checks on every generator; they must agree.
    auto verify = [&](const SymmetryGenerator& X, std::string* why) {
        auto a = lie::check_linear_pde_symmetry(pde, X);
        auto b = lie::verify_by_prolongation(pde, X);
        ++out.checks;
        out.probabilistic = out.probabilistic || a.probabilistic || b.probabilistic;
        if (a.ok() != b.ok()) {
            if (a.satisfied == sym::ZeroState::Unknown || b.satisfied == sym::ZeroState::Unknown) {
                out.notes.push_back("zero test undecided while checking " + X.name);
                if (why) *why = "undecided";
                return false;
            }
            throw ConsistencyError("determining equations and prolongation disagree on " + X.name);
        }
        if (!a.ok() && why) *why = a.residuals.empty() ? "not a symmetry" : a.residuals.front();
        return a.ok();
    };

    // 1. Projections of the normalizer.
    std::vector<SymmetryProvenance> projections;
    for (const auto& Y : original) {
        if (Y.is_trivial()) continue;
        auto nt = alg::normalizer_test(original_chart.coords, r.used, Y);
        if (!nt.in_normalizer) continue;
        auto p = red::project(Y, original_chart, r);
        if (!p.generator) {
            out.not_projected.push_back(Y.name + ": " + p.reason);
            continue;
        }
        if (geometric_part_zero(*p.generator)) continue;
        std::string why;
        if (!verify(*p.generator, &why))
            throw ConsistencyError("projection of " + Y.name + " is not a symmetry of the reduced equation: " + why);
        projections.push_back({*p.generator, Tag::Inherited, Y.name, "projection of " + Y.name});
    }

    // 2. Candidates.
    std::vector<SymmetryGenerator> pool;
    auto consider = [&](const SymmetryGenerator& X) {
        std::string why;
        if (verify(X, &why))
            pool.push_back(X);
        else
            out.rejected.push_back({X.name, why});
    };
    std::vector<conf::ConformalVector> fixture_ckvs;
    for (const auto& c : candidates) {
        if (c.xi.size() != n) throw red::ReductionError("candidate " + c.name + " has the wrong number of components");
        if (c.eta) {
            // eta = a w + b
            SymmetryGenerator X;
            X.name = c.name;
            X.xi = c.xi;
            X.a = sym::diff(*c.eta, pde.field);
            X.b = sym::simplify(*c.eta - X.a * Expr::symbol(pde.field));
            if (sym::depends_on(X.a, pde.field))
                throw red::ReductionError("candidate " + c.name + " is not linear in " + pde.field);
            consider(X);
            continue;
        }
        if (!r.laplace) {
            out.rejected.push_back({c.name, "reduced equation has no Laplace form to read the vector as a CKV"});
            continue;
        }
        auto cl = conf::classify(r.laplace->metric, c.xi, c.name);
        if (cl.verdict != conf::Verdict::Conformal) {
            out.rejected.push_back({c.name, "not a CKV of the reduced metric: " + cl.reason});
            continue;
        }
        fixture_ckvs.push_back(*cl.vector);
    }
    if (r.laplace && !fixture_ckvs.empty()) {
        out.filter = proper_ckv_filter(r.laplace->metric, fixture_ckvs, r.laplace->potential);
        for (std::size_t k = 0; k < fixture_ckvs.size(); ++k) {
            if (!out.filter[k].accepted) {
                out.rejected.push_back({fixture_ckvs[k].name, out.filter[k].reason});
                continue;
            }
            consider(lie::generator_for(r.laplace->metric, fixture_ckvs[k]));
        }
    }
    if (opt.ansatz) {
        if (r.laplace) {
            try {
                auto ckvs = conf::solve_ckv_ansatz(r.laplace->metric, opt.degree);
                for (auto& v : ckvs) v.name = "ckv:" + v.name;
                auto syms = r.laplace->potential.is_zero()
                                ? lie::laplace_symmetries(r.laplace->metric, ckvs)
                                : lie::klein_gordon_symmetries(r.laplace->metric, r.laplace->potential, ckvs);
                for (const auto& X : syms.generators)
                    if (!X.is_trivial()) consider(X);
            } catch (const conf::ConformalError& e) {
                out.notes.push_back(std::string("CKV ansatz skipped: ") + e.what());
            }
        }
        try {
            auto syms = lie::solve_symmetry_ansatz(pde, opt.degree);
            for (auto& X : syms) {
                X.name = "pde:" + X.name;
                consider(X);
            }
        } catch (const std::exception& e) {
            out.notes.push_back(std::string("symmetry ansatz skipped: ") + e.what());
        }
    }

    // 3. Tags: projections first, then independent candidates.
    std::vector<SymmetryGenerator> inherited, basis;
    for (auto& p : projections) {
        if (in_span_mod_u(p.generator, basis)) continue;
        inherited.push_back(p.generator);
        basis.push_back(p.generator);
        out.entries.push_back(std::move(p));
    }
    for (const auto& X : pool) {
        if (in_span_mod_u(X, basis)) continue;
        basis.push_back(X);
        out.entries.push_back({X, Tag::TypeII, "", ""});
    }
    auto u = lie::u_scaling(n);
    out.entries.push_back({u, Tag::Trivial, "", "linearity"});
    auto b = lie::generic_solution(n);
    out.entries.push_back({b, Tag::Trivial, "", "linear superposition"});
    return out;
}

}  // namespace hidsym::cls
