#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hidsym/algebra.hpp"
#include "hidsym/reduction.hpp"

namespace hidsym::cls {

using lie::SymmetryGenerator;
using sym::Expr;

// A projection that is not a symmetry of the reduced equation, or a
// disagreement between the two symmetry checks: always a bug upstream.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Tag { Inherited, TypeII, Trivial };
std::string to_string(Tag t);

struct SymmetryProvenance {
    SymmetryGenerator generator;  // on the reduced chart
    Tag tag = Tag::TypeII;
    std::string source;  // original generator for Inherited
    std::string note;
};

struct FilterVerdict {
    std::string name;
    conf::CkvClass cls = conf::CkvClass::KV;
    bool accepted = false;
    std::string reason;
    Expr residual;
    // Delta psi == -R psi / (n - 1) when the Ricci scalar of h is constant.
    std::optional<bool> curvature_check;
};

// Admission test for each CKV of h (generator condition of the Laplace or Klein-Gordon equation); V is the Klein-Gordon potential (zero for Laplace).
std::vector<FilterVerdict> proper_ckv_filter(const geom::Metric& h, const std::vector<conf::ConformalVector>& catalog,
                                             const Expr& V = Expr());

// A candidate symmetry of the reduced equation. Without `eta` the vector is
// read as a CKV of the reduced metric and its generator follows from the
// Laplace form; otherwise eta = a w + b is given explicitly.
struct Candidate {
    std::string name;
    geom::Vector xi;
    std::optional<Expr> eta;
};

struct ReducedAnalysis {
    std::vector<SymmetryProvenance> entries;
    std::vector<lie::Rejection> rejected;
    std::vector<FilterVerdict> filter;      // fixture CKVs run through the filter
    std::vector<std::string> not_projected;  // normalizer elements with s-dependent images
    std::vector<std::string> notes;
    std::size_t checks = 0;  // generators run through both symmetry checks
    bool probabilistic = false;

    std::vector<const SymmetryProvenance*> with_tag(Tag t) const;
};

struct ClassifyOptions {
    int degree = 2;
    bool ansatz = true;
};

// Projects the normalizer of the used symmetry, collects candidate reduced
// symmetries (projections, fixture candidates, polynomial ansatz), verifies
// each with both symmetry checks and tags them.
ReducedAnalysis classify_reduced(const geom::Chart& original_chart, const std::vector<SymmetryGenerator>& original,
                                 const red::ReductionResult& r, const std::vector<Candidate>& candidates,
                                 const ClassifyOptions& opt = {});

// Whether target lies in the span of gens and u d_u (rational coefficients).
bool in_span_mod_u(const SymmetryGenerator& target, const std::vector<SymmetryGenerator>& gens);

}  // namespace hidsym::cls
