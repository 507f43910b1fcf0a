#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hidsym/conformal.hpp"
#include "hidsym/liesym.hpp"

namespace hidsym::red {

using geom::Chart;
using geom::LinearPDE;
using geom::Metric;
using lie::SymmetryGenerator;
using sym::Expr;

class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Change of coordinates on a subset of a chart: old = forward(new), new =
// inverse(old). `drop` names the new coordinate along which a symmetry is
// straightened (empty for a plain chart change); `phase` is the function
// Phi_0 of the similarity substitution u = exp(mu Phi_0) w.
struct CoordinateMap {
    std::string name;
    std::vector<std::string> old_coords;
    std::vector<std::string> new_coords;
    std::map<std::string, Expr> forward;
    std::map<std::string, Expr> inverse;
    std::string drop;
    Expr phase;
    std::string note;
    bool identity = false;  // straighten along whichever coordinate the symmetry points
};

// Parses the text form
//   map <name>
//     old a b
//     new c d
//     drop d            (optional)
//     phase <expr>      (optional, default: the dropped coordinate)
//     note <text>       (optional)
//     a = <expr in c, d>
//     c = <expr in a, b>
// Lines are already split; `line0` is used in error messages.
CoordinateMap parse_map(const std::vector<std::string>& lines, int line0 = 1);

// forward(inverse(x)) == x for every old coordinate; throws on a definite failure.
void validate_map(const CoordinateMap& m);

const std::vector<CoordinateMap>& registry();
const CoordinateMap& registry_map(const std::string& name);

Chart apply_chart(const Chart& c, const CoordinateMap& m);
LinearPDE transform_pde(const LinearPDE& pde, const CoordinateMap& m);
SymmetryGenerator push_forward(const SymmetryGenerator& X, const Chart& chart, const CoordinateMap& m);

struct Straightening {
    std::vector<CoordinateMap> maps;  // identity resolved to the concrete coordinate
    Chart chart;                      // chart after all maps
    std::string s;
    Expr phase;
    Expr scale;  // X(s) in the new chart
    Expr mu;
    Expr extra_a;  // constant c added to the used symmetry when mu is overridden
    SymmetryGenerator pushed;
};

Straightening straighten(const SymmetryGenerator& X, const Chart& chart, const std::vector<CoordinateMap>& maps,
                         const std::optional<Expr>& mu_override = std::nullopt);

struct LaplaceForm {
    Metric metric;
    Expr potential;
    Expr gauge;
};

struct ReductionResult {
    SymmetryGenerator used;  // including any added multiple of u d_u
    Straightening st;
    std::vector<CoordinateMap> post_maps;
    Expr s0;
    LinearPDE reduced;  // field "w"
    std::optional<LaplaceForm> laplace;
    bool probabilistic = false;
};

// Gauge, drop s-derivatives, check s-independence, evaluate at s = s0 and
// strip common factors; then apply the post maps.
ReductionResult reduce(const LinearPDE& pde, const SymmetryGenerator& X, const std::vector<CoordinateMap>& maps,
                       const std::vector<CoordinateMap>& post_maps = {},
                       const std::optional<Expr>& mu_override = std::nullopt);

// Divides all coefficients by their common exp-atom content and polynomial gcd.
LinearPDE strip_common_factors(const LinearPDE& pde);

std::optional<LaplaceForm> as_laplace_form(const LinearPDE& pde, const std::optional<Expr>& hint = std::nullopt);

// Projection of an original generator to the reduced chart, or nullopt with a
// reason when its components depend on s.
struct Projection {
    std::optional<SymmetryGenerator> generator;
    std::string reason;
};
Projection project(const SymmetryGenerator& Y, const Chart& original, const ReductionResult& r);

// Coefficient-wise comparison of two equations up to a constant factor.
bool same_equation(const LinearPDE& a, const LinearPDE& b);

}  // namespace hidsym::red
