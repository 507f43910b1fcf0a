#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hidsym/sym/expr.hpp"

namespace hidsym::testing {

struct CorpusCase {
    std::string label;  // template name
    sym::Expr expr;
};

// Expressions that vanish identically: polynomial and rational identities,
// Pythagorean and addition-theorem identities, exp/ln and derivative rules,
// over random polynomial arguments in x, y, z.
std::vector<CorpusCase> identity_corpus(std::size_t n, std::uint64_t seed);

// The same identities plus a small nonzero perturbation each.
std::vector<CorpusCase> perturbed_corpus(std::size_t n, std::uint64_t seed);

}  // namespace hidsym::testing
