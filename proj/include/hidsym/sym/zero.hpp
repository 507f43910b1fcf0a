#pragma once

#include <cstdint>
#include <string>

#include "hidsym/sym/expr.hpp"

namespace hidsym::sym {

enum class ZeroState { Zero, NonZero, Unknown };

struct ZeroResult {
    ZeroState state = ZeroState::Unknown;
    bool probabilistic = false;  // decided by numerical probing

    bool zero() const { return state == ZeroState::Zero; }
    bool nonzero() const { return state == ZeroState::NonZero; }
    bool unknown() const { return state == ZeroState::Unknown; }
};

struct ZeroTestConfig {
    int samples = 12;
    std::uint64_t seed = 20240601;
    long double zero_tolerance = 1e-10L;
    long double nonzero_tolerance = 1e-6L;
    int max_retries = 200;
};

// Process-wide defaults; set once (e.g. from command-line options) before any
// worker threads start.
ZeroTestConfig& default_zero_config();

// Tri-state zero test. Exact after normalization and the Pythagorean
// rewrites; otherwise decided by evaluating the numerator at random rational
// points, relative to the magnitude of its individual terms.
ZeroResult is_zero(const Expr& e, const ZeroTestConfig& cfg = default_zero_config());

std::string to_string(ZeroState s);

}  // namespace hidsym::sym
