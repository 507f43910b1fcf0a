#include "hidsym/sym/zero.hpp"

#include <cmath>
#include <random>

#include "internal.hpp"

namespace hidsym::sym {

using namespace detail;

ZeroTestConfig& default_zero_config() {
    static ZeroTestConfig cfg;
    return cfg;
}

std::string to_string(ZeroState s) {
    switch (s) {
        case ZeroState::Zero:
            return "zero";
        case ZeroState::NonZero:
            return "nonzero";
        case ZeroState::Unknown:
            return "unknown";
    }
    return "unknown";
}

namespace {

bool only_symbols(const Poly& p) {
    for (const auto& t : p.terms())
        for (const auto& f : t.mono)
            if (f.atom->kind != AtomKind::Symbol) return false;
    return true;
}

// Random rational with numerator and denominator at most 64 and magnitude in [1/5, 5].
long double sample_value(std::mt19937_64& rng, bool positive_only) {
    std::uniform_int_distribution<int> part(1, 64);
    std::uniform_int_distribution<int> coin(0, 1);
    while (true) {
        int p = part(rng), q = part(rng);
        if (5 * p < q || p > 5 * q) continue;
        long double v = static_cast<long double>(p) / static_cast<long double>(q);
        if (!positive_only && coin(rng)) v = -v;
        return v;
    }
}

}  // namespace

ZeroResult is_zero(const Expr& e, const ZeroTestConfig& cfg) {
    if (e.is_zero()) return {ZeroState::Zero, false};
    Poly n = trig_reduce(e.num());
    if (n.is_zero()) return {ZeroState::Zero, false};
    if (only_symbols(n)) return {ZeroState::NonZero, false};
    if (n.is_constant()) return {ZeroState::NonZero, false};

    std::set<std::string> syms = free_symbols(Expr::fraction(n, Poly(1)));
    for (const auto& s : free_symbols(Expr::fraction(e.den(), Poly(1)))) syms.insert(s);
    std::mt19937_64 rng(cfg.seed ^ (e.hash() * 0x9e3779b97f4a7c15ULL));

    int accepted = 0, failures = 0;
    bool all_small = true;
    while (accepted < cfg.samples) {
        if (failures > cfg.max_retries) return {ZeroState::Unknown, true};
        bool positive_only = failures > cfg.max_retries / 2;
        std::map<std::string, long double> point;
        for (const auto& s : syms) point[s] = sample_value(rng, positive_only);
        if (!e.den().is_one()) {
            auto [d, dmag] = evaluate_with_scale(e.den(), point);
            if (!std::isfinite(d) || !std::isfinite(dmag) || std::fabs(d) <= 1e-12L * dmag) {
                ++failures;
                continue;
            }
        }
        auto [v, mag] = evaluate_with_scale(n, point);
        if (!std::isfinite(v) || !std::isfinite(mag)) {
            ++failures;
            continue;
        }
        ++accepted;
        long double rel = mag > 0 ? std::fabs(v) / mag : 0.0L;
        if (rel > cfg.nonzero_tolerance) return {ZeroState::NonZero, true};
        if (rel >= cfg.zero_tolerance) all_small = false;
    }
    return {all_small ? ZeroState::Zero : ZeroState::Unknown, true};
}

}  // namespace hidsym::sym
