#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace telic {

enum class Base { nats, bits };

inline std::string to_string(Base b) { return b == Base::nats ? "nats" : "bits"; }

/// Non-negative divergence with an explicit unit. +infinity is a legal value
/// (absolute-continuity failure), not an error, so searches can rank
/// infeasible states.
struct DivergenceValue {
    double value = 0.0;
    Base base = Base::nats;

    static DivergenceValue from_nats(double nats, Base base = Base::nats) {
        if (base == Base::bits) return {nats / std::log(2.0), Base::bits};
        return {nats, Base::nats};
    }
    static DivergenceValue infinity(Base base = Base::nats) {
        return {std::numeric_limits<double>::infinity(), base};
    }

    double in_nats() const {
        return base == Base::nats ? value : value * std::log(2.0);
    }
    DivergenceValue in(Base target) const { return from_nats(in_nats(), target); }
    bool is_infinite() const { return std::isinf(value); }
};

/// d(c||q) = c log(c/q) + (1-c) log((1-c)/(1-q)), in nats.
/// Conventions: 0 log 0 = 0; mass on a q-null event gives +infinity.
inline double binary_kl(double c, double q) {
    double total = 0.0;
    if (c > 0.0) {
        if (q <= 0.0) return std::numeric_limits<double>::infinity();
        total += c * std::log(c / q);
    }
    if (c < 1.0) {
        if (q >= 1.0) return std::numeric_limits<double>::infinity();
        total += (1.0 - c) * std::log((1.0 - c) / (1.0 - q));
    }
    // Roundoff can leave a tiny negative residue when c == q.
    return total < 0.0 && total > -1e-12 ? 0.0 : total;
}

}  // namespace telic
