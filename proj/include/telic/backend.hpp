#pragma once

#include <memory>
#include <string>
#include <vector>

#include "telic/goal.hpp"

namespace telic {

/// Opaque policy/distribution coordinates. The discrete backend stores a mass
/// vector over a fixed support; the Gaussian backend stores (mu, sigma).
using BackendPoint = std::vector<double>;

struct BackendProjection {
    BackendPoint target;
    double divergence_nats = 0.0;
    bool attainable = true;
    std::string note;
};

/// What the reachability and refinement algorithms need from a concrete
/// setting. Implementations must be deterministic; complexity(p, p) == 0,
/// interpolate(a, b, 0) == a and interpolate(a, b, 1) == b, and classify
/// always returns one of states().
class Backend {
public:
    virtual ~Backend() = default;

    virtual std::vector<TelicState> states() const = 0;
    virtual TelicState classify(const BackendPoint& p) const = 0;

    /// Information projection of `from` onto the state: the in-state point of
    /// minimum divergence, with that divergence (the telic distance).
    virtual BackendProjection project(const BackendPoint& from, const TelicState& s) const = 0;

    /// Best effort toward the state under a complexity budget: an in-state
    /// point of minimal divergence from `from` when one is within budget,
    /// otherwise the budget-limited point closest to the state.
    virtual BackendPoint constrained_improve(const BackendPoint& from, const TelicState& s,
                                             double delta_nats) const = 0;

    /// Update complexity KL(a || b) in nats (cost of moving b -> a).
    virtual double complexity(const BackendPoint& a, const BackendPoint& b) const = 0;

    /// Point on the segment from a to b; the interpolation space is the
    /// backend's choice (distribution space / parameter space).
    virtual BackendPoint interpolate(const BackendPoint& a, const BackendPoint& b,
                                     double t) const = 0;

    /// Insert the intermediate state anchored at `midpoint` (sensitivity
    /// `epsilon`), ranked between the default state and `target`. Mutates the
    /// backend's goal; returns the new state.
    virtual TelicState insert_intermediate_state(const BackendPoint& midpoint, double epsilon,
                                                 const TelicState& target) = 0;

    virtual std::unique_ptr<Backend> clone() const = 0;
    virtual std::string describe_point(const BackendPoint& p) const = 0;
};

}  // namespace telic
