#include "telic/gradient.hpp"

#include <cmath>

#include "telic/errors.hpp"

namespace telic {

double gradient_objective(const ParametricPolicy& p, const Goal& g, const TelicState& state) {
    return telic_distance(p.distribution(), g, state).in_nats();
}

std::vector<double> finite_difference_gradient(const ParametricPolicy& p, const Goal& g,
                                               const TelicState& state, double h) {
    std::vector<double> grad(p.theta.size(), 0.0);
    std::vector<double> theta = p.theta;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double saved = theta[i];
        theta[i] = saved + h;
        const double up = telic_distance(p.generator(theta), g, state).in_nats();
        theta[i] = saved - h;
        const double down = telic_distance(p.generator(theta), g, state).in_nats();
        theta[i] = saved;
        grad[i] = (up - down) / (2.0 * h);
        if (!std::isfinite(grad[i])) {
            throw GradientOverflowError("component " + std::to_string(i));
        }
    }
    return grad;
}

ParametricPolicy policy_gradient_step(const ParametricPolicy& p, const Goal& g,
                                      const TelicState& state, double eta, double h) {
    if (eta <= 0.0) throw TelicError("step size must be positive");
    const double objective = gradient_objective(p, g, state);
    if (!std::isfinite(objective)) throw DivergentStartError();
    if (objective == 0.0) return p;  // already in the state, projection onto self
    const std::vector<double> grad = finite_difference_gradient(p, g, state, h);
    ParametricPolicy next = p;
    for (std::size_t i = 0; i < next.theta.size(); ++i) {
        next.theta[i] -= eta * grad[i];
    }
    return next;
}

}  // namespace telic
