#pragma once

#include <cmath>
#include <string>

#include "retrialq/errors.hpp"
#include "retrialq/params.hpp"
#include "retrialq/strategy.hpp"

namespace retrialq {

/// Slope of the sojourn time in the orbit position: each position ahead of a
/// waiting customer costs (lambda + theta + mu) / (mu * theta) on average.
inline double sojourn_slope(const ModelParams& p) {
    return (p.lambda + p.theta + p.mu) / (p.mu * p.theta);
}

/// Mean residual sojourn time T(i, n) of a customer at orbit position n while
/// the server is in phase i. Domain: vacation needs n >= N, busy n >= 0
/// (position 0 = in service), idle n >= 1.
inline double sojourn_time(const ModelParams& p, ServerPhase phase, int n) {
    const double slope = sojourn_slope(p);
    switch (phase) {
        case ServerPhase::vacation:
            if (n < p.n_policy)
                throw model_error(errc::out_of_domain,
                                  "T(vacation, n) requires n >= N = " + std::to_string(p.n_policy));
            return 1.0 / p.xi + n * slope;
        case ServerPhase::busy:
            if (n < 0) throw model_error(errc::out_of_domain, "T(busy, n) requires n >= 0");
            return n * slope + 1.0 / p.mu;
        case ServerPhase::idle:
            if (n < 1) throw model_error(errc::out_of_domain, "T(idle, n) requires n >= 1");
            return n * slope;
    }
    throw model_error(errc::out_of_domain, "bad phase");
}

/// Equilibrium balking thresholds. A customer at position n joins iff the net
/// benefit R - C*T(i,n) is >= 0; ties join. n_e(0) applies in the vacation
/// phase, n_e(1) in the busy phase.
///
/// Throws DegenerateThreshold when n_e(0) < N-1: equilibrium joiners could
/// never reactivate the server and the case analysis does not apply.
inline ThresholdStrategy equilibrium_thresholds(const ModelParams& p) {
    const double scale = p.mu * p.theta / (p.lambda + p.theta + p.mu);
    const double rc = p.reward / p.wait_cost;
    const int ne0 = static_cast<int>(std::floor(scale * (rc - 1.0 / p.xi)));
    const int ne1 = static_cast<int>(std::floor(scale * (rc - 1.0 / p.mu)));
    if (ne0 < p.n_policy - 1)
        throw model_error(errc::degenerate_threshold,
                          "equilibrium vacation threshold n_e(0)=" + std::to_string(ne0) +
                              " < N-1=" + std::to_string(p.n_policy - 1));
    return ThresholdStrategy(p.n_policy, ne0, ne1);  // ne1 >= 0 since R > C/mu
}

}  // namespace retrialq
