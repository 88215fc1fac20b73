#pragma once

#include <cmath>
#include <string>

#include "retrialq/errors.hpp"

namespace retrialq {

/// Server phase M(t). Integer codes are part of the model contract.
enum class ServerPhase : int { vacation = 0, busy = 1, idle = 2 };

inline const char* phase_name(ServerPhase p) {
    switch (p) {
        case ServerPhase::vacation: return "vacation";
        case ServerPhase::busy: return "busy";
        case ServerPhase::idle: return "idle";
    }
    return "?";
}

/// The seven scalars defining one model instance.
///
/// Rates are per unit time; reward/wait_cost are utility units. The reward
/// condition R > C/mu must hold or every customer would balk even at an idle
/// server.
struct ModelParams {
    double lambda = 0;     // arrival rate
    double mu = 0;         // service rate
    double theta = 0;      // orbit search (constant retrial) rate
    double xi = 0;         // vacation completion rate
    int n_policy = 1;      // reactivation threshold N
    double reward = 0;     // R
    double wait_cost = 0;  // C
};

/// Validates invariants and returns the params unchanged.
/// Throws model_error with codes NonPositiveRate, RewardTooSmall, BadThreshold.
inline ModelParams validate(const ModelParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v))
            throw model_error(errc::non_positive_rate,
                              std::string(name) + " must be strictly positive");
    };
    positive(p.lambda, "lambda");
    positive(p.mu, "mu");
    positive(p.theta, "theta");
    positive(p.xi, "xi");
    positive(p.reward, "reward");
    positive(p.wait_cost, "wait_cost");
    if (p.n_policy < 1)
        throw model_error(errc::bad_threshold, "n_policy must be >= 1");
    if (!(p.reward > p.wait_cost / p.mu))
        throw model_error(errc::reward_too_small,
                          "reward condition R > C/mu violated");
    return p;
}

/// System state (phase, orbit). (idle, 0) is unreachable: the server only
/// searches while the orbit is non-empty.
struct SystemState {
    ServerPhase phase = ServerPhase::vacation;
    int orbit = 0;

    SystemState() = default;
    SystemState(ServerPhase ph, int n) : phase(ph), orbit(n) {
        if (n < 0) throw model_error(errc::out_of_domain, "orbit must be >= 0");
        if (ph == ServerPhase::idle && n == 0)
            throw model_error(errc::out_of_domain, "(idle, 0) is not a reachable state");
    }

    friend bool operator==(const SystemState&, const SystemState&) = default;
};

}  // namespace retrialq
