#pragma once

#include <stdexcept>
#include <string>

namespace retrialq {

enum class errc {
    non_positive_rate,
    reward_too_small,
    bad_threshold,
    case_mismatch,
    degenerate_threshold,
    out_of_domain,
    resonant_f,
    singular_d1,
    unstable,
    zero_arrival,
    empty_feasible_set,
    insufficient_samples,
    bad_config,
};

/// Exception carrying a machine-checkable error code next to the message.
class model_error : public std::runtime_error {
public:
    model_error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::non_positive_rate: return "NonPositiveRate";
        case errc::reward_too_small: return "RewardTooSmall";
        case errc::bad_threshold: return "BadThreshold";
        case errc::case_mismatch: return "CaseMismatch";
        case errc::degenerate_threshold: return "DegenerateThreshold";
        case errc::out_of_domain: return "OutOfDomain";
        case errc::resonant_f: return "ResonantF";
        case errc::singular_d1: return "SingularD1";
        case errc::unstable: return "Unstable";
        case errc::zero_arrival: return "ZeroArrival";
        case errc::empty_feasible_set: return "EmptyFeasibleSet";
        case errc::insufficient_samples: return "InsufficientSamples";
        case errc::bad_config: return "BadConfig";
    }
    return "UnknownError";
}

}  // namespace retrialq
