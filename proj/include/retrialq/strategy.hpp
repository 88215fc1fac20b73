#pragma once

#include "retrialq/errors.hpp"

namespace retrialq {

/// Which of the three observable queueing cases a threshold pair falls in.
/// case1: N-1 <= n0 <= n1, case2: N-1 <= n1 <= n0, case3: n1 < N-1 <= n0.
enum class CaseTag : int { case1 = 1, case2 = 2, case3 = 3 };

inline const char* case_name(CaseTag c) {
    switch (c) {
        case CaseTag::case1: return "case1";
        case CaseTag::case2: return "case2";
        case CaseTag::case3: return "case3";
    }
    return "?";
}

/// Classifies (n0, n1) against the case ordering. Ties n0 == n1 >= N-1 sit in
/// the overlap of cases 1 and 2 (the state spaces coincide); case1 wins.
inline CaseTag classify_case(int n_policy, int n0, int n1) {
    const int N = n_policy;
    if (n0 < N - 1)
        throw model_error(errc::bad_threshold, "n0 must be >= N-1 so the server can reactivate");
    if (n1 < 0) throw model_error(errc::bad_threshold, "n1 must be >= 0");
    if (n1 < N - 1) return CaseTag::case3;
    if (n0 <= n1) return CaseTag::case1;
    return CaseTag::case2;
}

/// Pure threshold pair: join in vacation phase iff orbit <= n0, in busy phase
/// iff orbit <= n1 (idle arrivals always join).
struct ThresholdStrategy {
    int n0 = 0;
    int n1 = 0;
    CaseTag case_tag = CaseTag::case1;

    ThresholdStrategy() = default;
    ThresholdStrategy(int n_policy, int n0_, int n1_)
        : n0(n0_), n1(n1_), case_tag(classify_case(n_policy, n0_, n1_)) {}

    friend bool operator==(const ThresholdStrategy&, const ThresholdStrategy&) = default;
};

}  // namespace retrialq
