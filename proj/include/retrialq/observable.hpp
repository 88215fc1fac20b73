#pragma once

#include <cmath>
#include <ostream>
#include <vector>

#include "retrialq/errors.hpp"
#include "retrialq/params.hpp"
#include "retrialq/strategy.hpp"

namespace retrialq {

/// Closed-form coefficients of the busy-row solution, in probability units
/// scaled by pi_{1,0} (pivot = 1).
///
/// Segment map (position n in the busy row):
///   [0, min(N-1, n1+1)]           A1 + A2 * F^n
///   [n1+2, N-1]                   (lambda+theta)/theta            (case 3 only)
///   [N, min(n0, n1+1)]            B2 * F^(n-N) + D1 * a^(n-N+1)   (busy joins)
///   [max(N, n1+2), n0]            psi(n) = c3 * a^(n-N)           (busy balks)
///   n0+1                          terminal step; E2 holds the value there
///   [n0+2, n1+1]                  E2 * F^(n-n0-1)                 (case 1 tail)
/// where a = lambda/(lambda+xi) and c3 = lambda(lambda+theta+xi) /
/// (theta(lambda+xi)). The shifted segment carries no constant term; B2 and
/// D1 are anchored at n = N so no large powers of F or a are ever formed.
struct CaseCoefficients {
    double F = 0;   // root lambda(lambda+theta)/(theta mu)
    double a = 0;   // vacation decay lambda/(lambda+xi)
    double A1 = 0;
    double A2 = 0;
    double B2 = 0;  // coefficient of F^(n-N) on the joined segment
    double D1 = 0;  // coefficient of a^(n-N+1) on the joined segment
    double E2 = 0;  // busy-row value at n = n0+1 (tail anchor)
    double c3 = 0;

    double psi(int n, int n_policy) const {
        return c3 * std::pow(a, n - n_policy);
    }
};

/// Case-tagged stationary probability table over (phase, orbit).
struct StationaryDistribution {
    CaseTag case_tag = CaseTag::case1;
    std::vector<double> vac;   // pi_{0,n}, n = 0..n0+1
    std::vector<double> busy;  // pi_{1,n}, n = 0..b_top
    std::vector<double> idle;  // pi_{2,n}, n = 0..b_top (index 0 unused, zero)
    double pivot = 0;          // pi_{1,0}
    CaseCoefficients coeffs;   // scaled by pivot

    double prob(ServerPhase ph, int n) const {
        const std::vector<double>* row = nullptr;
        switch (ph) {
            case ServerPhase::vacation: row = &vac; break;
            case ServerPhase::busy: row = &busy; break;
            case ServerPhase::idle: row = &idle; break;
        }
        if (n < 0 || n >= static_cast<int>(row->size())) return 0.0;
        if (ph == ServerPhase::idle && n == 0) return 0.0;
        return (*row)[n];
    }

    double total() const {
        double s = 0, c = 0;
        auto acc = [&](double x) {  // Kahan
            double y = x - c, t = s + y;
            c = (t - s) - y;
            s = t;
        };
        for (double x : vac) acc(x);
        for (double x : busy) acc(x);
        for (size_t n = 1; n < idle.size(); ++n) acc(idle[n]);
        return s;
    }

    /// CSV export: phase,orbit,probability.
    void to_csv(std::ostream& os) const;
};

namespace detail {

// unnormalized rows with pivot pi_{1,0} = 1, long double throughout
struct ObsRows {
    std::vector<long double> p0, p1, p2;
    CaseCoefficients co;
};

inline ObsRows observable_rows(const ModelParams& p, int n0, int n1, CaseTag tag) {
    using R = long double;
    const int N = p.n_policy;
    const R lam = p.lambda, mu = p.mu, th = p.theta, xi = p.xi;
    const R F = lam * (lam + th) / (th * mu);
    const R a = lam / (lam + xi);
    if (std::abs(static_cast<double>(F) - 1.0) < 1e-9)
        throw model_error(errc::resonant_f,
                          "F = lambda(lambda+theta)/(theta mu) is 1 within 1e-9; perturb mu by ~1e-6 relative");
    if (std::abs(static_cast<double>(a - F)) < 1e-12 * std::max(static_cast<double>(a), static_cast<double>(F)))
        throw model_error(errc::singular_d1,
                          "(lambda+theta)(lambda+xi) = theta mu within tolerance; the geometric "
                          "particular solution is singular; perturb mu by ~1e-6 relative");

    const int v_top = n0 + 1;
    const int b_top = (tag == CaseTag::case1) ? n1 + 1 : n0 + 1;

    ObsRows out;
    auto& p0 = out.p0;
    auto& p1 = out.p1;
    auto& p2 = out.p2;
    p0.assign(v_top + 1, 0.0L);
    p1.assign(b_top + 1, 0.0L);
    p2.assign(b_top + 1, 0.0L);

    // vacation row: flat, geometric, terminal
    for (int n = 0; n <= std::min(N - 1, v_top); ++n) p0[n] = mu / lam;
    {
        R g = mu / lam;
        for (int n = N; n <= n0; ++n) {
            g *= a;
            p0[n] = g;
        }
        if (n0 + 1 <= v_top) p0[n0 + 1] = (mu / xi) * powl(a, n0 - N + 1);
    }

    // busy row
    const R A1 = (lam + th) / (th * (1.0L - F));
    const R A2 = 1.0L - A1;
    const R c3 = lam * (lam + th + xi) / (th * (lam + xi));
    const R d1 = c3 / (a - F);  // coefficient of a^(n-N+1)

    const int amax = std::min(N - 1, n1 + 1);
    {
        R Fn = 1.0L;
        for (int n = 0; n <= std::min(amax, b_top); ++n) {
            p1[n] = A1 + A2 * Fn;
            Fn *= F;
        }
    }
    for (int n = n1 + 2; n <= std::min(N - 1, b_top); ++n) p1[n] = (lam + th) / th;

    const int join_top = std::min(n0, n1 + 1);  // last index under the busy-join recurrence
    R b2 = 0.0L;
    if (n1 >= N - 1 && N <= join_top) {
        const R bridge = A1 + A2 * powl(F, N) - xi / (lam + xi);
        b2 = bridge - d1 * a;  // anchored at n = N
        R Fk = 1.0L, ak = a;
        for (int n = N; n <= std::min(join_top, b_top); ++n) {
            p1[n] = b2 * Fk + d1 * ak;
            Fk *= F;
            ak *= a;
        }
    }
    for (int n = std::max(N, n1 + 2); n <= std::min(n0, b_top); ++n)
        p1[n] = c3 * powl(a, n - N);

    if (n0 + 1 <= b_top) {
        const R step = (lam / th) * powl(a, n0 - N + 1);
        p1[n0 + 1] = (n1 >= n0) ? F * p1[n0] + step : step;
        R t = p1[n0 + 1];
        for (int n = n0 + 2; n <= b_top; ++n) {
            t *= F;
            p1[n] = t;
        }
    }

    // idle row from its local balance
    for (int n = 1; n <= b_top; ++n) {
        R add = (n >= N && n <= v_top) ? xi * p0[n] : 0.0L;
        p2[n] = (mu * p1[n] + add) / (lam + th);
    }

    out.co.F = static_cast<double>(F);
    out.co.a = static_cast<double>(a);
    out.co.A1 = static_cast<double>(A1);
    out.co.A2 = static_cast<double>(A2);
    out.co.B2 = static_cast<double>(b2);
    out.co.D1 = static_cast<double>(d1);
    out.co.E2 = (n0 + 1 <= b_top) ? static_cast<double>(p1[n0 + 1]) : 0.0;
    out.co.c3 = static_cast<double>(c3);
    return out;
}

inline StationaryDistribution stationary_observable(const ModelParams& p,
                                                    const ThresholdStrategy& st,
                                                    CaseTag expected) {
    validate(p);
    if (st.case_tag != expected)
        throw model_error(errc::case_mismatch,
                          std::string("strategy is ") + case_name(st.case_tag) + ", expected " +
                              case_name(expected));
    auto rows = observable_rows(p, st.n0, st.n1, st.case_tag);

    long double total = 0.0L, comp = 0.0L;
    auto acc = [&](long double x) {
        long double y = x - comp, t = total + y;
        comp = (t - total) - y;
        total = t;
    };
    for (auto x : rows.p0) acc(x);
    for (auto x : rows.p1) acc(x);
    for (auto x : rows.p2) acc(x);

    StationaryDistribution d;
    d.case_tag = st.case_tag;
    d.pivot = static_cast<double>(1.0L / total);
    d.coeffs = rows.co;
    auto scale = [&](const std::vector<long double>& src, std::vector<double>& dst) {
        dst.resize(src.size());
        for (size_t i = 0; i < src.size(); ++i)
            dst[i] = static_cast<double>(src[i] / total);
    };
    scale(rows.p0, d.vac);
    scale(rows.p1, d.busy);
    scale(rows.p2, d.idle);
    return d;
}

}  // namespace detail

/// Theorem-style closed forms, one per case ordering. All three share the same
/// segment evaluator; the case entry points only enforce the precondition.
inline StationaryDistribution stationary_case1(const ModelParams& p, const ThresholdStrategy& st) {
    return detail::stationary_observable(p, st, CaseTag::case1);
}
inline StationaryDistribution stationary_case2(const ModelParams& p, const ThresholdStrategy& st) {
    return detail::stationary_observable(p, st, CaseTag::case2);
}
inline StationaryDistribution stationary_case3(const ModelParams& p, const ThresholdStrategy& st) {
    return detail::stationary_observable(p, st, CaseTag::case3);
}

/// Dispatches on the strategy's case tag.
inline StationaryDistribution stationary_observable(const ModelParams& p,
                                                    const ThresholdStrategy& st) {
    return detail::stationary_observable(p, st, st.case_tag);
}

/// Holding-cost accounting for the social welfare rate.
///  - orbit:  C is charged on the mean orbit length (the formulas' sums).
///  - system: additionally charges the customer in service.
enum class WelfareCost { orbit, system };

/// Social benefit per time unit U_s(n0, n1) =
///   lambda R (1 - balking mass) - C * holding cost.
/// Balking states: (0, n0+1) always; busy states with n > n1.
inline double social_welfare_observable(const ModelParams& p, const ThresholdStrategy& st,
                                        WelfareCost cost = WelfareCost::orbit) {
    const auto d = stationary_observable(p, st);
    const int n0 = st.n0, n1 = st.n1;
    double balk = d.prob(ServerPhase::vacation, n0 + 1);
    if (st.case_tag == CaseTag::case1) {
        balk += d.prob(ServerPhase::busy, n1 + 1);
    } else {
        for (int n = n1 + 1; n <= n0 + 1; ++n) balk += d.prob(ServerPhase::busy, n);
    }
    double hold = 0, pbusy = 0;
    for (size_t n = 0; n < d.vac.size(); ++n) hold += static_cast<double>(n) * d.vac[n];
    for (size_t n = 0; n < d.busy.size(); ++n) {
        hold += static_cast<double>(n) * d.busy[n];
        pbusy += d.busy[n];
    }
    for (size_t n = 1; n < d.idle.size(); ++n) hold += static_cast<double>(n) * d.idle[n];
    if (cost == WelfareCost::system) hold += pbusy;
    return p.lambda * p.reward * (1.0 - balk) - p.wait_cost * hold;
}

inline void StationaryDistribution::to_csv(std::ostream& os) const {
    os << "phase,orbit,probability\n";
    auto dump = [&os](const char* name, const std::vector<double>& row, size_t first) {
        for (size_t n = first; n < row.size(); ++n)
            os << name << ',' << n << ',' << row[n] << '\n';
    };
    dump("vacation", vac, 0);
    dump("busy", busy, 0);
    dump("idle", idle, 1);
}

}  // namespace retrialq
