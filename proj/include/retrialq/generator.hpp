#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "retrialq/errors.hpp"
#include "retrialq/params.hpp"
#include "retrialq/strategy.hpp"

namespace retrialq {

/// Regime selector for build_generator.
struct ObservableRegime {
    ThresholdStrategy strategy;
};
struct UnobservableRegime {
    double lambda_bar = 0;
    int cap = 0;  // truncation level (inclusive)
};

/// Finite CTMC generator truncated (or naturally bounded) at some orbit level.
/// States are ordered lexicographically by (orbit, phase) to match the QBD
/// block partition. Rows are stored sparsely; each row sums to zero.
class TruncatedGenerator {
public:
    struct Entry {
        int col;
        double rate;  // off-diagonal >= 0, diagonal <= 0
    };

    TruncatedGenerator(std::vector<SystemState> states,
                       std::vector<std::vector<Entry>> rows, int truncation_orbit)
        : states_(std::move(states)), rows_(std::move(rows)), cap_(truncation_orbit) {
        index_.assign(3 * static_cast<size_t>(cap_ + 1), -1);
        for (size_t i = 0; i < states_.size(); ++i)
            index_[slot(states_[i])] = static_cast<int>(i);
    }

    size_t size() const { return states_.size(); }
    int truncation_orbit() const { return cap_; }
    const std::vector<SystemState>& states() const { return states_; }
    const std::vector<Entry>& row(size_t i) const { return rows_[i]; }

    int index_of(ServerPhase ph, int orbit) const {
        if (orbit < 0 || orbit > cap_) return -1;
        return index_[slot(ph, orbit)];
    }
    bool contains(ServerPhase ph, int orbit) const { return index_of(ph, orbit) >= 0; }

    double rate(size_t from, size_t to) const {
        for (const auto& e : rows_[from])
            if (e.col == static_cast<int>(to)) return e.rate;
        return 0.0;
    }

    double row_sum(size_t i) const {
        double s = 0;
        for (const auto& e : rows_[i]) s += e.rate;
        return s;
    }

    /// Max |col - row| over all entries; the solver uses it for band storage.
    int bandwidth() const {
        int b = 0;
        for (size_t i = 0; i < rows_.size(); ++i)
            for (const auto& e : rows_[i])
                b = std::max(b, std::abs(e.col - static_cast<int>(i)));
        return b;
    }

private:
    static size_t slot(ServerPhase ph, int orbit) {
        return 3 * static_cast<size_t>(orbit) + static_cast<size_t>(ph);
    }
    static size_t slot(const SystemState& s) { return slot(s.phase, s.orbit); }

    std::vector<SystemState> states_;
    std::vector<std::vector<Entry>> rows_;
    int cap_;
    std::vector<int> index_;
};

namespace detail {

struct GenBuilder {
    std::vector<SystemState> states;
    std::vector<std::vector<TruncatedGenerator::Entry>> rows;
    std::vector<int> idx;  // slot -> state index
    int cap;

    explicit GenBuilder(int cap_) : cap(cap_) { idx.assign(3 * static_cast<size_t>(cap + 1), -1); }

    void add_state(ServerPhase ph, int n) {
        idx[3 * static_cast<size_t>(n) + static_cast<size_t>(ph)] = static_cast<int>(states.size());
        states.emplace_back(ph, n);
        rows.emplace_back();
    }
    int at(ServerPhase ph, int n) const {
        return idx[3 * static_cast<size_t>(n) + static_cast<size_t>(ph)];
    }
    void add_rate(ServerPhase fp, int fn, ServerPhase tp, int tn, double r) {
        int from = at(fp, fn), to = at(tp, tn);
        rows[from].push_back({to, r});
    }
    TruncatedGenerator finish() {
        for (size_t i = 0; i < rows.size(); ++i) {
            double s = 0;
            for (const auto& e : rows[i]) s += e.rate;
            rows[i].push_back({static_cast<int>(i), -s});
        }
        return TruncatedGenerator(std::move(states), std::move(rows), cap);
    }
};

}  // namespace detail

/// Observable-case generator on the exact (finite) state space of the
/// declared case; no truncation error.
inline TruncatedGenerator build_generator(const ModelParams& p, const ObservableRegime& reg) {
    const auto& st = reg.strategy;
    if (st.case_tag != classify_case(p.n_policy, st.n0, st.n1))
        throw model_error(errc::case_mismatch, "strategy ordering does not match its case tag");
    const int N = p.n_policy, n0 = st.n0, n1 = st.n1;
    const int v_top = n0 + 1;
    const int b_top = (st.case_tag == CaseTag::case1) ? n1 + 1 : n0 + 1;
    const int i_top = b_top;
    const int cap = std::max(v_top, b_top);

    detail::GenBuilder g(cap);
    for (int n = 0; n <= cap; ++n) {
        if (n <= v_top) g.add_state(ServerPhase::vacation, n);
        if (n <= b_top) g.add_state(ServerPhase::busy, n);
        if (n >= 1 && n <= i_top) g.add_state(ServerPhase::idle, n);
    }
    for (int n = 0; n <= v_top; ++n) {
        if (n <= n0) g.add_rate(ServerPhase::vacation, n, ServerPhase::vacation, n + 1, p.lambda);
        if (n >= N) g.add_rate(ServerPhase::vacation, n, ServerPhase::idle, n, p.xi);
    }
    for (int n = 0; n <= b_top; ++n) {
        if (n <= n1) g.add_rate(ServerPhase::busy, n, ServerPhase::busy, n + 1, p.lambda);
        if (n == 0)
            g.add_rate(ServerPhase::busy, 0, ServerPhase::vacation, 0, p.mu);
        else
            g.add_rate(ServerPhase::busy, n, ServerPhase::idle, n, p.mu);
    }
    for (int n = 1; n <= i_top; ++n) {
        g.add_rate(ServerPhase::idle, n, ServerPhase::busy, n, p.lambda);
        g.add_rate(ServerPhase::idle, n, ServerPhase::busy, n - 1, p.theta);
    }
    return g.finish();
}

/// Unobservable-case generator truncated at orbit = cap (arrivals at the cap
/// are dropped). Use default_truncation_cap to pick cap from the tail bound.
inline TruncatedGenerator build_generator(const ModelParams& p, const UnobservableRegime& reg) {
    const double lb = reg.lambda_bar;
    const int N = p.n_policy, cap = reg.cap;
    if (lb < 0) throw model_error(errc::out_of_domain, "lambda_bar must be >= 0");
    if (cap < N + 1) throw model_error(errc::out_of_domain, "cap must exceed n_policy");

    detail::GenBuilder g(cap);
    for (int n = 0; n <= cap; ++n) {
        g.add_state(ServerPhase::vacation, n);
        g.add_state(ServerPhase::busy, n);
        if (n >= 1) g.add_state(ServerPhase::idle, n);
    }
    for (int n = 0; n <= cap; ++n) {
        if (n < cap) {
            g.add_rate(ServerPhase::vacation, n, ServerPhase::vacation, n + 1, lb);
            g.add_rate(ServerPhase::busy, n, ServerPhase::busy, n + 1, lb);
        }
        if (n >= N) g.add_rate(ServerPhase::vacation, n, ServerPhase::idle, n, p.xi);
        if (n == 0)
            g.add_rate(ServerPhase::busy, 0, ServerPhase::vacation, 0, p.mu);
        else
            g.add_rate(ServerPhase::busy, n, ServerPhase::idle, n, p.mu);
        if (n >= 1) {
            g.add_rate(ServerPhase::idle, n, ServerPhase::busy, n, lb);
            g.add_rate(ServerPhase::idle, n, ServerPhase::busy, n - 1, p.theta);
        }
    }
    return g.finish();
}

/// Smallest cap m with sp(R)^(m-N) < 1e-12, clamped to [N+10, 1e4].
/// sp(R) = max(lambda_bar/(lambda_bar+xi), F_bar).
inline int default_truncation_cap(const ModelParams& p, double lambda_bar) {
    double fbar = lambda_bar * (lambda_bar + p.theta) / (p.theta * p.mu);
    double sp = std::max(lambda_bar / (lambda_bar + p.xi), fbar);
    if (!(sp < 1.0)) throw model_error(errc::unstable, "spectral radius >= 1, no finite cap");
    int m = p.n_policy + static_cast<int>(std::ceil(std::log(1e-12) / std::log(sp)));
    return std::clamp(m, p.n_policy + 10, 10000);
}

/// Stationary distribution of the finite generator by state reduction
/// (GTH, subtraction-free), band-limited so large truncations stay cheap.
/// This is the numeric oracle for the closed forms.
inline std::vector<double> stationary_distribution(const TruncatedGenerator& gen) {
    const int n = static_cast<int>(gen.size());
    const int b = gen.bandwidth();
    const int w = 2 * b + 1;
    std::vector<double> band(static_cast<size_t>(n) * w, 0.0);
    auto at = [&](int i, int j) -> double& {
        return band[static_cast<size_t>(i) * w + (j - i + b)];
    };
    for (int i = 0; i < n; ++i)
        for (const auto& e : gen.row(i))
            if (e.col != i) at(i, e.col) = e.rate;

    // GTH elimination from the highest state down; fill stays inside the band.
    std::vector<double> denom(n, 0.0);
    for (int k = n - 1; k >= 1; --k) {
        int lo = std::max(0, k - b);
        double s = 0;
        for (int j = lo; j < k; ++j) s += at(k, j);
        denom[k] = s;
        for (int i = lo; i < k; ++i) {
            double f = at(i, k) / s;
            if (f == 0) continue;
            for (int j = lo; j < k; ++j)
                if (j != i) at(i, j) += f * at(k, j);
        }
    }
    std::vector<double> pi(n, 0.0);
    pi[0] = 1.0;
    for (int k = 1; k < n; ++k) {
        int lo = std::max(0, k - b);
        double s = 0;
        for (int i = lo; i < k; ++i) s += pi[i] * at(i, k);
        pi[k] = s / denom[k];
    }
    double total = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& x : pi) x /= total;
    return pi;
}

/// Breadth-first reachability over positive rates, forward and backward.
inline bool is_irreducible(const TruncatedGenerator& gen) {
    const int n = static_cast<int>(gen.size());
    std::vector<std::vector<int>> fwd(n), bwd(n);
    for (int i = 0; i < n; ++i)
        for (const auto& e : gen.row(i))
            if (e.col != i && e.rate > 0) {
                fwd[i].push_back(e.col);
                bwd[e.col].push_back(i);
            }
    auto bfs = [n](const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(n, 0);
        std::vector<int> q{0};
        seen[0] = 1;
        while (!q.empty()) {
            int u = q.back();
            q.pop_back();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push_back(v);
                }
        }
        return std::count(seen.begin(), seen.end(), char(1)) == n;
    };
    return bfs(fwd) && bfs(bwd);
}

}  // namespace retrialq
