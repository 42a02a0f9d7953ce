#ifndef TWINSIGHT_INDICATOR_HPP
#define TWINSIGHT_INDICATOR_HPP

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "twinsight/enterprise.hpp"
#include "twinsight/errors.hpp"

namespace twinsight {

enum class WarmupPolicy { growing_window, skip };

struct WindowConfig {
    int k = 12;       // window length in periods
    int min_lags = 2; // minimum usable lags
    WarmupPolicy policy = WarmupPolicy::growing_window;

    void validate() const
    {
        if (k < 2)
            throw ValidationError("window length k must be >= 2");
        if (min_lags < 2 || min_lags > k)
            throw ValidationError("min_lags must satisfy 2 <= min_lags <= k");
    }
};

inline std::string to_string(WarmupPolicy p)
{
    return p == WarmupPolicy::growing_window ? "growing" : "skip";
}

// Windowed correlation matrix at one period. `sufficient` is false when
// fewer than min_lags lags were available (growing_window only).
struct CorrelationSnapshot {
    int t = 0;
    std::size_t n = 0;
    std::vector<double> r;             // n*n, row-major
    std::vector<bool> degenerate;      // per column, zero variance in window
    int window_rows_used = 0;
    bool sufficient = true;

    double at(std::size_t i, std::size_t j) const { return r[i * n + j]; }
    bool all_degenerate() const
    {
        for (bool d : degenerate)
            if (!d)
                return false;
        return true;
    }
};

struct IndicatorResult {
    std::string mode_label;
    std::vector<std::string> process_ids;
    int k = 0;
    WarmupPolicy policy = WarmupPolicy::growing_window;
    std::vector<std::vector<double>> per_process; // T_max rows, n columns: V_i(t)
    std::vector<double> per_period_total;         // length T_max
    double grand_total = 0.0;
    std::set<std::pair<int, std::size_t>> degenerate_flags; // (t, i), i 0-based

    int t_max() const { return static_cast<int>(per_period_total.size()); }
    std::size_t process_count() const { return process_ids.size(); }
};

// Lag matrix for period t: row 1 is lag 1 (period t-1), row L is lag L.
// Pre-history rows (period <= 0) extend the available history.
inline std::vector<std::vector<double>> window_matrix(const ControlledSeries &series, int t,
                                                      const WindowConfig &cfg)
{
    cfg.validate();
    const int available = t - series.first_period(); // rows strictly before t
    if (available < 1)
        throw ValidationError("no history before period " + std::to_string(t));
    int rows;
    if (cfg.policy == WarmupPolicy::skip) {
        if (available < cfg.k)
            throw ValidationError("skip policy needs " + std::to_string(cfg.k) +
                                  " lags before period " + std::to_string(t) + ", have " +
                                  std::to_string(available));
        rows = cfg.k;
    } else {
        rows = std::min(cfg.k, available);
    }
    std::vector<std::vector<double>> window;
    window.reserve(static_cast<std::size_t>(rows));
    for (int lag = 1; lag <= rows; ++lag) {
        auto row = series.row(t - lag);
        window.emplace_back(row.begin(), row.end());
    }
    return window;
}

// Column z-scores over the window, sample standard deviation (divisor
// L-1). Zero-variance columns come back zero-filled and flagged.
inline std::pair<std::vector<std::vector<double>>, std::vector<bool>>
standardize_columns(const std::vector<std::vector<double>> &window)
{
    const std::size_t rows = window.size();
    if (rows < 2)
        throw ValidationError("standardization needs at least 2 rows");
    const std::size_t cols = window[0].size();
    std::vector<std::vector<double>> z(rows, std::vector<double>(cols, 0.0));
    std::vector<bool> degenerate(cols, false);
    for (std::size_t j = 0; j < cols; ++j) {
        // exact constancy, not sd == 0: the mean of identical values can
        // round away from them and fake a tiny nonzero variance
        bool constant = true;
        for (std::size_t l = 1; l < rows; ++l)
            if (window[l][j] != window[0][j])
                constant = false;
        if (constant) {
            degenerate[j] = true;
            continue;
        }
        double mean = 0.0;
        for (std::size_t l = 0; l < rows; ++l)
            mean += window[l][j];
        mean /= static_cast<double>(rows);
        double ss = 0.0;
        for (std::size_t l = 0; l < rows; ++l) {
            const double d = window[l][j] - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(rows - 1));
        for (std::size_t l = 0; l < rows; ++l)
            z[l][j] = (window[l][j] - mean) / sd;
    }
    return {std::move(z), std::move(degenerate)};
}

// Pearson correlation matrix over the window ending at t. Each unordered
// pair is computed once, so the matrix is symmetric bit-for-bit. Pairs
// with a degenerate column get r_ij = 0 (i != j); the diagonal stays 1.
inline CorrelationSnapshot correlation_matrix(const ControlledSeries &series, int t,
                                              const WindowConfig &cfg)
{
    cfg.validate();
    const std::size_t n = series.process_count();
    CorrelationSnapshot snap;
    snap.t = t;
    snap.n = n;

    const int available = t - series.first_period();
    if (available < cfg.min_lags) {
        if (cfg.policy == WarmupPolicy::skip)
            throw ValidationError("insufficient lags at period " + std::to_string(t));
        snap.sufficient = false;
        snap.window_rows_used = std::max(available, 0);
        snap.degenerate.assign(n, true);
        snap.r.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            snap.r[i * n + i] = 1.0;
        return snap;
    }

    const auto window = window_matrix(series, t, cfg);
    const auto [z, degenerate] = standardize_columns(window);
    const std::size_t rows = window.size();
    snap.window_rows_used = static_cast<int>(rows);
    snap.degenerate = degenerate;
    snap.r.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        snap.r[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (degenerate[i] || degenerate[j])
                continue;
            double dot = 0.0;
            for (std::size_t l = 0; l < rows; ++l)
                dot += z[l][i] * z[l][j];
            const double rij = dot / static_cast<double>(rows - 1);
            snap.r[i * n + j] = rij;
            snap.r[j * n + i] = rij;
        }
    }
    return snap;
}

// V_i(t) = sum_j |r_ij(t)|, diagonal included. A snapshot with no usable
// information (insufficient lags or every column degenerate) scores 0.
inline std::vector<double> integral_index(const CorrelationSnapshot &snap)
{
    if (!snap.sufficient || snap.all_degenerate())
        return std::vector<double>(snap.n, 0.0);
    std::vector<double> v(snap.n, 0.0);
    for (std::size_t i = 0; i < snap.n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < snap.n; ++j)
            sum += std::abs(snap.at(i, j));
        v[i] = sum;
    }
    return v;
}

// Full run over t = 1..T_max. Periods may be computed on several worker
// threads; each writes its own preallocated rows and aggregation happens
// afterwards in fixed ascending order, so output is bit-identical for
// any worker count.
inline IndicatorResult run_indicator(const ControlledSeries &series, const WindowConfig &cfg,
                                     unsigned workers = 1)
{
    cfg.validate();
    series.validate();
    if (cfg.policy == WarmupPolicy::skip && 1 - series.first_period() < cfg.k)
        throw ValidationError("skip policy needs " + std::to_string(cfg.k) +
                              " pre-history periods before t=1");

    const int t_max = series.t_max();
    const std::size_t n = series.process_count();
    IndicatorResult result;
    result.mode_label = series.label();
    result.process_ids = series.process_ids();
    result.k = cfg.k;
    result.policy = cfg.policy;
    result.per_process.assign(static_cast<std::size_t>(t_max), std::vector<double>(n, 0.0));

    std::vector<std::vector<std::pair<int, std::size_t>>> flags_by_period(
        static_cast<std::size_t>(t_max));

    auto compute_period = [&](int t) {
        auto snap = correlation_matrix(series, t, cfg);
        auto &flags = flags_by_period[static_cast<std::size_t>(t - 1)];
        if (!snap.sufficient || snap.all_degenerate()) {
            for (std::size_t i = 0; i < n; ++i)
                flags.emplace_back(t, i);
        } else {
            for (std::size_t i = 0; i < n; ++i)
                if (snap.degenerate[i])
                    flags.emplace_back(t, i);
        }
        result.per_process[static_cast<std::size_t>(t - 1)] = integral_index(snap);
    };

    if (workers <= 1) {
        for (int t = 1; t <= t_max; ++t)
            compute_period(t);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int t = 1 + static_cast<int>(w); t <= t_max;
                     t += static_cast<int>(workers))
                    compute_period(t);
            });
        for (auto &th : pool)
            th.join();
    }

    result.per_period_total.assign(static_cast<std::size_t>(t_max), 0.0);
    for (int t = 1; t <= t_max; ++t) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            total += result.per_process[static_cast<std::size_t>(t - 1)][i];
        result.per_period_total[static_cast<std::size_t>(t - 1)] = total;
    }
    result.grand_total = 0.0;
    for (double total : result.per_period_total)
        result.grand_total += total;
    for (const auto &flags : flags_by_period)
        result.degenerate_flags.insert(flags.begin(), flags.end());
    return result;
}

// Plot-ready long-format view of a result, ordered by t then process.
struct DynamicsRecord {
    int t;
    std::string series; // "total" or a process id
    double value;
};

inline std::vector<DynamicsRecord> indicator_dynamics(const IndicatorResult &result)
{
    std::vector<DynamicsRecord> records;
    const std::size_t n = result.process_count();
    records.reserve(result.per_period_total.size() * (n + 1));
    for (int t = 1; t <= result.t_max(); ++t) {
        records.push_back({t, "total", result.per_period_total[static_cast<std::size_t>(t - 1)]});
        for (std::size_t i = 0; i < n; ++i)
            records.push_back({t, result.process_ids[i],
                               result.per_process[static_cast<std::size_t>(t - 1)][i]});
    }
    return records;
}

// Replay of a precomputed per-period totals table through the same
// aggregation: no per-process detail, grand total by the fixed order.
inline IndicatorResult replay_totals(const std::vector<double> &totals,
                                     const std::string &label)
{
    IndicatorResult result;
    result.mode_label = label;
    result.per_period_total = totals;
    result.per_process.assign(totals.size(), {});
    result.grand_total = 0.0;
    for (double total : totals)
        result.grand_total += total;
    return result;
}

} // namespace twinsight

#endif
