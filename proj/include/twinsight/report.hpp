#ifndef TWINSIGHT_REPORT_HPP
#define TWINSIGHT_REPORT_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "twinsight/csv.hpp"
#include "twinsight/indicator.hpp"
#include "twinsight/scenario.hpp"

namespace twinsight {

namespace detail {

inline std::ofstream open_out(const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    return out;
}

} // namespace detail

// Long-format per-process indicator CSV: mode,t,process,V_i
inline void write_per_process_csv(const IndicatorResult &result, const std::string &path)
{
    auto out = detail::open_out(path);
    out << "mode,t,process,V_i\n";
    for (int t = 1; t <= result.t_max(); ++t)
        for (std::size_t i = 0; i < result.process_count(); ++i)
            out << result.mode_label << ',' << t << ',' << result.process_ids[i] << ','
                << fmt_sig6(result.per_process[static_cast<std::size_t>(t - 1)][i]) << '\n';
}

// Per-period totals CSV: mode,t,total
inline void write_totals_csv(const IndicatorResult &result, const std::string &path)
{
    auto out = detail::open_out(path);
    out << "mode,t,total\n";
    for (int t = 1; t <= result.t_max(); ++t)
        out << result.mode_label << ',' << t << ','
            << fmt_sig6(result.per_period_total[static_cast<std::size_t>(t - 1)]) << '\n';
}

// Plot data, long format: t,series,value with "total" plus one trace
// per process.
inline void write_dynamics_csv(const IndicatorResult &result, const std::string &path)
{
    auto out = detail::open_out(path);
    out << "t,series,value\n";
    for (const auto &rec : indicator_dynamics(result))
        out << rec.t << ',' << rec.series << ',' << fmt_sig6(rec.value) << '\n';
}

// One-line JSON summary; numbers keep full binary64 precision.
inline void write_summary_json(const IndicatorResult &result, const std::string &path)
{
    nlohmann::ordered_json j;
    j["mode"] = result.mode_label;
    j["grand_total"] = result.grand_total;
    j["degenerate_count"] = result.degenerate_flags.size();
    j["k"] = result.k;
    j["policy"] = to_string(result.policy);
    auto out = detail::open_out(path);
    out << j.dump() << '\n';
}

inline void write_comparison_json(const ModeComparison &cmp, const BudgetCheck &budget,
                                  double cost_delta, const std::string &path)
{
    nlohmann::ordered_json j;
    j["baseline_total"] = cmp.baseline_total;
    j["intervention_total"] = cmp.intervention_total;
    j["delta_v"] = cmp.delta_v;
    j["cost_delta"] = cost_delta;
    j["budget_status"] = budget.passed ? "pass" : "violation";
    if (!budget.passed)
        j["budget_excess"] = budget.excess;
    auto out = detail::open_out(path);
    out << j.dump() << '\n';
}

inline void write_delta_csv(const ModeComparison &cmp, const std::string &path)
{
    auto out = detail::open_out(path);
    out << "t,delta_total\n";
    for (std::size_t t = 0; t < cmp.per_period_delta.size(); ++t)
        out << (t + 1) << ',' << fmt_sig6(cmp.per_period_delta[t]) << '\n';
}

} // namespace twinsight

#endif
