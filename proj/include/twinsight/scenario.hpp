#ifndef TWINSIGHT_SCENARIO_HPP
#define TWINSIGHT_SCENARIO_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "twinsight/enterprise.hpp"
#include "twinsight/errors.hpp"
#include "twinsight/indicator.hpp"

namespace twinsight {

struct BudgetCheck {
    bool passed = true;
    double cost = 0.0;
    double budget = 0.0;
    double excess = 0.0; // cost - budget when violated
};

// C(V) <= C. A violation is a reported value, not an error.
inline BudgetCheck check_budget(const InterventionScenario &sc)
{
    BudgetCheck check;
    check.cost = sc.intervention_cost;
    check.budget = sc.budget;
    if (sc.intervention_cost > sc.budget) {
        check.passed = false;
        check.excess = sc.intervention_cost - sc.budget;
    }
    return check;
}

// Projected enterprise total after the intervention lump sum.
inline double scenario_cost_projection(double base_total, const InterventionScenario &sc)
{
    return base_total + sc.intervention_cost;
}

// Applies a competency intervention to the base series. From the
// activation period on, every process covered by at least one effect's
// competency gets value' = value * prod(mul) + sum(add) over the
// covering competencies; everything else is copied through untouched.
inline ControlledSeries apply_scenario(const EnterpriseModel &base, const CompetencyMatrix &cm,
                                       const InterventionScenario &sc)
{
    cm.check_compatible(base);
    sc.validate(&cm);

    const std::size_t n = base.process_count();
    std::vector<double> mul(n, 1.0);
    std::vector<double> add(n, 0.0);
    std::vector<bool> covered(n, false);
    for (const auto &effect : sc.effects) {
        const std::size_t i = cm.competency_index(effect.competency_id);
        for (std::size_t j = 0; j < n; ++j) {
            if (!cm.covers(i, j))
                continue;
            covered[j] = true;
            mul[j] *= effect.mul;
            add[j] += effect.add;
        }
    }

    std::vector<std::vector<double>> values;
    values.reserve(base.values().size());
    for (int t = base.first_period(); t <= base.t_max(); ++t) {
        auto row = base.row(t);
        std::vector<double> out(row.begin(), row.end());
        if (t >= sc.activation_period)
            for (std::size_t j = 0; j < n; ++j)
                if (covered[j])
                    out[j] = out[j] * mul[j] + add[j];
        values.push_back(std::move(out));
    }
    return ControlledSeries(base.label(), base.process_ids(), std::move(values),
                            base.first_period());
}

// Sum of additive deltas actually applied across affected cells, for the
// declared-cost consistency warning.
inline double applied_additive_total(const EnterpriseModel &base, const CompetencyMatrix &cm,
                                     const InterventionScenario &sc)
{
    const std::size_t n = base.process_count();
    std::vector<double> add(n, 0.0);
    for (const auto &effect : sc.effects) {
        const std::size_t i = cm.competency_index(effect.competency_id);
        for (std::size_t j = 0; j < n; ++j)
            if (cm.covers(i, j))
                add[j] += effect.add;
    }
    const int from = std::max(sc.activation_period, base.first_period());
    double total = 0.0;
    for (int t = from; t <= base.t_max(); ++t)
        for (std::size_t j = 0; j < n; ++j)
            total += add[j];
    return total;
}

struct ModeComparison {
    std::string baseline_label;
    std::string intervention_label;
    double baseline_total = 0.0;
    double intervention_total = 0.0;
    double delta_v = 0.0;                 // intervention - baseline
    std::vector<double> per_period_delta; // length T_max
};

inline ModeComparison compare_modes(const IndicatorResult &baseline,
                                    const IndicatorResult &intervention)
{
    if (baseline.t_max() != intervention.t_max())
        throw ValidationError("mode comparison needs matching period counts: " +
                              std::to_string(baseline.t_max()) + " vs " +
                              std::to_string(intervention.t_max()));
    if (baseline.process_count() != intervention.process_count())
        throw ValidationError("mode comparison needs matching process counts");
    if (baseline.k != intervention.k || baseline.policy != intervention.policy)
        throw ValidationError("mode comparison needs matching window configs");

    ModeComparison cmp;
    cmp.baseline_label = baseline.mode_label;
    cmp.intervention_label = intervention.mode_label;
    cmp.baseline_total = baseline.grand_total;
    cmp.intervention_total = intervention.grand_total;
    cmp.delta_v = intervention.grand_total - baseline.grand_total;
    cmp.per_period_delta.resize(baseline.per_period_total.size());
    for (std::size_t t = 0; t < cmp.per_period_delta.size(); ++t)
        cmp.per_period_delta[t] =
            intervention.per_period_total[t] - baseline.per_period_total[t];
    return cmp;
}

} // namespace twinsight

#endif
