#ifndef TWINSIGHT_ENTERPRISE_HPP
#define TWINSIGHT_ENTERPRISE_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "twinsight/errors.hpp"

namespace twinsight {

// Enterprise model: n process indicator series over periods
// first_period..t_max, values in thousand rubles per period.
//
// Periods are 1-based. Rows with period <= 0 are optional pre-history:
// they feed correlation windows but are never scored themselves.
class EnterpriseModel {
public:
    EnterpriseModel() = default;
    EnterpriseModel(std::string label, std::vector<std::string> process_ids,
                    std::vector<std::vector<double>> values, int first_period = 1)
        : label_(std::move(label)), process_ids_(std::move(process_ids)),
          values_(std::move(values)), first_period_(first_period)
    {
        validate();
    }

    const std::string &label() const { return label_; }
    const std::vector<std::string> &process_ids() const { return process_ids_; }
    std::size_t process_count() const { return process_ids_.size(); }
    int first_period() const { return first_period_; }
    int t_max() const { return first_period_ + static_cast<int>(values_.size()) - 1; }

    // Row for period t (t in [first_period, t_max]).
    std::span<const double> row(int t) const
    {
        return values_[static_cast<std::size_t>(t - first_period_)];
    }
    double value(int t, std::size_t j) const { return row(t)[j]; }
    const std::vector<std::vector<double>> &values() const { return values_; }

    void set_label(std::string label) { label_ = std::move(label); }

    void validate() const
    {
        if (process_ids_.empty())
            throw ValidationError("model has no processes");
        if (values_.empty())
            throw ValidationError("model has no periods");
        if (t_max() < 1)
            throw ValidationError("last period must be >= 1");
        std::set<std::string> seen;
        for (const auto &pid : process_ids_) {
            if (pid.empty())
                throw ValidationError("empty process id");
            if (!seen.insert(pid).second)
                throw ValidationError("duplicate process id '" + pid + "'");
        }
        const std::size_t n = process_ids_.size();
        for (std::size_t r = 0; r < values_.size(); ++r) {
            if (values_[r].size() != n)
                throw ValidationError("row " + std::to_string(r + 1) + " has " +
                                      std::to_string(values_[r].size()) + " cells, expected " +
                                      std::to_string(n));
            for (std::size_t c = 0; c < n; ++c)
                if (!std::isfinite(values_[r][c]))
                    throw ValidationError("non-finite value at period row " +
                                          std::to_string(r + 1) + ", column " +
                                          std::to_string(c + 1));
        }
    }

private:
    std::string label_;
    std::vector<std::string> process_ids_;
    std::vector<std::vector<double>> values_; // rows: first_period..t_max
    int first_period_ = 1;
};

// The n process series fed to the indicator engine once a scenario has
// been applied. Same shape and invariants as the base model.
using ControlledSeries = EnterpriseModel;

// Sum of all cells of the value matrix, thousand rubles.
inline double total_expense(const EnterpriseModel &model)
{
    double sum = 0.0;
    for (const auto &row : model.values())
        for (double v : row)
            sum += v;
    return sum;
}

// Binary m x n mapping of competencies to processes (1 = competency i
// applies to process j).
class CompetencyMatrix {
public:
    CompetencyMatrix() = default;
    CompetencyMatrix(std::vector<std::string> competency_ids,
                     std::vector<std::string> process_ids,
                     std::vector<std::vector<int>> entries)
        : competency_ids_(std::move(competency_ids)), process_ids_(std::move(process_ids)),
          entries_(std::move(entries))
    {
        validate();
    }

    const std::vector<std::string> &competency_ids() const { return competency_ids_; }
    const std::vector<std::string> &process_ids() const { return process_ids_; }
    std::size_t competency_count() const { return competency_ids_.size(); }
    std::size_t process_count() const { return process_ids_.size(); }
    bool covers(std::size_t i, std::size_t j) const { return entries_[i][j] == 1; }
    const std::vector<std::vector<int>> &entries() const { return entries_; }

    bool has_competency(const std::string &id) const
    {
        for (const auto &cid : competency_ids_)
            if (cid == id)
                return true;
        return false;
    }

    std::size_t competency_index(const std::string &id) const
    {
        for (std::size_t i = 0; i < competency_ids_.size(); ++i)
            if (competency_ids_[i] == id)
                return i;
        throw ValidationError("unknown competency id '" + id + "'");
    }

    // Paired model must carry the same process set in the same order.
    void check_compatible(const EnterpriseModel &model) const
    {
        if (model.process_ids() != process_ids_)
            throw ValidationError("competency matrix process ids do not match model process ids");
    }

    void validate() const
    {
        std::set<std::string> seen;
        for (const auto &cid : competency_ids_)
            if (cid.empty() || !seen.insert(cid).second)
                throw ValidationError("empty or duplicate competency id '" + cid + "'");
        seen.clear();
        for (const auto &pid : process_ids_)
            if (pid.empty() || !seen.insert(pid).second)
                throw ValidationError("empty or duplicate process id '" + pid + "'");
        if (entries_.size() != competency_ids_.size())
            throw ValidationError("entry row count does not match competency count");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].size() != process_ids_.size())
                throw ValidationError("entry row " + std::to_string(i + 1) + " has wrong width");
            for (std::size_t j = 0; j < entries_[i].size(); ++j)
                if (entries_[i][j] != 0 && entries_[i][j] != 1)
                    throw ValidationError("non-binary entry at (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ")");
        }
    }

private:
    std::vector<std::string> competency_ids_;
    std::vector<std::string> process_ids_;
    std::vector<std::vector<int>> entries_;
};

// Per-competency effect on every process it covers, from the activation
// period on: value' = value * mul + add (combined across competencies).
struct CompetencyEffect {
    std::string competency_id;
    double add = 0.0; // thousand rubles per period per mapped process
    double mul = 1.0; // dimensionless, >= 0
};

struct InterventionScenario {
    int activation_period = 1; // 1-based t0
    std::vector<CompetencyEffect> effects;
    double intervention_cost = 0.0; // thousand rubles, lump sum
    double budget = 0.0;            // C, thousand rubles

    void validate(const CompetencyMatrix *cm = nullptr) const
    {
        if (activation_period < 1)
            throw ValidationError("activation_period must be >= 1");
        if (intervention_cost < 0)
            throw ValidationError("intervention_cost must be >= 0");
        if (budget < 0)
            throw ValidationError("budget must be >= 0");
        std::set<std::string> seen;
        for (const auto &e : effects) {
            if (!seen.insert(e.competency_id).second)
                throw ValidationError("duplicate effect for competency '" + e.competency_id + "'");
            if (e.mul < 0)
                throw ValidationError("multiplicative factor for '" + e.competency_id +
                                      "' must be >= 0");
            if (!std::isfinite(e.add) || !std::isfinite(e.mul))
                throw ValidationError("non-finite effect for '" + e.competency_id + "'");
            if (cm && !cm->has_competency(e.competency_id))
                throw ValidationError("effect references unknown competency '" +
                                      e.competency_id + "'");
        }
    }
};

} // namespace twinsight

#endif
