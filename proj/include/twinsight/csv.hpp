#ifndef TWINSIGHT_CSV_HPP
#define TWINSIGHT_CSV_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "twinsight/config.hpp"
#include "twinsight/enterprise.hpp"
#include "twinsight/errors.hpp"

namespace twinsight {

inline std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(std::string(trim(cell)));
    if (!line.empty() && line.back() == ',')
        cells.push_back("");
    return cells;
}

// Shortest round-trip representation, used for model CSVs so that
// write(load(f)) preserves every cell bit-for-bit.
inline std::string fmt_full(double v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// Report formatting: 6 significant decimals, stable for golden files.
inline std::string fmt_sig6(double v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 6);
    return std::string(buf, ptr);
}

namespace detail {

inline std::vector<std::string> read_lines(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

inline std::string loc(const std::string &path, std::size_t lineno)
{
    return path + ":" + std::to_string(lineno);
}

} // namespace detail

// Enterprise model CSV: header `period,<pid1>,...,<pidn>`, one row per
// period. Periods must be contiguous and ascending, ending at T_max >= 1;
// leading rows with period <= 0 count as pre-history.
inline EnterpriseModel load_enterprise_model(const std::string &path,
                                             const std::string &label = "")
{
    auto lines = detail::read_lines(path);
    if (lines.empty() || (lines.size() == 1 && trim(lines[0]).empty()))
        throw ValidationError(path, "empty file");

    auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "period")
        throw ValidationError(detail::loc(path, 1),
                              "header must be 'period,<pid>,...'");
    std::vector<std::string> pids(header.begin() + 1, header.end());
    {
        std::set<std::string> seen;
        for (std::size_t j = 0; j < pids.size(); ++j)
            if (pids[j].empty() || !seen.insert(pids[j]).second)
                throw ValidationError(detail::loc(path, 1),
                                      "duplicate process id '" + pids[j] + "' in column " +
                                          std::to_string(j + 2));
    }

    std::vector<std::vector<double>> values;
    bool have_first = false;
    int first_period = 0, prev_period = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty())
            continue;
        auto cells = split_csv_line(lines[li]);
        const std::string where = detail::loc(path, li + 1);
        if (cells.size() != pids.size() + 1)
            throw ValidationError(where, "expected " + std::to_string(pids.size() + 1) +
                                             " cells, got " + std::to_string(cells.size()));
        int period = static_cast<int>(parse_long(cells[0], where + ", column 1"));
        if (!have_first) {
            first_period = period;
            have_first = true;
        } else if (period == prev_period) {
            throw ValidationError(where, "duplicate period " + std::to_string(period));
        } else if (period != prev_period + 1) {
            throw ValidationError(where, "periods must be contiguous: got " +
                                             std::to_string(period) + " after " +
                                             std::to_string(prev_period));
        }
        prev_period = period;
        std::vector<double> row;
        row.reserve(pids.size());
        for (std::size_t c = 1; c < cells.size(); ++c) {
            double v = parse_double(cells[c], where + ", column " + std::to_string(c + 1));
            if (!std::isfinite(v))
                throw ValidationError(where + ", column " + std::to_string(c + 1),
                                      "non-finite value");
            row.push_back(v);
        }
        values.push_back(std::move(row));
    }
    if (values.empty())
        throw ValidationError(path, "no data rows");
    if (prev_period < 1)
        throw ValidationError(path, "last period must be >= 1, got " +
                                        std::to_string(prev_period));
    return EnterpriseModel(label.empty() ? path : label, std::move(pids), std::move(values),
                           first_period);
}

inline void write_enterprise_model(const EnterpriseModel &model, std::ostream &out)
{
    out << "period";
    for (const auto &pid : model.process_ids())
        out << ',' << pid;
    out << '\n';
    for (int t = model.first_period(); t <= model.t_max(); ++t) {
        out << t;
        for (double v : model.row(t))
            out << ',' << fmt_full(v);
        out << '\n';
    }
}

inline void write_enterprise_model(const EnterpriseModel &model, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    write_enterprise_model(model, out);
}

// Competency matrix CSV: header `competency,<pid1>,...,<pidn>`, one row
// per competency, cells strictly 0 or 1.
inline CompetencyMatrix load_competency_matrix(const std::string &path)
{
    auto lines = detail::read_lines(path);
    if (lines.empty() || (lines.size() == 1 && trim(lines[0]).empty()))
        throw ValidationError(path, "empty file");

    auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "competency")
        throw ValidationError(detail::loc(path, 1),
                              "header must be 'competency,<pid>,...'");
    std::vector<std::string> pids(header.begin() + 1, header.end());

    std::vector<std::string> cids;
    std::vector<std::vector<int>> entries;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty())
            continue;
        auto cells = split_csv_line(lines[li]);
        const std::string where = detail::loc(path, li + 1);
        if (cells.size() != pids.size() + 1)
            throw ValidationError(where, "expected " + std::to_string(pids.size() + 1) +
                                             " cells, got " + std::to_string(cells.size()));
        cids.push_back(cells[0]);
        std::vector<int> row;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            if (cells[c] == "0")
                row.push_back(0);
            else if (cells[c] == "1")
                row.push_back(1);
            else
                throw ValidationError(where + ", column " + std::to_string(c + 1),
                                      "non-binary entry at (" +
                                          std::to_string(cids.size()) + "," +
                                          std::to_string(c) + "): '" + cells[c] + "'");
        }
        entries.push_back(std::move(row));
    }
    if (cids.empty())
        throw ValidationError(path, "no competency rows");
    return CompetencyMatrix(std::move(cids), std::move(pids), std::move(entries));
}

// Scenario config, flat key-value file. Keys: activation_period, budget,
// intervention_cost, and repeated effect.<competency_id>.add / .mul.
inline InterventionScenario load_scenario(const std::string &path)
{
    InterventionScenario sc;
    std::map<std::string, std::size_t> effect_index;
    for (const auto &e : load_key_value_file(path)) {
        const std::string where = path + ":" + std::to_string(e.line);
        if (e.key == "activation_period") {
            sc.activation_period = static_cast<int>(parse_long(e.value, where));
        } else if (e.key == "budget") {
            sc.budget = parse_double(e.value, where);
        } else if (e.key == "intervention_cost") {
            sc.intervention_cost = parse_double(e.value, where);
        } else if (e.key.starts_with("effect.")) {
            auto rest = e.key.substr(7);
            auto dot = rest.rfind('.');
            if (dot == std::string::npos || dot == 0)
                throw ValidationError(where, "expected effect.<competency_id>.{add|mul}");
            std::string cid = rest.substr(0, dot);
            std::string field = rest.substr(dot + 1);
            auto [it, inserted] = effect_index.try_emplace(cid, sc.effects.size());
            if (inserted)
                sc.effects.push_back({cid, 0.0, 1.0});
            auto &eff = sc.effects[it->second];
            if (field == "add")
                eff.add = parse_double(e.value, where);
            else if (field == "mul")
                eff.mul = parse_double(e.value, where);
            else
                throw ValidationError(where, "unknown effect field '" + field + "'");
        } else {
            throw ValidationError(where, "unknown key '" + e.key + "'");
        }
    }
    sc.validate();
    return sc;
}

// Precomputed per-period totals (the shape of a t/V table): header
// `t,total`, periods contiguous from 1.
inline std::vector<double> load_totals(const std::string &path)
{
    auto lines = detail::read_lines(path);
    if (lines.empty())
        throw ValidationError(path, "empty file");
    auto header = split_csv_line(lines[0]);
    if (header.size() != 2 || header[0] != "t")
        throw ValidationError(detail::loc(path, 1), "header must be 't,<total column>'");
    std::vector<double> totals;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty())
            continue;
        auto cells = split_csv_line(lines[li]);
        const std::string where = detail::loc(path, li + 1);
        if (cells.size() != 2)
            throw ValidationError(where, "expected 2 cells");
        long t = parse_long(cells[0], where + ", column 1");
        if (t != static_cast<long>(totals.size()) + 1)
            throw ValidationError(where, "periods must run 1..T, got " + std::to_string(t));
        totals.push_back(parse_double(cells[1], where + ", column 2"));
    }
    if (totals.empty())
        throw ValidationError(path, "no data rows");
    return totals;
}

} // namespace twinsight

#endif
