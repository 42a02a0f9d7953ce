#ifndef TWINSIGHT_SYNTH_HPP
#define TWINSIGHT_SYNTH_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "twinsight/config.hpp"
#include "twinsight/enterprise.hpp"
#include "twinsight/errors.hpp"

namespace twinsight {

// SplitMix64. Trivially portable, bit-reproducible on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1], 53-bit mantissa.
    double next_unit()
    {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; two uniforms per deviate, the sine
    // half of the pair is discarded to keep the draw order flat.
    double next_normal()
    {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

// Synthetic enterprise spec: processes partitioned into groups sharing a
// latent driver, mixed with per-process noise by driver_weight.
struct SynthSpec {
    std::uint64_t seed = 0;
    std::size_t n = 1;
    int t_max = 1;
    double base_level = 1000.0;  // thousand rubles
    double noise_scale = 100.0;  // thousand rubles
    double driver_weight = 0.0;  // in [0, 1]
    std::vector<std::string> process_ids;     // defaults to p1..pn
    std::vector<std::size_t> group_of;        // per process, group index
    std::size_t group_count = 0;

    void validate() const
    {
        if (n < 1)
            throw ValidationError("n must be >= 1");
        if (t_max < 1)
            throw ValidationError("t_max must be >= 1");
        if (noise_scale < 0)
            throw ValidationError("noise_scale must be >= 0");
        if (driver_weight < 0 || driver_weight > 1)
            throw ValidationError("driver_weight must be in [0, 1]");
        if (process_ids.size() != n || group_of.size() != n)
            throw ValidationError("process ids and groups must cover exactly n processes");
        for (std::size_t g : group_of)
            if (g >= group_count)
                throw ValidationError("group index out of range");
    }
};

inline SynthSpec default_groups(SynthSpec spec)
{
    if (spec.process_ids.empty())
        for (std::size_t j = 1; j <= spec.n; ++j)
            spec.process_ids.push_back("p" + std::to_string(j));
    if (spec.group_of.empty()) {
        for (std::size_t j = 0; j < spec.n; ++j)
            spec.group_of.push_back(j);
        spec.group_count = spec.n;
    }
    return spec;
}

// Deterministic generation. Draw order is period-major: for each period
// 1..t_max, one normal per group (ascending group index), then one per
// process (ascending process index).
inline EnterpriseModel generate(const SynthSpec &raw_spec, const std::string &label = "synthetic")
{
    SynthSpec spec = default_groups(raw_spec);
    spec.validate();
    SplitMix64 rng(spec.seed);
    std::vector<std::vector<double>> values;
    values.reserve(static_cast<std::size_t>(spec.t_max));
    std::vector<double> drivers(spec.group_count);
    for (int t = 1; t <= spec.t_max; ++t) {
        for (std::size_t g = 0; g < spec.group_count; ++g)
            drivers[g] = rng.next_normal();
        std::vector<double> row(spec.n);
        for (std::size_t j = 0; j < spec.n; ++j) {
            const double noise = rng.next_normal();
            row[j] = spec.base_level +
                     spec.noise_scale * (spec.driver_weight * drivers[spec.group_of[j]] +
                                         (1.0 - spec.driver_weight) * noise);
        }
        values.push_back(std::move(row));
    }
    return EnterpriseModel(label, spec.process_ids, std::move(values));
}

// Spec file in the shared key-value dialect. Keys: seed, n, t_max,
// base_level, noise_scale, driver_weight, and optional repeated
// group.<name> = <pid>,<pid>,... partitioning the processes (ungrouped
// specs give every process its own group).
inline SynthSpec load_synth_spec(const std::string &path)
{
    SynthSpec spec;
    std::vector<std::pair<std::string, std::vector<std::string>>> groups;
    for (const auto &e : load_key_value_file(path)) {
        const std::string where = path + ":" + std::to_string(e.line);
        if (e.key == "seed") {
            spec.seed = static_cast<std::uint64_t>(parse_long(e.value, where));
        } else if (e.key == "n") {
            spec.n = static_cast<std::size_t>(parse_long(e.value, where));
        } else if (e.key == "t_max") {
            spec.t_max = static_cast<int>(parse_long(e.value, where));
        } else if (e.key == "base_level") {
            spec.base_level = parse_double(e.value, where);
        } else if (e.key == "noise_scale") {
            spec.noise_scale = parse_double(e.value, where);
        } else if (e.key == "driver_weight") {
            spec.driver_weight = parse_double(e.value, where);
        } else if (e.key.starts_with("group.")) {
            std::vector<std::string> members;
            std::stringstream ss(e.value);
            std::string pid;
            while (std::getline(ss, pid, ','))
                members.push_back(std::string(trim(pid)));
            groups.emplace_back(e.key.substr(6), std::move(members));
        } else {
            throw ValidationError(where, "unknown key '" + e.key + "'");
        }
    }
    if (!groups.empty()) {
        for (std::size_t j = 1; j <= spec.n; ++j)
            spec.process_ids.push_back("p" + std::to_string(j));
        spec.group_of.assign(spec.n, spec.n); // sentinel: unassigned
        spec.group_count = groups.size();
        std::map<std::string, std::size_t> index;
        for (std::size_t j = 0; j < spec.process_ids.size(); ++j)
            index[spec.process_ids[j]] = j;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (const auto &pid : groups[g].second) {
                auto it = index.find(pid);
                if (it == index.end())
                    throw ValidationError(path, "group '" + groups[g].first +
                                                    "' references unknown process '" + pid + "'");
                if (spec.group_of[it->second] != spec.n)
                    throw ValidationError(path, "process '" + pid +
                                                    "' assigned to more than one group");
                spec.group_of[it->second] = g;
            }
        }
        for (std::size_t j = 0; j < spec.n; ++j)
            if (spec.group_of[j] == spec.n)
                throw ValidationError(path, "process '" + spec.process_ids[j] +
                                                "' missing from the group partition");
    }
    spec = default_groups(spec);
    spec.validate();
    return spec;
}

} // namespace twinsight

#endif
