#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle.hpp"
#include "twinsight/csv.hpp"
#include "twinsight/indicator.hpp"
#include "twinsight/synth.hpp"

using namespace twinsight;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

EnterpriseModel make_model(std::vector<std::vector<double>> values,
                           std::vector<std::string> pids, int first_period = 1)
{
    return EnterpriseModel("test", std::move(pids), std::move(values), first_period);
}

EnterpriseModel random_model(std::uint64_t seed, std::size_t n, int t_max)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    std::vector<std::vector<double>> values(static_cast<std::size_t>(t_max),
                                            std::vector<double>(n));
    for (auto &row : values)
        for (auto &v : row)
            v = dist(gen);
    std::vector<std::string> pids;
    for (std::size_t j = 1; j <= n; ++j)
        pids.push_back("p" + std::to_string(j));
    return make_model(std::move(values), std::move(pids));
}

} // namespace

TEST_CASE("window_matrix indexes lags newest first")
{
    auto m = make_model({{1}, {2}, {3}, {4}, {5}}, {"a"});
    WindowConfig cfg{.k = 2};

    auto w = window_matrix(m, 4, cfg);
    REQUIRE(w.size() == 2);
    CHECK(w[0][0] == 3.0); // period 3
    CHECK(w[1][0] == 2.0); // period 2

    SECTION("growing window at t=2 with large k yields one row")
    {
        WindowConfig big{.k = 12};
        auto single = window_matrix(m, 2, big);
        REQUIRE(single.size() == 1);
        CHECK(single[0][0] == 1.0);
        CHECK(single.size() < static_cast<std::size_t>(big.min_lags));
    }
    SECTION("t=13, k=12 runs periods 12 down to 1")
    {
        std::vector<std::vector<double>> vals;
        for (int t = 1; t <= 13; ++t)
            vals.push_back({static_cast<double>(t) * 10.0});
        auto long_m = make_model(vals, {"a"});
        WindowConfig k12{.k = 12};
        auto w12 = window_matrix(long_m, 13, k12);
        REQUIRE(w12.size() == 12);
        // hand-indexed fixture: lag l holds the value of period 13 - l
        for (int l = 1; l <= 12; ++l)
            CHECK(w12[static_cast<std::size_t>(l - 1)][0] == (13 - l) * 10.0);
    }
    SECTION("errors")
    {
        CHECK_THROWS(window_matrix(m, 1, cfg)); // no history
        WindowConfig skip{.k = 4, .min_lags = 2, .policy = WarmupPolicy::skip};
        CHECK_THROWS(window_matrix(m, 3, skip));
        CHECK(window_matrix(m, 5, skip).size() == 4);
    }
}

TEST_CASE("standardize_columns")
{
    SECTION("z-scores of (1,2,3,4)")
    {
        auto [z, degen] = standardize_columns({{1}, {2}, {3}, {4}});
        REQUIRE_FALSE(degen[0]);
        CHECK_THAT(z[0][0], WithinAbs(-1.1619, 1e-4));
        CHECK_THAT(z[1][0], WithinAbs(-0.3873, 1e-4));
        CHECK_THAT(z[2][0], WithinAbs(0.3873, 1e-4));
        CHECK_THAT(z[3][0], WithinAbs(1.1619, 1e-4));
    }
    SECTION("constant column is zero-filled and flagged")
    {
        auto [z, degen] = standardize_columns({{7}, {7}, {7}});
        CHECK(degen[0]);
        for (const auto &row : z)
            CHECK(row[0] == 0.0);
    }
    SECTION("(-1,1) standardizes with sample std sqrt(2)")
    {
        auto [z, degen] = standardize_columns({{-1}, {1}});
        REQUIRE_FALSE(degen[0]);
        CHECK_THAT(z[0][0], WithinAbs(-0.7071, 1e-4));
        CHECK_THAT(z[1][0], WithinAbs(0.7071, 1e-4));
    }
    SECTION("fewer than 2 rows is an error")
    {
        CHECK_THROWS(standardize_columns({{1.0, 2.0}}));
    }
}

TEST_CASE("correlation_matrix")
{
    WindowConfig cfg{.k = 4};
    SECTION("identical columns give r=1")
    {
        auto m = make_model({{1, 1}, {2, 2}, {3, 3}, {5, 5}, {0, 0}}, {"a", "b"});
        auto snap = correlation_matrix(m, 5, cfg);
        CHECK_THAT(snap.at(0, 1), WithinAbs(1.0, 1e-12));
        CHECK(snap.at(0, 0) == 1.0);
    }
    SECTION("negated column gives r=-1")
    {
        auto m = make_model({{1, -1}, {2, -2}, {3, -3}, {5, -5}, {0, 0}}, {"a", "b"});
        auto snap = correlation_matrix(m, 5, cfg);
        CHECK_THAT(snap.at(0, 1), WithinAbs(-1.0, 1e-12));
    }
    SECTION("hand-computed r = 0.6")
    {
        // window rows are (1,2),(2,1),(3,4),(4,3): centered dot 3.0, norms sqrt(5) each
        auto m = make_model({{4, 3}, {3, 4}, {2, 1}, {1, 2}, {0, 0}}, {"a", "b"});
        auto snap = correlation_matrix(m, 5, cfg);
        CHECK_THAT(snap.at(0, 1), WithinAbs(0.6, 1e-12));
        CHECK(snap.at(0, 1) == snap.at(1, 0));
    }
    SECTION("insufficient lags under growing window is a degenerate marker")
    {
        auto m = make_model({{1}, {2}, {3}}, {"a"});
        auto snap = correlation_matrix(m, 1, WindowConfig{.k = 4});
        CHECK_FALSE(snap.sufficient);
        CHECK(integral_index(snap)[0] == 0.0);
    }
    SECTION("insufficient lags under skip policy is fatal")
    {
        auto m = make_model({{1}, {2}, {3}}, {"a"});
        WindowConfig skip{.k = 4, .min_lags = 2, .policy = WarmupPolicy::skip};
        CHECK_THROWS(correlation_matrix(m, 3, skip));
    }
}

TEST_CASE("integral_index")
{
    WindowConfig cfg{.k = 4};
    SECTION("n=1 non-constant series gives V=1")
    {
        auto m = make_model({{1}, {2}, {4}, {3}, {0}}, {"a"});
        auto v = integral_index(correlation_matrix(m, 5, cfg));
        CHECK(v[0] == 1.0);
    }
    SECTION("n=2 with r=0.6 gives V=1.6 on both")
    {
        auto m = make_model({{4, 3}, {3, 4}, {2, 1}, {1, 2}, {0, 0}}, {"a", "b"});
        auto v = integral_index(correlation_matrix(m, 5, cfg));
        CHECK_THAT(v[0], WithinAbs(1.6, 1e-12));
        CHECK_THAT(v[1], WithinAbs(1.6, 1e-12));
    }
    SECTION("three identical columns give V=3")
    {
        auto m = make_model({{1, 1, 1}, {2, 2, 2}, {5, 5, 5}, {3, 3, 3}}, {"a", "b", "c"});
        auto v = integral_index(correlation_matrix(m, 4, cfg));
        for (double x : v)
            CHECK_THAT(x, WithinAbs(3.0, 1e-12));
    }
}

TEST_CASE("run_indicator on an all-zero series is fully degenerate")
{
    auto m = make_model(std::vector<std::vector<double>>(20, {0.0, 0.0, 0.0}),
                        {"a", "b", "c"});
    auto result = run_indicator(m, WindowConfig{.k = 4});
    CHECK(result.grand_total == 0.0);
    CHECK(result.degenerate_flags.size() == 20u * 3u);
}

TEST_CASE("replay of the published SFU totals sums to the published grand total")
{
    auto totals = load_totals(std::string(FIXTURE_DIR) + "/sfu_regime_totals.csv");
    auto result = replay_totals(totals, "V_SFU");
    CHECK_THAT(result.grand_total, WithinAbs(5491.33, 0.05));
}

TEST_CASE("per-period totals and grand total are consistent row sums")
{
    auto m = random_model(3, 4, 40);
    auto result = run_indicator(m, WindowConfig{.k = 6});
    double grand = 0.0;
    for (int t = 1; t <= result.t_max(); ++t) {
        double row = 0.0;
        for (std::size_t i = 0; i < result.process_count(); ++i)
            row += result.per_process[static_cast<std::size_t>(t - 1)][i];
        CHECK(result.per_period_total[static_cast<std::size_t>(t - 1)] == row);
        grand += result.per_period_total[static_cast<std::size_t>(t - 1)];
    }
    CHECK(result.grand_total == grand);
}

TEST_CASE("engine matches the brute-force oracle")
{
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto m = random_model(seed, 5, 100);
        auto result = run_indicator(m, WindowConfig{.k = 12});
        auto expected = oracle::run(m, 12);
        REQUIRE_THAT(result.grand_total, WithinRel(expected.grand, 1e-9));
        for (int t = 1; t <= m.t_max(); ++t)
            for (std::size_t i = 0; i < m.process_count(); ++i) {
                const double got = result.per_process[static_cast<std::size_t>(t - 1)][i];
                const double want = expected.per_process[static_cast<std::size_t>(t - 1)][i];
                REQUIRE_THAT(got, WithinAbs(want, 1e-9 * std::max(1.0, std::abs(want))));
            }
    }
}

TEST_CASE("snapshots are exactly symmetric with bounded entries")
{
    auto m = random_model(9, 6, 60);
    WindowConfig cfg{.k = 8};
    for (int t = 3; t <= m.t_max(); ++t) {
        auto snap = correlation_matrix(m, t, cfg);
        for (std::size_t i = 0; i < snap.n; ++i) {
            CHECK(snap.at(i, i) == 1.0);
            for (std::size_t j = 0; j < snap.n; ++j) {
                CHECK(snap.at(i, j) == snap.at(j, i)); // bitwise
                CHECK(std::abs(snap.at(i, j)) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("affine and sign invariance of the index")
{
    auto m = random_model(21, 4, 50);
    WindowConfig cfg{.k = 10};
    auto base = run_indicator(m, cfg);

    auto transformed_values = m.values();
    for (auto &row : transformed_values) {
        row[1] = 3.5 * row[1] + 200.0; // affine, a > 0
        row[2] = -row[2];              // sign flip
    }
    auto transformed = make_model(transformed_values, m.process_ids());
    auto result = run_indicator(transformed, cfg);
    for (int t = 1; t <= m.t_max(); ++t)
        for (std::size_t i = 0; i < m.process_count(); ++i)
            CHECK_THAT(result.per_process[static_cast<std::size_t>(t - 1)][i],
                       WithinAbs(base.per_process[static_cast<std::size_t>(t - 1)][i], 1e-9));
}

TEST_CASE("permuting columns permutes V_i and keeps period totals")
{
    auto m = random_model(33, 4, 40);
    WindowConfig cfg{.k = 6};
    auto base = run_indicator(m, cfg);

    const std::vector<std::size_t> perm = {2, 0, 3, 1};
    std::vector<std::vector<double>> values;
    for (const auto &row : m.values()) {
        std::vector<double> out;
        for (std::size_t j : perm)
            out.push_back(row[j]);
        values.push_back(out);
    }
    std::vector<std::string> pids;
    for (std::size_t j : perm)
        pids.push_back(m.process_ids()[j]);
    auto permuted = run_indicator(make_model(values, pids), cfg);

    for (int t = 1; t <= m.t_max(); ++t) {
        CHECK_THAT(permuted.per_period_total[static_cast<std::size_t>(t - 1)],
                   WithinAbs(base.per_period_total[static_cast<std::size_t>(t - 1)], 1e-9));
        // the j-sum in V_i runs in permuted order, so only rounding-level equality
        for (std::size_t i = 0; i < perm.size(); ++i)
            CHECK_THAT(permuted.per_process[static_cast<std::size_t>(t - 1)][i],
                       WithinAbs(base.per_process[static_cast<std::size_t>(t - 1)][perm[i]],
                                 1e-9));
    }
}

TEST_CASE("worker count does not change the result")
{
    auto m = random_model(55, 6, 80);
    WindowConfig cfg{.k = 12};
    auto serial = run_indicator(m, cfg, 1);
    auto parallel = run_indicator(m, cfg, 4);
    CHECK(serial.grand_total == parallel.grand_total);
    CHECK(serial.per_process == parallel.per_process);
    CHECK(serial.per_period_total == parallel.per_period_total);
    CHECK(serial.degenerate_flags == parallel.degenerate_flags);
}

TEST_CASE("indicator_dynamics emits totals plus one trace per process")
{
    auto m = random_model(5, 2, 3);
    auto result = run_indicator(m, WindowConfig{.k = 2});
    auto records = indicator_dynamics(result);
    REQUIRE(records.size() == 3u * (1u + 2u));
    CHECK(records[0].t == 1);
    CHECK(records[0].series == "total");
    CHECK(records[1].series == "p1");
    CHECK(records[2].series == "p2");
    CHECK(records[3].t == 2);
}

TEST_CASE("pre-history feeds the first windows")
{
    // 12 pre-history periods, skip policy with k=12 works from t=1 on
    std::vector<std::vector<double>> vals;
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (int i = 0; i < 20; ++i)
        vals.push_back({dist(gen), dist(gen)});
    auto m = make_model(vals, {"a", "b"}, -11); // periods -11..8
    WindowConfig skip{.k = 12, .min_lags = 2, .policy = WarmupPolicy::skip};
    auto result = run_indicator(m, skip);
    CHECK(result.t_max() == 8);
    CHECK(result.degenerate_flags.empty());
    for (double total : result.per_period_total)
        CHECK(total >= 2.0);
}
