// twinsight: digital-twin enterprise analytics CLI.
//
// Subcommands: run, compare, synth, validate. Exit codes: 0 success,
// 1 validation error, 2 budget violation, 3 I/O error, 4 shape mismatch
// (compare only).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "twinsight/csv.hpp"
#include "twinsight/enterprise.hpp"
#include "twinsight/indicator.hpp"
#include "twinsight/report.hpp"
#include "twinsight/scenario.hpp"
#include "twinsight/synth.hpp"

namespace fs = std::filesystem;
using namespace twinsight;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitIo = 3;
constexpr int kExitShape = 4;

bool g_error_json = false;

bool log_enabled()
{
    const char *level = std::getenv("TWINSIGHT_LOG");
    return level && *level && std::string(level) != "off";
}

void log_line(const std::string &msg)
{
    if (log_enabled())
        std::cerr << "[twinsight] " << msg << '\n';
}

int fail(int code, const std::string &msg)
{
    if (g_error_json) {
        nlohmann::ordered_json j;
        j["error"] = msg;
        j["exit"] = code;
        std::cerr << j.dump() << '\n';
    } else {
        std::cerr << "error: " << msg << '\n';
    }
    return code;
}

struct RunOptions {
    std::string model_path;
    std::string replay_totals;
    std::string competencies_path;
    std::string scenario_path;
    int window = 12;
    std::string warmup = "growing";
    std::string out_dir = ".";
    std::string format = "both";
    std::string label;
    unsigned threads = 1;
    double cost_tolerance = 1e-6;
};

WindowConfig make_window_config(const RunOptions &opt)
{
    WindowConfig cfg;
    cfg.k = opt.window;
    cfg.policy = opt.warmup == "skip" ? WarmupPolicy::skip : WarmupPolicy::growing_window;
    cfg.validate();
    return cfg;
}

// Produces the IndicatorResult for one manifest: either a replay of a
// precomputed totals table, or a full model run with an optional
// scenario applied first. Budget violations throw out as exit-2.
struct BudgetViolation {
    BudgetCheck check;
};

IndicatorResult run_mode(const RunOptions &opt)
{
    if (!opt.replay_totals.empty()) {
        auto totals = load_totals(opt.replay_totals);
        auto result = replay_totals(totals, opt.label.empty() ? opt.replay_totals : opt.label);
        result.k = opt.window;
        result.policy = make_window_config(opt).policy;
        log_line("replayed " + std::to_string(totals.size()) + " totals from " +
                 opt.replay_totals);
        return result;
    }

    auto model = load_enterprise_model(opt.model_path,
                                       opt.label.empty() ? opt.model_path : opt.label);
    ControlledSeries series = model;
    if (!opt.scenario_path.empty()) {
        auto cm = load_competency_matrix(opt.competencies_path);
        auto sc = load_scenario(opt.scenario_path);
        auto budget = check_budget(sc);
        if (!budget.passed)
            throw BudgetViolation{budget};
        const double applied = applied_additive_total(model, cm, sc);
        if (std::abs(applied - sc.intervention_cost) > opt.cost_tolerance)
            std::cerr << "warning: declared intervention_cost " << fmt_full(sc.intervention_cost)
                      << " differs from applied additive total " << fmt_full(applied) << '\n';
        series = apply_scenario(model, cm, sc);
    }
    auto cfg = make_window_config(opt);
    log_line("running indicator: n=" + std::to_string(series.process_count()) +
             " T=" + std::to_string(series.t_max()) + " k=" + std::to_string(cfg.k));
    return run_indicator(series, cfg, opt.threads);
}

void write_reports(const IndicatorResult &result, const RunOptions &opt)
{
    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    const bool csv = opt.format == "csv" || opt.format == "both";
    const bool json = opt.format == "json" || opt.format == "both";
    if (csv) {
        write_per_process_csv(result, (dir / "per_process.csv").string());
        write_totals_csv(result, (dir / "totals.csv").string());
        write_dynamics_csv(result, (dir / "dynamics.csv").string());
    }
    if (json)
        write_summary_json(result, (dir / "summary.json").string());
}

void add_run_options(CLI::App *cmd, RunOptions &opt, bool require_input)
{
    auto *model = cmd->add_option("--model", opt.model_path, "enterprise model CSV");
    auto *replay = cmd->add_option("--replay-totals", opt.replay_totals,
                                   "precomputed per-period totals CSV (t,total)");
    model->excludes(replay);
    if (require_input) {
        // one of --model / --replay-totals, checked in the callback
    }
    cmd->add_option("--competencies", opt.competencies_path, "competency matrix CSV");
    cmd->add_option("--scenario", opt.scenario_path, "scenario key-value file")
        ->needs(cmd->get_option("--competencies"));
    cmd->add_option("-k,--window", opt.window, "window length in periods");
    cmd->add_option("--warmup", opt.warmup, "warm-up policy")
        ->check(CLI::IsMember({"growing", "skip"}));
    cmd->add_option("--out-dir", opt.out_dir, "report output directory");
    cmd->add_option("--format", opt.format, "report formats")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--label", opt.label, "mode label");
    cmd->add_option("--threads", opt.threads, "worker threads for per-period computation");
    cmd->add_option("--cost-tolerance", opt.cost_tolerance,
                    "declared-vs-applied cost warning tolerance");
}

int cmd_run(const RunOptions &opt)
{
    if (opt.model_path.empty() && opt.replay_totals.empty())
        return fail(kExitValidation, "run needs --model or --replay-totals");
    try {
        auto result = run_mode(opt);
        write_reports(result, opt);
        std::cout << "mode '" << result.mode_label << "': grand total V = "
                  << fmt_full(result.grand_total) << " over " << result.t_max()
                  << " periods (" << result.degenerate_flags.size()
                  << " degenerate flags)\n";
        return 0;
    } catch (const BudgetViolation &v) {
        return fail(kExitBudget, "budget violation: cost " + fmt_full(v.check.cost) +
                                     " exceeds budget " + fmt_full(v.check.budget) +
                                     " by " + fmt_full(v.check.excess));
    } catch (const IoError &e) {
        return fail(kExitIo, e.what());
    } catch (const ValidationError &e) {
        return fail(kExitValidation, e.what());
    }
}

int cmd_compare(const RunOptions &baseline_opt, const RunOptions &intervention_opt,
                const std::string &out_dir)
{
    try {
        auto baseline = run_mode(baseline_opt);
        auto intervention = run_mode(intervention_opt);

        ModeComparison cmp;
        try {
            cmp = compare_modes(baseline, intervention);
        } catch (const ValidationError &e) {
            return fail(kExitShape, e.what());
        }

        // Budget status and cost delta come from the intervention side
        // when it carries a scenario; replay comparisons report cost 0.
        BudgetCheck budget;
        double cost_delta = 0.0;
        if (!intervention_opt.scenario_path.empty()) {
            auto sc = load_scenario(intervention_opt.scenario_path);
            budget = check_budget(sc);
            cost_delta = sc.intervention_cost;
        }

        fs::create_directories(out_dir);
        const fs::path dir(out_dir);
        write_comparison_json(cmp, budget, cost_delta, (dir / "comparison.json").string());
        write_delta_csv(cmp, (dir / "delta.csv").string());
        std::cout << "delta V = " << fmt_full(cmp.delta_v) << " ("
                  << fmt_full(cmp.intervention_total) << " - " << fmt_full(cmp.baseline_total)
                  << ")\n";
        return 0;
    } catch (const BudgetViolation &v) {
        return fail(kExitBudget, "budget violation: cost " + fmt_full(v.check.cost) +
                                     " exceeds budget " + fmt_full(v.check.budget));
    } catch (const IoError &e) {
        return fail(kExitIo, e.what());
    } catch (const ValidationError &e) {
        return fail(kExitValidation, e.what());
    }
}

int cmd_synth(const std::string &spec_path, const std::string &out_path)
{
    try {
        auto spec = load_synth_spec(spec_path);
        auto model = generate(spec);
        write_enterprise_model(model, out_path);
        std::cout << "wrote " << model.t_max() << " periods x " << model.process_count()
                  << " processes to " << out_path << '\n';
        return 0;
    } catch (const IoError &e) {
        return fail(kExitIo, e.what());
    } catch (const ValidationError &e) {
        return fail(kExitValidation, e.what());
    }
}

int cmd_validate(const RunOptions &opt)
{
    int bad = 0;
    std::optional<EnterpriseModel> model;
    std::optional<CompetencyMatrix> cm;
    auto report = [&](const std::string &path, auto &&check) {
        try {
            check();
            std::cout << path << ": ok\n";
        } catch (const std::exception &e) {
            ++bad;
            std::cerr << path << ": " << e.what() << '\n';
        }
    };
    if (!opt.model_path.empty())
        report(opt.model_path, [&] { model = load_enterprise_model(opt.model_path); });
    if (!opt.competencies_path.empty())
        report(opt.competencies_path, [&] {
            cm = load_competency_matrix(opt.competencies_path);
            if (model)
                cm->check_compatible(*model);
        });
    if (!opt.scenario_path.empty())
        report(opt.scenario_path, [&] {
            auto sc = load_scenario(opt.scenario_path);
            sc.validate(cm ? &*cm : nullptr);
        });
    if (!opt.replay_totals.empty())
        report(opt.replay_totals, [&] { load_totals(opt.replay_totals); });
    return bad == 0 ? 0 : kExitValidation;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"digital-twin enterprise analytics"};
    app.require_subcommand(1);
    app.add_flag("--error-json", g_error_json, "emit errors as JSON on stderr");

    RunOptions run_opt;
    auto *run = app.add_subcommand("run", "compute indicator reports for one mode");
    add_run_options(run, run_opt, true);

    RunOptions base_opt, intr_opt;
    std::string compare_out = ".";
    auto *compare = app.add_subcommand("compare", "compare baseline vs intervention modes");
    compare->add_option("--model", base_opt.model_path, "enterprise model CSV (both modes)");
    compare->add_option("--replay-totals", base_opt.replay_totals, "baseline totals CSV");
    compare->add_option("--intervention-totals", intr_opt.replay_totals,
                        "intervention totals CSV");
    compare->add_option("--competencies", base_opt.competencies_path, "competency matrix CSV");
    compare->add_option("--scenario", intr_opt.scenario_path,
                        "scenario applied to the intervention mode");
    compare->add_option("-k,--window", base_opt.window, "window length in periods");
    compare->add_option("--warmup", base_opt.warmup, "warm-up policy")
        ->check(CLI::IsMember({"growing", "skip"}));
    compare->add_option("--out-dir", compare_out, "report output directory");
    compare->add_option("--label", base_opt.label, "baseline mode label");
    compare->add_option("--intervention-label", intr_opt.label, "intervention mode label");
    compare->add_option("--threads", base_opt.threads, "worker threads");

    std::string synth_spec, synth_out;
    auto *synth = app.add_subcommand("synth", "generate a synthetic enterprise model CSV");
    synth->add_option("--spec", synth_spec, "synth spec key-value file")->required();
    synth->add_option("--out", synth_out, "output model CSV path")->required();

    RunOptions val_opt;
    auto *validate = app.add_subcommand("validate", "validate input files without computing");
    validate->add_option("--model", val_opt.model_path, "enterprise model CSV");
    validate->add_option("--competencies", val_opt.competencies_path, "competency matrix CSV");
    validate->add_option("--scenario", val_opt.scenario_path, "scenario key-value file");
    validate->add_option("--replay-totals", val_opt.replay_totals, "totals CSV");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(run_opt);
    if (compare->parsed()) {
        // Baseline: the model untouched (or baseline totals). Intervention:
        // the same model with the scenario applied (or intervention totals).
        intr_opt.model_path = base_opt.model_path;
        intr_opt.competencies_path = base_opt.competencies_path;
        intr_opt.window = base_opt.window;
        intr_opt.warmup = base_opt.warmup;
        intr_opt.threads = base_opt.threads;
        if (intr_opt.label.empty())
            intr_opt.label = intr_opt.replay_totals.empty() ? "intervention"
                                                            : intr_opt.replay_totals;
        if (base_opt.label.empty())
            base_opt.label = "baseline";
        if (base_opt.model_path.empty() && base_opt.replay_totals.empty())
            return fail(kExitValidation, "compare needs --model or --replay-totals");
        if (!base_opt.replay_totals.empty() && intr_opt.replay_totals.empty())
            return fail(kExitValidation, "compare with --replay-totals needs --intervention-totals");
        return cmd_compare(base_opt, intr_opt, compare_out);
    }
    if (synth->parsed())
        return cmd_synth(synth_spec, synth_out);
    if (validate->parsed())
        return cmd_validate(val_opt);
    return 0;
}
