// rf-taxis: config-driven batch CLI for signal-strength taxis experiments.
// Exit codes: 0 ok, 1 config error, 2 runtime failure, 3 check failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rftaxis/export.hpp"
#include "rftaxis/gradest.hpp"
#include "rftaxis/runner.hpp"

namespace fs = std::filesystem;
using namespace rftaxis;

namespace {

std::string out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("RF_TAXIS_OUT_DIR"); env && *env) return env;
    return ".";
}

std::string out_path(const std::string& dir, const std::string& stem) {
    fs::create_directories(dir);
    return (fs::path(dir) / stem).string();
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::max_iter: return "max_iter";
        case Termination::stop_rule: return "stop_rule";
        default: return "failure";
    }
}

nlohmann::json verdict_json(const ScheduleVerdict& v) {
    return {{"positivity", v.positivity},
            {"a_to_zero", v.a_to_zero},
            {"h_to_zero", v.h_to_zero},
            {"sum_a_diverges", v.sum_a_diverges},
            {"sum_ah_converges", v.sum_ah_converges},
            {"sum_a2_over_h2_converges", v.sum_a2_over_h2_converges},
            {"beta_positive", v.beta_positive},
            {"normality_secondary", v.normality_secondary},
            {"beta", v.beta},
            {"predicted_rate_exponent", v.predicted_rate_exponent},
            {"valid", v.valid()},
            {"asymptotically_normal", v.asymptotically_normal()}};
}

void warn_if_invalid(const Scenario& sc) {
    auto v = check_schedule(sc.schedule);
    if (!v.valid())
        std::cerr << "warning: gain schedule fails convergence conditions; "
                     "proceeding anyway (verdict recorded)\n";
}

int cmd_run(const std::string& config, const std::string& dir_flag, std::uint64_t seed,
            bool seed_set, std::uint64_t run_index) {
    Scenario sc = load_scenario(config);
    if (seed_set) sc.master_seed = seed;
    warn_if_invalid(sc);
    RunRecord rec = run_single(sc, run_index, true);

    std::string dir = out_dir(dir_flag);
    std::string csv = out_path(dir, sc.name + "_trajectory.csv");
    export_trajectory_csv(rec, csv);

    nlohmann::json meta;
    meta["scenario"] = sc.name;
    {
        std::ostringstream os;
        os << std::hex << sc.hash;
        meta["scenario_hash"] = os.str();
    }
    meta["master_seed"] = sc.master_seed;
    meta["run_index"] = run_index;
    meta["run_seed"] = rec.seed;
    meta["iterations"] = rec.iterations;
    meta["termination"] = termination_name(rec.termination);
    if (rec.failed()) meta["failure_reason"] = rec.failure_reason;
    meta["final_m"] = rec.final_x.to_vector();
    if (!rec.dist.empty()) meta["final_dist_m"] = rec.dist.back();
    meta["schedule_verdict"] = verdict_json(rec.verdict);
    std::string mjson = out_path(dir, sc.name + "_run.json");
    {
        std::ofstream out(mjson, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + mjson);
        out << meta.dump(2) << "\n";
    }
    std::cout << "wrote " << csv << "\nwrote " << mjson << "\n";
    if (rec.failed()) {
        std::cerr << "run failed: " << rec.failure_reason << "\n";
        return 2;
    }
    return 0;
}

int cmd_mc(const std::string& config, const std::string& dir_flag, int runs, int workers,
           std::uint64_t seed, bool seed_set, int kmin) {
    Scenario sc = load_scenario(config);
    if (seed_set) sc.master_seed = seed;
    if (kmin > 0) sc.rate_k_min = kmin;
    warn_if_invalid(sc);
    EnsembleSummary sum;
    run_ensemble(sc, runs, workers, sum);

    std::string path = out_path(out_dir(dir_flag), sc.name + "_summary.json");
    export_summary_json(sum, sc, path);
    std::cout << "wrote " << path << "\n";
    std::cout << "runs=" << sum.n_runs << " failed=" << sum.n_failed;
    if (sum.has_optimum)
        std::cout << " median_final_m=" << format_sig(sum.median_final_m)
                  << " success_fraction=" << format_sig(sum.success_fraction);
    if (sum.rate_fitted)
        std::cout << " rate_exponent=" << format_sig(sum.rate_exponent) << " (se "
                  << format_sig(sum.rate_stderr) << ")";
    std::cout << "\n";
    return 0;
}

int cmd_check_schedule(double a, double A, double alpha, double h0, double gamma_s) {
    GainSchedule s{a, A, alpha, h0, gamma_s};
    ScheduleVerdict v = check_schedule(s);
    auto line = [](const char* name, bool ok) {
        std::cout << "  " << name;
        for (int i = static_cast<int>(std::string(name).size()); i < 34; ++i) std::cout << ' ';
        std::cout << (ok ? "pass" : "FAIL") << "\n";
    };
    std::cout << "gain schedule: a_k = " << a << "/(k+1+" << A << ")^" << alpha
              << ", h_k = " << h0 << "/(k+1)^" << gamma_s << "\n";
    line("positivity (a, h0 > 0, A >= 0)", v.positivity);
    line("a_k -> 0", v.a_to_zero);
    line("h_k -> 0", v.h_to_zero);
    line("sum a_k diverges", v.sum_a_diverges);
    line("sum a_k h_k converges", v.sum_ah_converges);
    line("sum a_k^2/h_k^2 converges", v.sum_a2_over_h2_converges);
    line("beta = alpha - 2 gamma_s > 0", v.beta_positive);
    line("3 gamma_s - alpha/2 >= 0", v.normality_secondary);
    std::cout << "  beta = " << format_sig(v.beta)
              << ", predicted rate exponent = " << format_sig(v.predicted_rate_exponent)
              << "\n";
    std::cout << "  valid: " << (v.valid() ? "yes" : "no")
              << ", asymptotically normal: " << (v.asymptotically_normal() ? "yes" : "no")
              << "\n";
    return v.valid() ? 0 : 3;
}

int cmd_field(const std::string& config, const std::string& dir_flag,
              const std::vector<double>& bbox, double res, int node) {
    Scenario sc = load_scenario(config);
    if (node < 0 || node >= static_cast<int>(sc.fields.size()))
        throw ConfigError("--node out of range");
    if (static_cast<int>(bbox.size()) != 2 * sc.dim)
        throw ConfigError("--bbox needs " + std::to_string(2 * sc.dim) +
                          " numbers (lo..., hi...) for dimension " + std::to_string(sc.dim));
    Vec lo(sc.dim), hi(sc.dim);
    for (int i = 0; i < sc.dim; ++i) {
        lo[i] = bbox[i];
        hi[i] = bbox[sc.dim + i];
        if (hi[i] <= lo[i]) throw ConfigError("--bbox hi must exceed lo");
    }
    std::string path = out_path(out_dir(dir_flag), sc.name + "_field.csv");
    export_field_csv(sc.fields[node], lo, hi, res, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_gradcheck(const std::string& config, const std::string& dir_flag, int reps,
                  std::vector<double> sigmas, std::vector<double> steps, double tol_var) {
    Scenario sc = load_scenario(config);
    const FieldModel& field = sc.fields[0];
    if (!field.walls.empty() || field.fading)
        throw ConfigError("gradcheck needs a pure path-loss node (no walls, no fading)");
    if (sigmas.empty()) sigmas = {1.0, 2.0};
    if (steps.empty()) steps = {0.25, 0.5, 1.0};

    Vec x = sc.start;
    double g_true = analytic_gradient(field, x)[0];
    bool ok = true;
    std::vector<GradcheckRow> rows;
    int combo = 0;
    for (double sigma : sigmas) {
        for (double h : steps) {
            GradcheckRow row;
            row.sigma = sigma;
            row.h = h;
            row.predicted_var = predicted_variance(sigma, h);
            Sensor noisy(&field, {sigma, MotorMode::none, 0.0},
                         derive_node_seed(sc.master_seed, 100 + combo));
            double sum = 0.0, sumsq = 0.0;
            for (int i = 0; i < reps; ++i) {
                double g = estimate_central_difference(noisy, x, h).g_hat[0];
                sum += g;
                sumsq += g * g;
            }
            double mean = sum / reps;
            row.empirical_var = sumsq / reps - mean * mean;
            row.bias_bound = predicted_bias_bound(field.path_loss, x, h, field.epsilon_floor);
            Sensor clean(&field, {0.0, MotorMode::none, 0.0}, 1);
            row.empirical_bias =
                std::abs(estimate_central_difference(clean, x, h).g_hat[0] - g_true);
            rows.push_back(row);

            bool var_ok =
                std::abs(row.empirical_var - row.predicted_var) <= tol_var * row.predicted_var;
            bool bias_ok = row.empirical_bias <= row.bias_bound * (1.0 + 1e-9);
            if (!var_ok || !bias_ok) ok = false;
            std::cout << "sigma=" << sigma << " h=" << h
                      << " var " << format_sig(row.empirical_var) << "/"
                      << format_sig(row.predicted_var) << (var_ok ? " ok" : " FAIL")
                      << "; bias " << format_sig(row.empirical_bias) << " <= "
                      << format_sig(row.bias_bound) << (bias_ok ? " ok" : " FAIL") << "\n";
            ++combo;
        }
    }
    std::string path = out_path(out_dir(dir_flag), sc.name + "_gradcheck.csv");
    export_gradcheck_csv(rows, path);
    std::cout << "wrote " << path << "\n";
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"signal-strength taxis simulator"};
    app.require_subcommand(1);

    std::string config, dir_flag;
    std::uint64_t seed = 0;
    std::uint64_t run_index = 0;
    bool seed_set = false;
    int runs = 100, workers = 1, kmin = 0, reps = 100000, node = 0;
    double res = 0.25, tol_var = 0.05;
    std::vector<double> bbox, sigmas, steps;
    double cs_a = 1.0, cs_A = 0.0, cs_alpha = 1.0, cs_h0 = 1.0, cs_gamma = 1.0 / 6.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config, "scenario config (JSON)")->required();
        cmd->add_option("--out", dir_flag, "output directory (or RF_TAXIS_OUT_DIR)");
    };

    CLI::App* run = app.add_subcommand("run", "single run, full trajectory export");
    add_common(run);
    run->add_option("--seed", seed, "override master seed")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--run-index", run_index, "ensemble index to reproduce");

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo ensemble");
    add_common(mc);
    mc->add_option("--runs", runs, "number of runs")->required();
    mc->add_option("--workers", workers, "worker threads");
    mc->add_option("--kmin", kmin, "first iteration of the rate fit");
    mc->add_option("--seed", seed, "override master seed")->each([&](const std::string&) {
        seed_set = true;
    });

    CLI::App* cs = app.add_subcommand("check-schedule", "gain-sequence condition table");
    cs->add_option("--a", cs_a, "gain numerator a")->required();
    cs->add_option("--A", cs_A, "stability constant A");
    cs->add_option("--alpha", cs_alpha, "gain exponent alpha")->required();
    cs->add_option("--h0", cs_h0, "step numerator h0")->required();
    cs->add_option("--gamma", cs_gamma, "step exponent gamma_s")->required();

    CLI::App* fieldcmd = app.add_subcommand("field", "noise-free field raster CSV");
    add_common(fieldcmd);
    fieldcmd->add_option("--bbox", bbox, "lo... hi... (2*dimension numbers)")
        ->required()
        ->delimiter(',');
    fieldcmd->add_option("--res", res, "grid resolution, m");
    fieldcmd->add_option("--node", node, "node index");

    CLI::App* gc = app.add_subcommand("gradcheck", "variance/bias Monte Carlo check");
    add_common(gc);
    gc->add_option("--reps", reps, "estimates per (sigma, h)");
    gc->add_option("--sigmas", sigmas, "noise levels, dB")->delimiter(',');
    gc->add_option("--steps", steps, "half-steps h, m")->delimiter(',');
    gc->add_option("--tol-var", tol_var, "relative variance tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(config, dir_flag, seed, seed_set, run_index);
        if (mc->parsed()) return cmd_mc(config, dir_flag, runs, workers, seed, seed_set, kmin);
        if (cs->parsed()) return cmd_check_schedule(cs_a, cs_A, cs_alpha, cs_h0, cs_gamma);
        if (fieldcmd->parsed()) return cmd_field(config, dir_flag, bbox, res, node);
        if (gc->parsed()) return cmd_gradcheck(config, dir_flag, reps, sigmas, steps, tol_var);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
