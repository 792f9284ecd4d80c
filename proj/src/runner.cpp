#include "rftaxis/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <thread>

#include "rftaxis/errors.hpp"
#include "rftaxis/rng.hpp"

namespace rftaxis {

namespace {

RunRecord run_one(const Scenario& sc, std::uint64_t run_index, bool record_trajectory,
                  const std::optional<Vec>& optimum) {
    std::uint64_t run_seed = derive_run_seed(sc.master_seed, run_index);
    std::vector<std::unique_ptr<Sensor>> sensors;
    for (size_t j = 0; j < sc.fields.size(); ++j)
        sensors.push_back(
            std::make_unique<Sensor>(&sc.fields[j], sc.noise, derive_node_seed(run_seed, j)));

    std::unique_ptr<SignalSource> obj;
    if (sc.objective == ObjectiveKind::seek_source)
        obj = std::make_unique<SeekObjective>(sensors[0].get());
    else
        obj = std::make_unique<BridgeObjective>(sensors[0].get(), sensors[1].get(),
                                                sc.bridge_offset_db);

    RunOptions opt;
    opt.max_iter = sc.max_iter;
    opt.stop = sc.stop;
    opt.record_trajectory = record_trajectory;
    opt.optimum = optimum;
    RunRecord rec = run_fdsa(sc.start, sc.schedule, sc.estimator, *obj, opt);
    rec.seed = run_seed;
    rec.scenario_hash = sc.hash;
    return rec;
}

double quantile(std::vector<double>& v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    double pos = q * (v.size() - 1);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, v.size() - 1);
    double frac = pos - lo;
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

} // namespace

RunRecord run_single(const Scenario& sc, std::uint64_t run_index, bool record_trajectory) {
    return run_one(sc, run_index, record_trajectory, resolve_optimum(sc));
}

EnsembleSummary summarize(const Scenario& sc, const std::vector<RunRecord>& records) {
    EnsembleSummary s;
    s.n_runs = static_cast<int>(records.size());
    s.success_threshold_m = sc.success_threshold_m;
    s.k_min = sc.rate_k_min > 0 ? sc.rate_k_min : std::max(1, sc.max_iter / 10);
    for (const auto& r : records)
        if (r.failed()) ++s.n_failed;

    s.has_optimum = !records.empty() && !records.front().dist.empty();
    if (!s.has_optimum) return s;

    std::vector<double> finals;
    finals.reserve(records.size());
    for (const auto& r : records)
        if (!r.dist.empty()) finals.push_back(r.dist.back());
    double below = 0.0;
    for (double d : finals)
        if (d < s.success_threshold_m) below += 1.0;
    s.success_fraction = finals.empty() ? 0.0 : below / finals.size();
    s.median_final_m = quantile(finals, 0.5);

    // curves and rate fit use completed runs of full length
    std::vector<const RunRecord*> good;
    size_t full_len = static_cast<size_t>(sc.max_iter) + 1;
    for (const auto& r : records)
        if (!r.failed() && r.dist.size() == full_len) good.push_back(&r);
    if (good.empty()) return s;

    s.rms_curve.resize(full_len);
    s.median_curve.resize(full_len);
    s.q10_curve.resize(full_len);
    s.q90_curve.resize(full_len);
    std::vector<double> col(good.size());
    for (size_t k = 0; k < full_len; ++k) {
        double ms = 0.0;
        for (size_t i = 0; i < good.size(); ++i) {
            double d = good[i]->dist[k];
            col[i] = d;
            ms += d * d;
        }
        s.rms_curve[k] = std::sqrt(ms / good.size());
        s.median_curve[k] = quantile(col, 0.5);
        s.q10_curve[k] = quantile(col, 0.1);
        s.q90_curve[k] = quantile(col, 0.9);
    }

    if (good.size() >= 30 && s.k_min >= 1 &&
        static_cast<size_t>(s.k_min) + 1 < full_len) {
        std::vector<RunRecord> views;  // fit_rate wants records; pass distances through
        views.reserve(good.size());
        for (const auto* r : good) {
            RunRecord v;
            v.dist = r->dist;
            views.push_back(std::move(v));
        }
        try {
            RateFit fit = fit_rate(views, s.k_min);
            s.rate_fitted = true;
            s.rate_exponent = fit.exponent;
            s.rate_stderr = fit.stderr_est;
        } catch (const InsufficientEnsemble&) {
            s.rate_fitted = false;
        }
    }
    return s;
}

std::vector<RunRecord> run_ensemble(const Scenario& sc, int n_runs, int workers,
                                    EnsembleSummary& summary) {
    if (n_runs < 1) throw ConfigError("n_runs must be >= 1");
    auto optimum = resolve_optimum(sc);
    std::vector<RunRecord> out(n_runs);
    int w = std::clamp(workers, 1, n_runs);
    if (w == 1) {
        for (int i = 0; i < n_runs; ++i)
            out[i] = run_one(sc, i, false, optimum);
    } else {
        std::atomic<int> next{0};
        auto work = [&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n_runs) break;
                out[i] = run_one(sc, i, false, optimum);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (int t = 0; t < w; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    summary = summarize(sc, out);
    return out;
}

} // namespace rftaxis
