#pragma once

#include <vector>

#include "rftaxis/sa.hpp"
#include "rftaxis/scenario.hpp"

namespace rftaxis {

struct EnsembleSummary {
    int n_runs = 0;
    int n_failed = 0;
    int k_min = 0;
    bool has_optimum = false;
    double success_threshold_m = 2.0;
    double success_fraction = 0.0;
    double median_final_m = 0.0;
    bool rate_fitted = false;
    double rate_exponent = 0.0;
    double rate_stderr = 0.0;
    // per-k distance statistics over non-failed runs, k = 0..max_iter
    std::vector<double> rms_curve, median_curve, q10_curve, q90_curve;
};

// Deterministic single run; run_index selects the derived seed, so index 0
// reproduces the first ensemble member.
RunRecord run_single(const Scenario& sc, std::uint64_t run_index = 0,
                     bool record_trajectory = true);

// n_runs independent runs with seeds derived from the master seed by index.
// Results and summary are identical for any worker count.
std::vector<RunRecord> run_ensemble(const Scenario& sc, int n_runs, int workers,
                                    EnsembleSummary& summary);

EnsembleSummary summarize(const Scenario& sc, const std::vector<RunRecord>& records);

} // namespace rftaxis
