#pragma once

#include <string>
#include <vector>

#include "rftaxis/runner.hpp"
#include "rftaxis/scenario.hpp"

namespace rftaxis {

// All numeric CSV/JSON output is printed with 12 significant digits.
std::string format_sig(double v);

// Columns: k,ak,hk,x1..xp,gx1..gxp[,dist]. One row per recorded iterate;
// the final row is the resting position with zero gradient columns.
void export_trajectory_csv(const RunRecord& rec, const std::string& path);

// Keys: scenario, scenario_hash, master_seed, n_runs, n_failed, k_min,
// success_threshold_m, success_fraction, median_final_m, rate_exponent,
// rate_stderr, curve[].
void export_summary_json(const EnsembleSummary& s, const Scenario& sc,
                         const std::string& path);

// Raster of the noise-free field: columns x,y[,z],f_db; points inside the
// feasibility floor are skipped.
void export_field_csv(const FieldModel& model, const Vec& lo, const Vec& hi, double res,
                      const std::string& path);

struct GradcheckRow {
    double sigma = 0.0;
    double h = 0.0;
    double predicted_var = 0.0;
    double empirical_var = 0.0;
    double bias_bound = 0.0;
    double empirical_bias = 0.0;
};

void export_gradcheck_csv(const std::vector<GradcheckRow>& rows, const std::string& path);

} // namespace rftaxis
