#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rftaxis/gradest.hpp"
#include "rftaxis/sensing.hpp"
#include "rftaxis/vec.hpp"

namespace rftaxis {

// a_k = a / (k+1+A)^alpha, h_k = h0 / (k+1)^gamma_s
struct GainSchedule {
    double a = 1.0;
    double A = 0.0;
    double alpha = 1.0;
    double h0 = 1.0;
    double gamma_s = 1.0 / 6.0;
};

struct ScheduleVerdict {
    bool positivity = false;
    bool a_to_zero = false;
    bool h_to_zero = false;
    bool sum_a_diverges = false;
    bool sum_ah_converges = false;
    bool sum_a2_over_h2_converges = false;
    bool beta_positive = false;
    bool normality_secondary = false;
    double beta = 0.0;
    double predicted_rate_exponent = 0.0;  // -beta/2

    bool valid() const {
        return positivity && a_to_zero && h_to_zero && sum_a_diverges &&
               sum_ah_converges && sum_a2_over_h2_converges && beta_positive;
    }
    bool asymptotically_normal() const {
        return valid() && beta_positive && normality_secondary;
    }
};

std::pair<double, double> gains(const GainSchedule& s, int k);

// p-series analysis of the power-law gain family. Exponent exactly 1 counts
// as divergent (harmonic boundary).
ScheduleVerdict check_schedule(const GainSchedule& s);

struct RunState {
    int k = 0;
    Vec x_hat;
};

enum class StopKind { max_iter, h_below, step_below };

struct StopRule {
    StopKind kind = StopKind::max_iter;
    double threshold = 0.0;
};

enum class Termination { max_iter, stop_rule, failure };

struct IterationRow {
    int k = 0;
    double a_k = 0.0, h_k = 0.0;
    Vec x_hat;
    Vec g_hat;
    Vec commanded;
    Vec achieved;
    std::vector<Vec> probes;
    std::vector<double> measurements;
};

struct RunRecord {
    std::vector<IterationRow> rows;   // present when trajectory recording is on
    std::vector<double> dist;         // distance to optimum per k, if known
    Vec final_x;
    int iterations = 0;
    Termination termination = Termination::max_iter;
    std::string failure_reason;
    ScheduleVerdict verdict;
    std::uint64_t seed = 0;
    std::uint64_t scenario_hash = 0;

    bool failed() const { return termination == Termination::failure; }
};

struct RunOptions {
    int max_iter = 100;
    StopRule stop;
    bool record_trajectory = true;
    std::optional<Vec> optimum;
};

// One optimizer update: estimate the descent gradient of the objective at
// state.x_hat with probe step h_k, command the step x_hat - a_k * g_hat,
// return the achieved position as the next iterate.
RunState fdsa_step(const RunState& state, const GainSchedule& sched,
                   const EstimatorConfig& est, SignalSource& src,
                   IterationRow* row = nullptr);

RunRecord run_fdsa(const Vec& start, const GainSchedule& sched, const EstimatorConfig& est,
                   SignalSource& src, const RunOptions& opt);

struct RateFit {
    double exponent = 0.0;
    double stderr_est = 0.0;
    int k_lo = 0, k_hi = 0;
};

// Slope of log(ensemble RMS distance) vs log(k) for k >= k_min.
// Requires >= 30 records sharing one schedule/scenario.
RateFit fit_rate(const std::vector<RunRecord>& records, int k_min);

} // namespace rftaxis
