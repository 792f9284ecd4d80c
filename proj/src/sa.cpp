#include "rftaxis/sa.hpp"

#include <cmath>

#include "rftaxis/errors.hpp"

namespace rftaxis {

std::pair<double, double> gains(const GainSchedule& s, int k) {
    return {s.a / std::pow(k + 1 + s.A, s.alpha), s.h0 / std::pow(k + 1, s.gamma_s)};
}

ScheduleVerdict check_schedule(const GainSchedule& s) {
    ScheduleVerdict v;
    v.positivity = s.a > 0.0 && s.h0 > 0.0 && s.A >= 0.0;
    v.a_to_zero = s.alpha > 0.0;
    v.h_to_zero = s.gamma_s > 0.0;
    v.sum_a_diverges = s.alpha <= 1.0;
    v.sum_ah_converges = s.alpha + s.gamma_s > 1.0;
    v.sum_a2_over_h2_converges = 2.0 * s.alpha - 2.0 * s.gamma_s > 1.0;
    v.beta = s.alpha - 2.0 * s.gamma_s;
    v.beta_positive = v.beta > 0.0;
    v.normality_secondary = 3.0 * s.gamma_s - s.alpha / 2.0 >= 0.0;
    v.predicted_rate_exponent = -v.beta / 2.0;
    return v;
}

RunState fdsa_step(const RunState& state, const GainSchedule& sched,
                   const EstimatorConfig& est, SignalSource& src, IterationRow* row) {
    auto [a_k, h_k] = gains(sched, state.k);
    GradientEstimate g = estimate_gradient(src, state.x_hat, h_k, est);
    Vec target = state.x_hat - g.g_hat * a_k;
    Vec achieved = src.move(state.x_hat, target);
    if (row) {
        row->k = state.k;
        row->a_k = a_k;
        row->h_k = h_k;
        row->x_hat = state.x_hat;
        row->g_hat = g.g_hat;
        row->commanded = target;
        row->achieved = achieved;
    }
    return RunState{state.k + 1, achieved};
}

namespace {

// wraps the objective so recorded runs capture every probe and measurement
class RecordingSource : public SignalSource {
public:
    RecordingSource(SignalSource& inner, IterationRow& row) : inner_(inner), row_(row) {}
    double sample(const Vec& x) override {
        double v = inner_.sample(x);
        row_.probes.push_back(x);
        row_.measurements.push_back(v);
        return v;
    }
    Vec move(const Vec& from, const Vec& to) override { return inner_.move(from, to); }
    int dim() const override { return inner_.dim(); }
    bool in_domain(const Vec& x) const override { return inner_.in_domain(x); }

private:
    SignalSource& inner_;
    IterationRow& row_;
};

} // namespace

RunRecord run_fdsa(const Vec& start, const GainSchedule& sched, const EstimatorConfig& est,
                   SignalSource& src, const RunOptions& opt) {
    RunRecord rec;
    rec.verdict = check_schedule(sched);
    if (opt.optimum) rec.dist.reserve(opt.max_iter + 2);
    if (opt.record_trajectory) rec.rows.reserve(opt.max_iter + 1);

    auto push_dist = [&](const Vec& x) {
        if (opt.optimum) rec.dist.push_back((x - *opt.optimum).norm());
    };
    // trailing row for the position the run came to rest at (no step data)
    auto push_rest_row = [&](const RunState& st) {
        if (!opt.record_trajectory) return;
        IterationRow last;
        last.k = st.k;
        auto [a_k, h_k] = gains(sched, st.k);
        last.a_k = a_k;
        last.h_k = h_k;
        last.x_hat = st.x_hat;
        last.g_hat = Vec(st.x_hat.dim());
        last.commanded = st.x_hat;
        last.achieved = st.x_hat;
        rec.rows.push_back(std::move(last));
    };

    RunState state{0, start};
    rec.termination = Termination::max_iter;
    while (true) {
        push_dist(state.x_hat);
        if (state.k >= opt.max_iter) {
            push_rest_row(state);
            break;
        }
        auto [a_k, h_k] = gains(sched, state.k);
        (void)a_k;
        if (opt.stop.kind == StopKind::h_below && h_k < opt.stop.threshold) {
            rec.termination = Termination::stop_rule;
            push_rest_row(state);
            break;
        }
        Vec prev_x = state.x_hat;
        try {
            if (opt.record_trajectory) {
                IterationRow row;
                RecordingSource rs(src, row);
                state = fdsa_step(state, sched, est, rs, &row);
                rec.rows.push_back(std::move(row));
            } else {
                state = fdsa_step(state, sched, est, src, nullptr);
            }
        } catch (const DistanceTooSmall& e) {
            rec.termination = Termination::failure;
            rec.failure_reason = std::string("probe out of domain: ") + e.what();
            break;
        } catch (const ProbeOutOfDomain& e) {
            rec.termination = Termination::failure;
            rec.failure_reason = e.what();
            break;
        }
        if (opt.stop.kind == StopKind::step_below &&
            (state.x_hat - prev_x).norm() < opt.stop.threshold) {
            rec.termination = Termination::stop_rule;
            push_dist(state.x_hat);
            push_rest_row(state);
            break;
        }
    }
    rec.final_x = state.x_hat;
    rec.iterations = state.k;
    return rec;
}

RateFit fit_rate(const std::vector<RunRecord>& records, int k_min) {
    if (records.size() < 30)
        throw InsufficientEnsemble("rate fit needs at least 30 runs");
    size_t len = records.front().dist.size();
    for (const auto& r : records)
        if (r.dist.size() != len || len == 0)
            throw InsufficientEnsemble("runs disagree on trajectory length");
    if (k_min < 1 || static_cast<size_t>(k_min) + 1 >= len)
        throw InsufficientEnsemble("k_min outside the recorded range");

    RateFit fit;
    fit.k_lo = k_min;
    fit.k_hi = static_cast<int>(len) - 1;
    std::vector<double> xs, ys;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = k_min; k < len; ++k) {
        double ms = 0.0;
        for (const auto& r : records) ms += r.dist[k] * r.dist[k];
        double rms = std::sqrt(ms / records.size());
        double lx = std::log(double(k)), ly = std::log(rms);
        xs.push_back(lx);
        ys.push_back(ly);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    int n = static_cast<int>(xs.size());
    double denom = n * sxx - sx * sx;
    fit.exponent = (n * sxy - sx * sy) / denom;
    double intercept = (sy - fit.exponent * sx) / n;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        double resid = ys[i] - (intercept + fit.exponent * xs[i]);
        ss += resid * resid;
    }
    double var_slope = n > 2 ? (ss / (n - 2)) / (sxx - sx * sx / n) : 0.0;
    fit.stderr_est = std::sqrt(std::max(0.0, var_slope));
    return fit;
}

} // namespace rftaxis
