#include "rftaxis/gradest.hpp"

#include <cmath>
#include <numbers>

#include "rftaxis/errors.hpp"

namespace rftaxis {

GradientEstimate estimate_central_difference(SignalSource& src, const Vec& x, double h) {
    const int p = src.dim();
    GradientEstimate est;
    est.g_hat = Vec(p);
    est.h_used = h;
    est.kind = EstimatorKind::central_difference;
    Vec cur = x;
    for (int i = 0; i < p; ++i) {
        cur = src.move(cur, x + Vec::axis(p, i, h));
        double y_plus = src.sample(cur);
        cur = src.move(cur, x - Vec::axis(p, i, h));
        double y_minus = src.sample(cur);
        cur = src.move(cur, x);
        est.g_hat[i] = (y_plus - y_minus) / (2.0 * h);
        est.n_measurements += 2;
    }
    return est;
}

GradientEstimate estimate_line_fit(SignalSource& src, const Vec& x, double h, int n) {
    const int p = src.dim();
    GradientEstimate est;
    est.g_hat = Vec(p);
    est.h_used = h;
    est.kind = EstimatorKind::line_fit;
    std::vector<double> t(n), y(n);
    for (int j = 0; j < n; ++j)
        t[j] = -h + 2.0 * h * j / (n - 1);
    Vec cur = x;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < n; ++j) {
            cur = src.move(cur, x + Vec::axis(p, i, t[j]));
            y[j] = src.sample(cur);
        }
        cur = src.move(cur, x);
        est.n_measurements += n;
        if (n == 2) {
            est.g_hat[i] = (y[1] - y[0]) / (2.0 * h);
            continue;
        }
        double tm = 0.0;
        for (double v : t) tm += v;
        tm /= n;
        double sxx = 0.0, sxy = 0.0;
        for (int j = 0; j < n; ++j) {
            sxx += (t[j] - tm) * (t[j] - tm);
            sxy += (t[j] - tm) * y[j];
        }
        if (sxx == 0.0)
            throw DegenerateFit("all probe offsets coincide");
        est.g_hat[i] = sxy / sxx;
    }
    return est;
}

GradientEstimate estimate_gradient(SignalSource& src, const Vec& x, double h,
                                   const EstimatorConfig& cfg) {
    if (cfg.kind == EstimatorKind::line_fit)
        return estimate_line_fit(src, x, h, cfg.samples_per_axis);
    return estimate_central_difference(src, x, h);
}

double predicted_variance(double sigma, double h) {
    return sigma * sigma / (2.0 * h * h);
}

double predicted_bias_bound(const PathLossParams& params, const Vec& x, double h,
                            double epsilon_floor) {
    double d = (x - params.source).norm();
    auto derivs = path_loss_derivatives(params, d - h, epsilon_floor);
    // |f'''| of the path loss decreases with distance, so the interval max
    // sits at d - h
    return h * h / 12.0 * 2.0 * std::abs(derivs.third);
}

SnrComponent snr(double gradient_component, double sigma, double h,
                 double third_derivative_term) {
    if (sigma <= 0.0)
        throw ZeroNoise("SNR undefined for sigma = 0");
    SnrComponent out;
    double lead = std::numbers::sqrt2 * h / sigma * gradient_component;
    double rem = std::numbers::sqrt2 * h * h * h / (12.0 * sigma) * third_derivative_term;
    out.full = lead + rem;
    out.small_h = h / sigma * gradient_component;
    out.bias_dominated = std::abs(rem) > 0.1 * std::abs(lead);
    return out;
}

} // namespace rftaxis
