#pragma once

#include <string>
#include <vector>

#include "rftaxis/field.hpp"
#include "rftaxis/sensing.hpp"
#include "rftaxis/vec.hpp"

namespace rftaxis {

enum class EstimatorKind { central_difference, line_fit };

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::central_difference;
    double h = 1.0;             // half-step, m (ignored when a schedule drives h_k)
    int samples_per_axis = 2;   // line_fit only
};

struct GradientEstimate {
    Vec g_hat;              // dB/m
    double h_used = 0.0;    // m
    int n_measurements = 0;
    EstimatorKind kind = EstimatorKind::central_difference;
};

struct SnrComponent {
    double full = 0.0;      // sqrt(2)h/sigma * df + sqrt(2)h^3/(12 sigma) * d3 term
    double small_h = 0.0;   // h/sigma * df
    bool bias_dominated = false;  // h^3 term exceeds 10% of the h term
};

// Central differences, component i = (y(x+h e_i) - y(x-h e_i)) / (2h).
// Probe walk per axis: +h, -h, back to center; every leg goes through
// src.move so motor noise applies when configured.
GradientEstimate estimate_central_difference(SignalSource& src, const Vec& x, double h);

// Ordinary least squares slope of n equally spaced samples per axis on
// [x - h e_i, x + h e_i], regressed on the commanded offsets. Walk per axis:
// drive to the -h end, sweep in increasing offset order, return to center.
// n = 2 reduces exactly to central differences.
GradientEstimate estimate_line_fit(SignalSource& src, const Vec& x, double h, int n);

GradientEstimate estimate_gradient(SignalSource& src, const Vec& x, double h,
                                   const EstimatorConfig& cfg);

// V[g_hat_i] = sigma^2 / (2 h^2)
double predicted_variance(double sigma, double h);

// Upper bound on |E[g_hat_i] - df|: (h^2/12) * 2 * max |f'''| over [d-h, d+h],
// which for the path-loss field is attained at d-h.
double predicted_bias_bound(const PathLossParams& params, const Vec& x, double h,
                            double epsilon_floor);

// Signed SNR of one gradient component; third_derivative_term is the
// difference of third derivatives entering the remainder (0 if unknown/small).
SnrComponent snr(double gradient_component, double sigma, double h,
                 double third_derivative_term);

} // namespace rftaxis
