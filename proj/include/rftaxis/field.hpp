#pragma once

#include <optional>
#include <vector>

#include "rftaxis/errors.hpp"
#include "rftaxis/vec.hpp"

namespace rftaxis {

// Log-distance path loss: f(x) = -10 * gamma_pl * log10(d / d0) dB,
// d = ||x - source||.
struct PathLossParams {
    double gamma_pl = 3.0;  // path-loss exponent
    double d0 = 1.0;        // reference distance, m
    Vec source;             // transmitter position
};

struct PathLossDerivs {
    double first;   // dB/m
    double second;  // dB/m^2
    double third;   // dB/m^3
};

// Thin obstruction: 2 points = segment (2D scenarios), >= 3 points = planar
// convex polygon (3D scenarios). Attenuates by a fixed dB amount when the
// direct source->x path crosses it.
struct Wall {
    std::vector<Vec> pts;
    double attenuation_db = 0.0;
};

struct FadingParams {
    double wavelength = 0.125;   // m
    double amplitude_db = 6.0;   // spatial std dev of the offset
    int num_waves = 32;
    std::uint64_t seed = 1;
};

// Realized deterministic multipath pattern: seeded sum of plane waves at
// spatial frequency 2*pi/wavelength with random directions and phases.
class FadingField {
public:
    static FadingField make(const FadingParams& params, int dim);

    double eval(const Vec& x) const;
    const FadingParams& params() const { return params_; }

private:
    FadingParams params_;
    std::vector<Vec> dirs_;
    std::vector<double> phases_;
    double wavenumber_ = 0.0;
    double scale_ = 0.0;
};

struct FieldModel {
    int dim = 2;
    PathLossParams path_loss;
    std::vector<Wall> walls;
    std::optional<FadingField> fading;
    double epsilon_floor = 0.5;  // m; evaluation below this distance throws
};

double eval_path_loss(const PathLossParams& params, const Vec& x, double epsilon_floor);

// (first, second, third) d/d(distance) of the path loss at the given distance.
PathLossDerivs path_loss_derivatives(const PathLossParams& params, double dist,
                                     double epsilon_floor);

// Sum of -attenuation_db over walls crossed by the open segment (source, x); <= 0.
double eval_shadowing(const std::vector<Wall>& walls, const Vec& source, const Vec& x);

double eval_fading(const FadingField& fading, const Vec& x);

// Path loss + shadowing + fading (terms drop out when not configured).
double eval_field(const FieldModel& model, const Vec& x);

// Exact gradient of the pure path-loss field. Throws NotSmoothlyDifferentiable
// when walls or fading are present.
Vec analytic_gradient(const FieldModel& model, const Vec& x);

} // namespace rftaxis
