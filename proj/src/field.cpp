#include "rftaxis/field.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rftaxis/rng.hpp"

namespace rftaxis {

namespace {

constexpr double kLn10 = std::numbers::ln10;

[[noreturn]] void throw_too_small(double dist, double floor) {
    std::ostringstream os;
    os << "distance " << dist << " m below epsilon_floor " << floor << " m";
    throw DistanceTooSmall(os.str());
}

// 2D proper-intersection test between open segments (p1,p2) and (q1,q2).
int orient(const Vec& a, const Vec& b, const Vec& c) {
    double v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

bool segments_cross_2d(const Vec& p1, const Vec& p2, const Vec& q1, const Vec& q2) {
    int o1 = orient(p1, p2, q1);
    int o2 = orient(p1, p2, q2);
    int o3 = orient(q1, q2, p1);
    int o4 = orient(q1, q2, p2);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

// Segment (a,b) against a planar convex polygon in 3D.
bool segment_hits_polygon_3d(const Vec& a, const Vec& b, const std::vector<Vec>& poly) {
    const Vec& v0 = poly[0];
    Vec e1 = poly[1] - v0;
    Vec e2 = poly[2] - v0;
    Vec n{e1[1] * e2[2] - e1[2] * e2[1],
          e1[2] * e2[0] - e1[0] * e2[2],
          e1[0] * e2[1] - e1[1] * e2[0]};
    Vec d = b - a;
    double denom = n.dot(d);
    if (denom == 0.0) return false;  // parallel; grazing contact ignored
    double t = n.dot(v0 - a) / denom;
    if (t <= 0.0 || t >= 1.0) return false;
    Vec p = a + d * t;
    // Point-in-convex-polygon: consistent cross-product sign around the boundary.
    int sign = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec& u = poly[i];
        const Vec& w = poly[(i + 1) % poly.size()];
        Vec edge = w - u;
        Vec rel = p - u;
        Vec cr{edge[1] * rel[2] - edge[2] * rel[1],
               edge[2] * rel[0] - edge[0] * rel[2],
               edge[0] * rel[1] - edge[1] * rel[0]};
        double s = cr.dot(n);
        if (s == 0.0) continue;
        int si = s > 0 ? 1 : -1;
        if (sign == 0) sign = si;
        else if (si != sign) return false;
    }
    return true;
}

} // namespace

double eval_path_loss(const PathLossParams& params, const Vec& x, double epsilon_floor) {
    double dist = (x - params.source).norm();
    if (dist < epsilon_floor) throw_too_small(dist, epsilon_floor);
    return -10.0 * params.gamma_pl * std::log10(dist / params.d0);
}

PathLossDerivs path_loss_derivatives(const PathLossParams& params, double dist,
                                     double epsilon_floor) {
    if (dist < epsilon_floor) throw_too_small(dist, epsilon_floor);
    double g = params.gamma_pl;
    return {-10.0 * g / (kLn10 * dist),
            +10.0 * g / (kLn10 * dist * dist),
            -20.0 * g / (kLn10 * dist * dist * dist)};
}

double eval_shadowing(const std::vector<Wall>& walls, const Vec& source, const Vec& x) {
    double total = 0.0;
    for (const Wall& w : walls) {
        bool hit = false;
        if (w.pts.size() == 2) {
            hit = segments_cross_2d(source, x, w.pts[0], w.pts[1]);
        } else if (w.pts.size() >= 3) {
            hit = segment_hits_polygon_3d(source, x, w.pts);
        }
        if (hit) total -= w.attenuation_db;
    }
    return total;
}

FadingField FadingField::make(const FadingParams& params, int dim) {
    FadingField f;
    f.params_ = params;
    f.wavenumber_ = 2.0 * std::numbers::pi / params.wavelength;
    f.scale_ = params.amplitude_db * std::sqrt(2.0 / params.num_waves);
    RngStream rng(params.seed);
    f.dirs_.reserve(params.num_waves);
    f.phases_.reserve(params.num_waves);
    for (int i = 0; i < params.num_waves; ++i) {
        Vec d(dim);
        if (dim == 1) {
            d[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
        } else if (dim == 2) {
            double th = 2.0 * std::numbers::pi * rng.uniform();
            d[0] = std::cos(th);
            d[1] = std::sin(th);
        } else {
            double z = 2.0 * rng.uniform() - 1.0;
            double th = 2.0 * std::numbers::pi * rng.uniform();
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            d[0] = r * std::cos(th);
            d[1] = r * std::sin(th);
            d[2] = z;
        }
        f.dirs_.push_back(d);
        f.phases_.push_back(2.0 * std::numbers::pi * rng.uniform());
    }
    return f;
}

double FadingField::eval(const Vec& x) const {
    double s = 0.0;
    for (size_t i = 0; i < dirs_.size(); ++i)
        s += std::cos(wavenumber_ * dirs_[i].dot(x) + phases_[i]);
    return scale_ * s;
}

double eval_fading(const FadingField& fading, const Vec& x) { return fading.eval(x); }

double eval_field(const FieldModel& model, const Vec& x) {
    double v = eval_path_loss(model.path_loss, x, model.epsilon_floor);
    if (!model.walls.empty())
        v += eval_shadowing(model.walls, model.path_loss.source, x);
    if (model.fading)
        v += model.fading->eval(x);
    return v;
}

Vec analytic_gradient(const FieldModel& model, const Vec& x) {
    if (!model.walls.empty() || model.fading)
        throw NotSmoothlyDifferentiable(
            "analytic gradient is only available for the pure path-loss field");
    Vec r = x - model.path_loss.source;
    double dist = r.norm();
    if (dist < model.epsilon_floor) throw_too_small(dist, model.epsilon_floor);
    double d1 = -10.0 * model.path_loss.gamma_pl / (kLn10 * dist);
    return r * (d1 / dist);
}

} // namespace rftaxis
