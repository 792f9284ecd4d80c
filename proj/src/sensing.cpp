#include "rftaxis/sensing.hpp"

namespace rftaxis {

double Sensor::measure(const Vec& x) {
    double v = eval_field(*field_, x);
    if (noise_.sigma_meas > 0.0)
        v += noise_.sigma_meas * rng_.gauss();
    return v;
}

MoveOutcome Sensor::move_out(const Vec& from, const Vec& to) {
    MoveOutcome out{to, to};
    if (noise_.motor_mode == MotorMode::none || noise_.sigma_motor <= 0.0)
        return out;
    Vec leg = to - from;
    double len = leg.norm();
    if (len == 0.0)
        return out;
    double s = noise_.sigma_motor * len;
    if (noise_.motor_mode == MotorMode::longitudinal) {
        Vec u = leg * (1.0 / len);
        out.achieved = from + u * (len + s * rng_.gauss());
    } else {
        for (int i = 0; i < to.dim(); ++i)
            out.achieved[i] += s * rng_.gauss();
    }
    return out;
}

} // namespace rftaxis
