#pragma once

#include <cstdint>

#include "rftaxis/field.hpp"
#include "rftaxis/rng.hpp"
#include "rftaxis/vec.hpp"

namespace rftaxis {

enum class MotorMode { none, longitudinal, vectorial };

struct NoiseSpec {
    double sigma_meas = 0.0;               // dB
    MotorMode motor_mode = MotorMode::vectorial;
    double sigma_motor = 0.0;              // meters of error per meter moved
};

struct MoveOutcome {
    Vec commanded;
    Vec achieved;
};

// Anything a robot can sample while driving around: the raw sensor, or an
// objective built on one or more sensors. Estimators and the optimizer only
// see this interface.
class SignalSource {
public:
    virtual ~SignalSource() = default;
    virtual double sample(const Vec& x) = 0;
    virtual Vec move(const Vec& from, const Vec& to) = 0;  // returns achieved position
    virtual int dim() const = 0;
    virtual bool in_domain(const Vec& x) const = 0;
};

// Field + measurement noise + motor noise, driven by one seeded stream.
// One Sensor belongs to one run; reproducible given (seed, call order).
class Sensor : public SignalSource {
public:
    Sensor(const FieldModel* field, const NoiseSpec& noise, std::uint64_t seed)
        : field_(field), noise_(noise), rng_(seed) {}

    // one noisy signal-strength measurement, f(x) + eps
    double measure(const Vec& x);

    // commanded move with motor noise; error scale is sigma_motor times the
    // commanded leg length ||to - from||
    MoveOutcome move_out(const Vec& from, const Vec& to);

    double sample(const Vec& x) override { return measure(x); }
    Vec move(const Vec& from, const Vec& to) override { return move_out(from, to).achieved; }
    int dim() const override { return field_->dim; }
    bool in_domain(const Vec& x) const override {
        return (x - field_->path_loss.source).norm() >= field_->epsilon_floor;
    }

    const FieldModel& field() const { return *field_; }
    const NoiseSpec& noise() const { return noise_; }
    RngStream& rng() { return rng_; }

private:
    const FieldModel* field_;
    NoiseSpec noise_;
    RngStream rng_;
};

} // namespace rftaxis
