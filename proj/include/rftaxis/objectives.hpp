#pragma once

#include <cstdint>

#include "rftaxis/sensing.hpp"
#include "rftaxis/vec.hpp"

namespace rftaxis {

enum class ObjectiveKind { seek_source, bridge_two };

// Minimization view of single-source seeking: objective = -(signal strength),
// so descending the objective climbs the signal.
class SeekObjective : public SignalSource {
public:
    explicit SeekObjective(Sensor* s) : s_(s) {}
    double sample(const Vec& x) override { return -s_->measure(x); }
    Vec move(const Vec& from, const Vec& to) override { return s_->move(from, to); }
    int dim() const override { return s_->dim(); }
    bool in_domain(const Vec& x) const override { return s_->in_domain(x); }

private:
    Sensor* s_;
};

// Two-node bridging: g(x) = |m1 - m2| - |m1 + m2| on nonnegative-shifted
// measurements m_i = measure_i(x) + offset_db. One fresh measurement per node
// per evaluation. The robot is one platform, so motor noise draws come from
// node 1's stream.
class BridgeObjective : public SignalSource {
public:
    BridgeObjective(Sensor* node1, Sensor* node2, double offset_db = 120.0)
        : s1_(node1), s2_(node2), offset_db_(offset_db) {}

    double sample(const Vec& x) override;
    Vec move(const Vec& from, const Vec& to) override { return s1_->move(from, to); }
    int dim() const override { return s1_->dim(); }
    bool in_domain(const Vec& x) const override {
        return s1_->in_domain(x) && s2_->in_domain(x);
    }
    double offset_db() const { return offset_db_; }

private:
    Sensor* s1_;
    Sensor* s2_;
    double offset_db_;
};

inline double eval_objective(SignalSource& obj, const Vec& x) { return obj.sample(x); }

// Noise-free value of the bridging objective at x (same offset convention).
double bridge_value_noise_free(const FieldModel& f1, const FieldModel& f2, const Vec& x,
                               double offset_db);

// Exhaustive grid argmin of the noise-free bridging objective over the box
// [lo, hi] with the given resolution. Grid points where either field is
// infeasible are skipped.
Vec bridge_optimum_oracle(const FieldModel& f1, const FieldModel& f2, const Vec& lo,
                          const Vec& hi, double res, double offset_db = 120.0);

} // namespace rftaxis
