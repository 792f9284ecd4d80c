#include "rftaxis/objectives.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rftaxis/errors.hpp"

namespace rftaxis {

double BridgeObjective::sample(const Vec& x) {
    double m1 = s1_->measure(x) + offset_db_;
    double m2 = s2_->measure(x) + offset_db_;
    return std::abs(m1 - m2) - std::abs(m1 + m2);
}

double bridge_value_noise_free(const FieldModel& f1, const FieldModel& f2, const Vec& x,
                               double offset_db) {
    double m1 = eval_field(f1, x) + offset_db;
    double m2 = eval_field(f2, x) + offset_db;
    return std::abs(m1 - m2) - std::abs(m1 + m2);
}

Vec bridge_optimum_oracle(const FieldModel& f1, const FieldModel& f2, const Vec& lo,
                          const Vec& hi, double res, double offset_db) {
    const int p = lo.dim();
    std::vector<int> counts(p);
    for (int i = 0; i < p; ++i)
        counts[i] = static_cast<int>(std::floor((hi[i] - lo[i]) / res + 1e-9)) + 1;

    auto feasible = [&](const FieldModel& f, const Vec& x) {
        return (x - f.path_loss.source).norm() >= f.epsilon_floor;
    };

    Vec best(p);
    double best_v = std::numeric_limits<double>::infinity();
    std::vector<int> idx(p, 0);
    while (true) {
        Vec x(p);
        for (int i = 0; i < p; ++i) x[i] = lo[i] + idx[i] * res;
        if (feasible(f1, x) && feasible(f2, x)) {
            double v = bridge_value_noise_free(f1, f2, x, offset_db);
            if (v < best_v) {
                best_v = v;
                best = x;
            }
        }
        int d = 0;
        while (d < p && ++idx[d] >= counts[d]) {
            idx[d] = 0;
            ++d;
        }
        if (d == p) break;
    }
    if (!std::isfinite(best_v))
        throw ConfigError("bridge optimum oracle: no feasible grid point in the box");
    return best;
}

} // namespace rftaxis
