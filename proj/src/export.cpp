#include "rftaxis/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rftaxis/errors.hpp"

namespace rftaxis {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: byte-identical across platforms
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

} // namespace

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void export_trajectory_csv(const RunRecord& rec, const std::string& path) {
    if (rec.rows.empty())
        throw std::runtime_error("no trajectory rows to export to " + path);
    const int p = rec.rows.front().x_hat.dim();
    const bool with_dist = !rec.dist.empty();
    auto out = open_out(path);
    out << "k,ak,hk";
    for (int i = 1; i <= p; ++i) out << ",x" << i;
    for (int i = 1; i <= p; ++i) out << ",gx" << i;
    if (with_dist) out << ",dist";
    out << "\n";
    for (size_t r = 0; r < rec.rows.size(); ++r) {
        const auto& row = rec.rows[r];
        out << row.k << ',' << format_sig(row.a_k) << ',' << format_sig(row.h_k);
        for (int i = 0; i < p; ++i) out << ',' << format_sig(row.x_hat[i]);
        for (int i = 0; i < p; ++i) out << ',' << format_sig(row.g_hat[i]);
        if (with_dist) out << ',' << format_sig(r < rec.dist.size() ? rec.dist[r] : 0.0);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

void export_summary_json(const EnsembleSummary& s, const Scenario& sc,
                         const std::string& path) {
    if (s.n_runs == 0)
        throw std::runtime_error("refusing to export an empty ensemble to " + path);
    nlohmann::json j;
    j["scenario"] = sc.name;
    {
        std::ostringstream os;
        os << std::hex << sc.hash;
        j["scenario_hash"] = os.str();
    }
    j["master_seed"] = sc.master_seed;
    j["n_runs"] = s.n_runs;
    j["n_failed"] = s.n_failed;
    j["k_min"] = s.k_min;
    j["success_threshold_m"] = s.success_threshold_m;
    if (s.has_optimum) {
        j["success_fraction"] = s.success_fraction;
        j["median_final_m"] = s.median_final_m;
    } else {
        j["success_fraction"] = nullptr;
        j["median_final_m"] = nullptr;
    }
    if (s.rate_fitted) {
        j["rate_exponent"] = s.rate_exponent;
        j["rate_stderr"] = s.rate_stderr;
    } else {
        j["rate_exponent"] = nullptr;
        j["rate_stderr"] = nullptr;
    }
    nlohmann::json curve = nlohmann::json::array();
    for (size_t k = 0; k < s.rms_curve.size(); ++k) {
        curve.push_back({{"k", k},
                         {"rms_m", s.rms_curve[k]},
                         {"median_m", s.median_curve[k]},
                         {"q10_m", s.q10_curve[k]},
                         {"q90_m", s.q90_curve[k]}});
    }
    j["curve"] = std::move(curve);
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

void export_field_csv(const FieldModel& model, const Vec& lo, const Vec& hi, double res,
                      const std::string& path) {
    const int p = model.dim;
    auto out = open_out(path);
    if (p == 3) out << "x,y,z,f_db\n";
    else if (p == 2) out << "x,y,f_db\n";
    else out << "x,f_db\n";

    std::vector<int> counts(p);
    for (int i = 0; i < p; ++i)
        counts[i] = static_cast<int>(std::floor((hi[i] - lo[i]) / res + 1e-9)) + 1;
    std::vector<int> idx(p, 0);
    while (true) {
        Vec x(p);
        for (int i = 0; i < p; ++i) x[i] = lo[i] + idx[i] * res;
        if ((x - model.path_loss.source).norm() >= model.epsilon_floor) {
            double f = eval_field(model, x);
            for (int i = 0; i < p; ++i) out << format_sig(x[i]) << ',';
            out << format_sig(f) << "\n";
        }
        int d = p - 1;  // last axis fastest: row-major rasters
        while (d >= 0 && ++idx[d] >= counts[d]) {
            idx[d] = 0;
            --d;
        }
        if (d < 0) break;
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

void export_gradcheck_csv(const std::vector<GradcheckRow>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "sigma,h,predicted_var,empirical_var,bias_bound,empirical_bias\n";
    for (const auto& r : rows) {
        out << format_sig(r.sigma) << ',' << format_sig(r.h) << ','
            << format_sig(r.predicted_var) << ',' << format_sig(r.empirical_var) << ','
            << format_sig(r.bias_bound) << ',' << format_sig(r.empirical_bias) << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace rftaxis
