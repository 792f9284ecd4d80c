#include "rftaxis/scenario.hpp"

#include <fstream>

#include "rftaxis/errors.hpp"

namespace rftaxis {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}

const json& require(const json& j, const std::string& key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) fail(ctx.empty() ? key : ctx + "." + key, "missing");
    return *it;
}

double num(const json& j, const std::string& key, const std::string& ctx) {
    const json& v = require(j, key, ctx);
    if (!v.is_number()) fail(ctx + "." + key, "expected a number");
    return v.get<double>();
}

double num_or(const json& j, const std::string& key, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    return it->get<double>();
}

Vec vec_of(const json& v, int dim, const std::string& ctx) {
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
        fail(ctx, "expected an array of " + std::to_string(dim) + " numbers");
    Vec out(dim);
    for (int i = 0; i < dim; ++i) out[i] = v[i].get<double>();
    return out;
}

FieldModel parse_node(const json& n, int dim, const std::string& ctx) {
    FieldModel m;
    m.dim = dim;
    m.path_loss.gamma_pl = num(n, "gamma_pl", ctx);
    if (m.path_loss.gamma_pl <= 0.0) fail(ctx + ".gamma_pl", "must be > 0");
    m.path_loss.d0 = num(n, "d0_m", ctx);
    if (m.path_loss.d0 <= 0.0) fail(ctx + ".d0_m", "must be > 0");
    m.path_loss.source = vec_of(require(n, "source_m", ctx), dim, ctx + ".source_m");
    m.epsilon_floor = num_or(n, "epsilon_floor_m", 0.5);
    if (m.epsilon_floor <= 0.0) fail(ctx + ".epsilon_floor_m", "must be > 0");

    if (auto it = n.find("walls"); it != n.end()) {
        if (dim == 1) fail(ctx + ".walls", "walls need dimension 2 or 3");
        int wi = 0;
        for (const auto& w : *it) {
            std::string wctx = ctx + ".walls[" + std::to_string(wi++) + "]";
            Wall wall;
            wall.attenuation_db = num(w, "attenuation_db", wctx);
            if (wall.attenuation_db < 0.0) fail(wctx + ".attenuation_db", "must be >= 0");
            if (w.contains("polygon_m")) {
                if (dim != 3) fail(wctx + ".polygon_m", "polygon walls need dimension 3");
                for (const auto& p : w["polygon_m"])
                    wall.pts.push_back(vec_of(p, dim, wctx + ".polygon_m"));
                if (wall.pts.size() < 3) fail(wctx + ".polygon_m", "needs >= 3 vertices");
            } else {
                if (dim != 2) fail(wctx, "segment walls need dimension 2");
                wall.pts.push_back(vec_of(require(w, "from_m", wctx), dim, wctx + ".from_m"));
                wall.pts.push_back(vec_of(require(w, "to_m", wctx), dim, wctx + ".to_m"));
            }
            m.walls.push_back(std::move(wall));
        }
    }

    if (auto it = n.find("fading"); it != n.end()) {
        const json& f = *it;
        std::string fctx = ctx + ".fading";
        FadingParams fp;
        fp.wavelength = num(f, "wavelength_m", fctx);
        if (fp.wavelength <= 0.0) fail(fctx + ".wavelength_m", "must be > 0");
        fp.amplitude_db = num(f, "amplitude_db", fctx);
        if (fp.amplitude_db < 0.0) fail(fctx + ".amplitude_db", "must be >= 0");
        fp.num_waves = static_cast<int>(num_or(f, "num_waves", 32));
        if (fp.num_waves < 1) fail(fctx + ".num_waves", "must be >= 1");
        fp.seed = require(f, "seed", fctx).get<std::uint64_t>();
        m.fading = FadingField::make(fp, dim);
    }
    return m;
}

} // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Scenario parse_scenario(const nlohmann::json& j) {
    Scenario sc;
    sc.raw = j;
    sc.hash = fnv1a64(j.dump());

    sc.name = j.value("name", std::string("scenario"));
    sc.dim = static_cast<int>(num(j, "dimension", ""));
    if (sc.dim < 1 || sc.dim > 3) fail("dimension", "must be 1, 2 or 3");

    std::string obj = require(j, "objective", "").get<std::string>();
    if (obj == "seek") sc.objective = ObjectiveKind::seek_source;
    else if (obj == "bridge") sc.objective = ObjectiveKind::bridge_two;
    else fail("objective", "must be \"seek\" or \"bridge\"");

    const json& nodes = require(j, "nodes", "");
    size_t want = sc.objective == ObjectiveKind::seek_source ? 1 : 2;
    if (!nodes.is_array() || nodes.size() != want)
        fail("nodes", "objective \"" + obj + "\" needs exactly " + std::to_string(want) +
                          " node(s)");
    int ni = 0;
    for (const auto& n : nodes)
        sc.fields.push_back(parse_node(n, sc.dim, "nodes[" + std::to_string(ni++) + "]"));

    const json& noise = require(j, "noise", "");
    sc.noise.sigma_meas = num(noise, "sigma_meas_db", "noise");
    if (sc.noise.sigma_meas < 0.0) fail("noise.sigma_meas_db", "must be >= 0");
    std::string mm = noise.value("motor_mode", std::string("none"));
    if (mm == "none") sc.noise.motor_mode = MotorMode::none;
    else if (mm == "longitudinal") sc.noise.motor_mode = MotorMode::longitudinal;
    else if (mm == "vectorial") sc.noise.motor_mode = MotorMode::vectorial;
    else fail("noise.motor_mode", "must be none|longitudinal|vectorial");
    sc.noise.sigma_motor = num_or(noise, "sigma_motor", 0.0);
    if (sc.noise.sigma_motor < 0.0) fail("noise.sigma_motor", "must be >= 0");

    const json& est = require(j, "estimator", "");
    std::string kind = require(est, "kind", "estimator").get<std::string>();
    if (kind == "central_difference") sc.estimator.kind = EstimatorKind::central_difference;
    else if (kind == "line_fit") sc.estimator.kind = EstimatorKind::line_fit;
    else fail("estimator.kind", "must be central_difference|line_fit");
    sc.estimator.samples_per_axis = static_cast<int>(num_or(est, "samples_per_axis", 2));
    if (sc.estimator.kind == EstimatorKind::line_fit && sc.estimator.samples_per_axis < 2)
        fail("estimator.samples_per_axis", "must be >= 2");

    const json& sch = require(j, "schedule", "");
    sc.schedule.a = num(sch, "a", "schedule");
    if (sc.schedule.a <= 0.0) fail("schedule.a", "must be > 0");
    sc.schedule.A = num_or(sch, "A", 0.0);
    if (sc.schedule.A < 0.0) fail("schedule.A", "must be >= 0");
    sc.schedule.alpha = num(sch, "alpha", "schedule");
    if (sc.schedule.alpha <= 0.0) fail("schedule.alpha", "must be > 0");
    sc.schedule.h0 = num(sch, "h0_m", "schedule");
    if (sc.schedule.h0 <= 0.0) fail("schedule.h0_m", "must be > 0");
    sc.schedule.gamma_s = num(sch, "gamma_s", "schedule");
    if (sc.schedule.gamma_s < 0.0)
        fail("schedule.gamma_s", "must be >= 0 (0 keeps h fixed; flagged by the checker)");

    sc.start = vec_of(require(j, "start_m", ""), sc.dim, "start_m");
    for (size_t i = 0; i < sc.fields.size(); ++i)
        if ((sc.start - sc.fields[i].path_loss.source).norm() < sc.fields[i].epsilon_floor)
            fail("start_m", "inside epsilon_floor of node " + std::to_string(i));

    sc.max_iter = static_cast<int>(num(j, "max_iter", ""));
    if (sc.max_iter < 0) fail("max_iter", "must be >= 0");

    if (auto it = j.find("stop"); it != j.end()) {
        std::string rule = require(*it, "rule", "stop").get<std::string>();
        if (rule == "max_iter") sc.stop.kind = StopKind::max_iter;
        else if (rule == "h_below") sc.stop.kind = StopKind::h_below;
        else if (rule == "step_below") sc.stop.kind = StopKind::step_below;
        else fail("stop.rule", "must be max_iter|h_below|step_below");
        if (sc.stop.kind != StopKind::max_iter) {
            sc.stop.threshold = num(*it, "threshold_m", "stop");
            if (sc.stop.threshold <= 0.0) fail("stop.threshold_m", "must be > 0");
        }
    }

    sc.master_seed = require(j, "master_seed", "").get<std::uint64_t>();
    sc.bridge_offset_db = num_or(j, "bridge_offset_db", 120.0);

    if (auto it = j.find("optimum_m"); it != j.end())
        sc.optimum = vec_of(*it, sc.dim, "optimum_m");
    if (auto it = j.find("oracle_grid"); it != j.end()) {
        OracleGrid g;
        g.lo = vec_of(require(*it, "lo_m", "oracle_grid"), sc.dim, "oracle_grid.lo_m");
        g.hi = vec_of(require(*it, "hi_m", "oracle_grid"), sc.dim, "oracle_grid.hi_m");
        g.res = num(*it, "res_m", "oracle_grid");
        if (g.res <= 0.0) fail("oracle_grid.res_m", "must be > 0");
        for (int i = 0; i < sc.dim; ++i)
            if (g.hi[i] <= g.lo[i]) fail("oracle_grid", "hi_m must exceed lo_m");
        sc.oracle_grid = g;
    }
    sc.rate_k_min = static_cast<int>(num_or(j, "rate_k_min", 0));
    if (sc.rate_k_min < 0 || sc.rate_k_min > sc.max_iter)
        fail("rate_k_min", "must lie in [0, max_iter]");
    sc.success_threshold_m = num_or(j, "success_threshold_m", 2.0);
    if (sc.success_threshold_m <= 0.0) fail("success_threshold_m", "must be > 0");
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    try {
        return parse_scenario(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid scenario in " + path + ": " + e.what());
    }
}

std::optional<Vec> resolve_optimum(const Scenario& sc) {
    if (sc.optimum) return sc.optimum;
    if (sc.objective == ObjectiveKind::seek_source)
        return sc.fields[0].path_loss.source;
    if (sc.oracle_grid)
        return bridge_optimum_oracle(sc.fields[0], sc.fields[1], sc.oracle_grid->lo,
                                     sc.oracle_grid->hi, sc.oracle_grid->res,
                                     sc.bridge_offset_db);
    return std::nullopt;
}

} // namespace rftaxis
