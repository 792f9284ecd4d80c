#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rftaxis/objectives.hpp"
#include "rftaxis/rng.hpp"

using namespace rftaxis;

namespace {

FieldModel node_at(double x0, double gamma = 3.0, double floor = 0.5) {
    FieldModel m;
    m.dim = 2;
    m.path_loss = {gamma, 1.0, Vec{x0, 0.0}};
    m.epsilon_floor = floor;
    return m;
}

} // namespace

TEST_CASE("seek objective negates the field") {
    FieldModel m = node_at(0.0);
    Sensor s(&m, {0.0, MotorMode::none, 0.0}, 1);
    SeekObjective obj(&s);
    Vec x{6.0, 2.0};
    CHECK(obj.sample(x) == -eval_field(m, x));
    CHECK(eval_objective(obj, x) == -eval_field(m, x));
    CHECK(obj.dim() == 2);
}

TEST_CASE("bridge objective piecewise identities") {
    FieldModel f1 = node_at(-5.0);
    FieldModel f2 = node_at(5.0);
    Sensor s1(&f1, {0.0, MotorMode::none, 0.0}, 1);
    Sensor s2(&f2, {0.0, MotorMode::none, 0.0}, 2);
    const double C = 120.0;
    BridgeObjective obj(&s1, &s2, C);

    // equidistant point: equal branch, g = -2 (f + C)
    Vec mid{0.0, 3.0};
    double f = eval_field(f1, mid);
    CHECK(eval_field(f2, mid) == doctest::Approx(f).epsilon(1e-12));
    CHECK(obj.sample(mid) == doctest::Approx(-2.0 * (f + C)).epsilon(1e-9));

    // closer to node 1: m1 > m2, so g = -2 m2
    Vec near1{-2.0, 0.0};
    double m1 = eval_field(f1, near1) + C;
    double m2 = eval_field(f2, near1) + C;
    CHECK(m1 > m2);
    CHECK(m2 > 0.0);  // offset keeps the piecewise form applicable
    CHECK(obj.sample(near1) == doctest::Approx(-2.0 * m2).epsilon(1e-9));

    // mirrored: g = -2 m1
    Vec near2{2.0, 0.0};
    double n1 = eval_field(f1, near2) + C;
    CHECK(obj.sample(near2) == doctest::Approx(-2.0 * n1).epsilon(1e-9));
}

TEST_CASE("objective draw accounting") {
    FieldModel f1 = node_at(-5.0);
    FieldModel f2 = node_at(5.0);
    Sensor s1(&f1, {2.0, MotorMode::none, 0.0}, 7);
    Sensor s2(&f2, {2.0, MotorMode::none, 0.0}, 8);
    BridgeObjective bridge(&s1, &s2);
    bridge.sample(Vec{1.0, 1.0});
    RngStream sh1(7), sh2(8);
    sh1.gauss();
    sh2.gauss();
    CHECK(s1.rng() == sh1);
    CHECK(s2.rng() == sh2);

    Sensor s3(&f1, {2.0, MotorMode::none, 0.0}, 9);
    SeekObjective seek(&s3);
    seek.sample(Vec{1.0, 1.0});
    RngStream sh3(9);
    sh3.gauss();
    CHECK(s3.rng() == sh3);
}

TEST_CASE("bridge motion uses the first node's stream") {
    FieldModel f1 = node_at(-5.0);
    FieldModel f2 = node_at(5.0);
    Sensor s1(&f1, {0.0, MotorMode::vectorial, 0.02}, 10);
    Sensor s2(&f2, {0.0, MotorMode::vectorial, 0.02}, 11);
    BridgeObjective obj(&s1, &s2);
    Vec from{0.0, 0.0}, to{1.0, 2.0};
    Vec got = obj.move(from, to);

    Sensor ref(&f1, {0.0, MotorMode::vectorial, 0.02}, 10);
    Vec want = ref.move(from, to);
    CHECK(got == want);

    RngStream sh2(11);  // node 2 stream untouched
    CHECK(s2.rng() == sh2);
}

TEST_CASE("symmetric bridge optimum is the midpoint") {
    FieldModel f1 = node_at(-5.0);
    FieldModel f2 = node_at(5.0);
    Vec opt = bridge_optimum_oracle(f1, f2, Vec{-8.0, -8.0}, Vec{8.0, 8.0}, 0.05);
    CHECK(std::abs(opt[0]) <= 0.05 + 1e-9);
    CHECK(std::abs(opt[1]) <= 0.05 + 1e-9);
}

TEST_CASE("degenerate bridge with one shared source pins to the floor") {
    FieldModel f1 = node_at(0.0);
    FieldModel f2 = node_at(0.0);
    Vec opt = bridge_optimum_oracle(f1, f2, Vec{-2.0, -2.0}, Vec{2.0, 2.0}, 0.05);
    double d = opt.norm();
    CHECK(d >= 0.5);
    CHECK(d <= 0.5 + 0.05 * std::numbers::sqrt2 + 1e-9);
}

TEST_CASE("asymmetric optimum sits on the equal-strength locus") {
    FieldModel f1 = node_at(-5.0, 3.0);
    FieldModel f2 = node_at(5.0, 2.0);
    const double res = 0.05;
    Vec opt = bridge_optimum_oracle(f1, f2, Vec{-8.0, -8.0}, Vec{8.0, 8.0}, res);
    double v1 = eval_field(f1, opt);
    double v2 = eval_field(f2, opt);
    FieldModel p1 = f1, p2 = f2;
    double gmag = analytic_gradient(p1, opt).norm() + analytic_gradient(p2, opt).norm();
    CHECK(std::abs(v1 - v2) <= gmag * res * 2.0);
}

TEST_CASE("oracle with no feasible point raises") {
    FieldModel f1 = node_at(0.0, 3.0, 10.0);  // floor larger than the box
    FieldModel f2 = node_at(0.0, 3.0, 10.0);
    CHECK_THROWS_AS(
        bridge_optimum_oracle(f1, f2, Vec{-2.0, -2.0}, Vec{2.0, 2.0}, 0.5),
        ConfigError);
}
