#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rftaxis/field.hpp"
#include "rftaxis/rng.hpp"

using namespace rftaxis;

namespace {

FieldModel pure_field(double gamma = 3.0, double d0 = 1.0, double floor = 1e-3) {
    FieldModel m;
    m.dim = 2;
    m.path_loss = {gamma, d0, Vec{0.0, 0.0}};
    m.epsilon_floor = floor;
    return m;
}

} // namespace

TEST_CASE("path loss worked values") {
    PathLossParams p{3.0, 1.0, Vec{0.0, 0.0}};
    CHECK(eval_path_loss(p, Vec{1.0, 0.0}, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eval_path_loss(p, Vec{10.0, 0.0}, 0.5) == doctest::Approx(-30.0).epsilon(1e-12));

    PathLossParams q{2.5, 2.0, Vec{0.0, 0.0}};
    CHECK(eval_path_loss(q, Vec{0.0, 20.0}, 0.5) == doctest::Approx(-25.0).epsilon(1e-12));
}

TEST_CASE("path loss floor enforcement") {
    PathLossParams p{3.0, 1.0, Vec{0.0, 0.0}};
    CHECK_THROWS_AS(eval_path_loss(p, Vec{0.4, 0.0}, 0.5), DistanceTooSmall);
    CHECK_THROWS_AS(path_loss_derivatives(p, 0.4, 0.5), DistanceTooSmall);
    CHECK_NOTHROW(eval_path_loss(p, Vec{0.5, 0.0}, 0.5));
}

TEST_CASE("path loss derivatives vs symbolic oracle") {
    PathLossParams p{3.0, 1.0, Vec{0.0, 0.0}};
    auto d1 = path_loss_derivatives(p, 1.0, 1e-6);
    CHECK(d1.first == doctest::Approx(-13.028834457097554).epsilon(1e-12));
    auto d10 = path_loss_derivatives(p, 10.0, 1e-6);
    CHECK(d10.second == doctest::Approx(0.13028834457097554).epsilon(1e-12));
    CHECK(d10.third == doctest::Approx(-20.0 * 3.0 / (std::log(10.0) * 1000.0)).epsilon(1e-12));
}

TEST_CASE("first derivative matches central differences of the field") {
    RngStream rng(41);
    for (int i = 0; i < 50; ++i) {
        double gamma = 1.0 + 4.0 * rng.uniform();
        double d = 1.0 + 30.0 * rng.uniform();
        PathLossParams p{gamma, 1.0, Vec{0.0, 0.0}};
        double h = 1e-4;
        double fd = (eval_path_loss(p, Vec{d + h, 0.0}, 1e-6) -
                     eval_path_loss(p, Vec{d - h, 0.0}, 1e-6)) / (2.0 * h);
        double an = path_loss_derivatives(p, d, 1e-6).first;
        CHECK(std::abs(fd - an) / std::abs(an) < 1e-6);
    }
}

TEST_CASE("shadowing sums crossed walls only") {
    Vec src{0.0, 0.0};
    CHECK(eval_shadowing({}, src, Vec{5.0, 0.0}) == 0.0);

    Wall crossing{{Vec{2.0, -1.0}, Vec{2.0, 1.0}}, 6.0};
    Wall offside{{Vec{2.0, 1.0}, Vec{2.0, 3.0}}, 6.0};
    Wall second{{Vec{4.0, -2.0}, Vec{4.0, 2.0}}, 3.5};

    CHECK(eval_shadowing({crossing}, src, Vec{5.0, 0.0}) == doctest::Approx(-6.0));
    CHECK(eval_shadowing({offside}, src, Vec{5.0, 0.0}) == 0.0);
    CHECK(eval_shadowing({crossing, second}, src, Vec{5.0, 0.0}) == doctest::Approx(-9.5));
    // behind the target: not crossed
    CHECK(eval_shadowing({second}, src, Vec{3.0, 0.0}) == 0.0);
}

TEST_CASE("shadowing is never positive") {
    RngStream rng(7);
    std::vector<Wall> walls;
    for (int i = 0; i < 8; ++i) {
        Vec a{20.0 * rng.uniform() - 10.0, 20.0 * rng.uniform() - 10.0};
        Vec b{20.0 * rng.uniform() - 10.0, 20.0 * rng.uniform() - 10.0};
        walls.push_back({{a, b}, 6.0 * rng.uniform()});
    }
    Vec src{0.0, 0.0};
    for (int i = 0; i < 1000; ++i) {
        Vec x{20.0 * rng.uniform() - 10.0, 20.0 * rng.uniform() - 10.0};
        CHECK(eval_shadowing(walls, src, x) <= 0.0);
    }
}

TEST_CASE("3d wall polygon intersection") {
    Wall w{{Vec{2.0, -1.0, -1.0}, Vec{2.0, 1.0, -1.0}, Vec{2.0, 1.0, 1.0}, Vec{2.0, -1.0, 1.0}},
           6.0};
    Vec src{0.0, 0.0, 0.0};
    CHECK(eval_shadowing({w}, src, Vec{5.0, 0.0, 0.0}) == doctest::Approx(-6.0));
    CHECK(eval_shadowing({w}, src, Vec{5.0, 3.0, 0.0}) == 0.0);
    CHECK(eval_shadowing({w}, src, Vec{1.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("fading determinism and zero amplitude") {
    FadingParams zero{0.125, 0.0, 32, 99};
    auto fz = FadingField::make(zero, 2);
    CHECK(fz.eval(Vec{1.2, 3.4}) == 0.0);

    FadingParams p{0.125, 6.0, 32, 2024};
    auto f1 = FadingField::make(p, 2);
    auto f2 = FadingField::make(p, 2);
    Vec x{3.7, -1.9};
    CHECK(f1.eval(x) == f2.eval(x));
    CHECK(f1.eval(x) == f1.eval(x));

    FadingParams q{0.125, 6.0, 32, 2025};
    auto f3 = FadingField::make(q, 2);
    CHECK(f1.eval(x) != f3.eval(x));
}

TEST_CASE("fading spatial statistics") {
    FadingParams p{0.125, 6.0, 64, 11};
    auto f = FadingField::make(p, 2);
    // mean over a 10 m x 10 m grid stays near zero
    double sum = 0.0;
    int n = 0;
    for (double x = -5.0; x <= 5.0; x += 0.05)
        for (double y = -5.0; y <= 5.0; y += 0.05) {
            sum += f.eval(Vec{x, y});
            ++n;
        }
    CHECK(std::abs(sum / n) < 0.1 * p.amplitude_db);
}

TEST_CASE("fading autocorrelation peaks near the wavelength") {
    // dense transect; dominant spatial period should show up as the first
    // side lobe of the autocorrelation, expected near 1.1 * wavelength
    FadingParams p{0.125, 6.0, 256, 5};
    auto f = FadingField::make(p, 2);
    const double step = 0.002, len = 5.0;
    const int n = static_cast<int>(len / step);
    std::vector<double> v(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = f.eval(Vec{i * step, 0.73});
        mean += v[i];
    }
    mean /= n;
    for (auto& y : v) y -= mean;

    auto corr = [&](int lag) {
        double s = 0.0;
        for (int i = 0; i + lag < n; ++i) s += v[i] * v[i + lag];
        return s / (n - lag);
    };
    double c0 = corr(0);
    int lag_lo = static_cast<int>(0.06 / step);
    int lag_hi = static_cast<int>(0.30 / step);
    int best = lag_lo;
    double best_v = -1e9;
    for (int lag = lag_lo; lag <= lag_hi; ++lag) {
        double c = corr(lag) / c0;
        if (c > best_v) {
            best_v = c;
            best = lag;
        }
    }
    double peak_lag = best * step;
    CHECK(peak_lag > 0.8 * p.wavelength);
    CHECK(peak_lag < 1.2 * p.wavelength);
    CHECK(best_v > 0.05);
}

TEST_CASE("field composition identities") {
    FieldModel m = pure_field();
    Vec x{4.0, 3.0};
    CHECK(eval_field(m, x) == eval_path_loss(m.path_loss, x, m.epsilon_floor));

    FieldModel mf = pure_field();
    mf.fading = FadingField::make({0.125, 6.0, 32, 3}, 2);
    double worst = 0.0;
    for (double gx = -5.0; gx <= 5.0; gx += 0.1)
        for (double gy = -5.0; gy <= 5.0; gy += 0.1) {
            Vec g{gx, gy};
            if ((g - mf.path_loss.source).norm() < 0.5) continue;
            double d = std::abs(eval_field(mf, g) - eval_path_loss(mf.path_loss, g, 1e-3));
            worst = std::max(worst, d);
        }
    CHECK(worst <= 5.0 * 6.0);
    CHECK(worst > 0.0);
}

TEST_CASE("pure field strictly decreases with distance") {
    FieldModel m = pure_field();
    RngStream rng(17);
    for (int i = 0; i < 10000; ++i) {
        double d1 = 0.01 + 40.0 * rng.uniform();
        double d2 = d1 + 0.01 + 10.0 * rng.uniform();
        double th = 2.0 * std::numbers::pi * rng.uniform();
        Vec u{std::cos(th), std::sin(th)};
        CHECK(eval_field(m, u * d1) > eval_field(m, u * d2));
    }
}

TEST_CASE("analytic gradient worked values and symmetry") {
    FieldModel m = pure_field();
    Vec g = analytic_gradient(m, Vec{10.0, 0.0});
    CHECK(g[0] == doctest::Approx(-1.3028834457097554).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(0.0));

    Vec g2 = analytic_gradient(m, Vec{0.0, 10.0});
    CHECK(g2[0] == doctest::Approx(0.0));
    CHECK(g2[1] == doctest::Approx(-1.3028834457097554).epsilon(1e-12));

    // radial direction: strength increases toward the source
    RngStream rng(23);
    for (int i = 0; i < 100; ++i) {
        Vec x{30.0 * rng.uniform() - 15.0, 30.0 * rng.uniform() - 15.0};
        if (x.norm() < 0.5) continue;
        CHECK(analytic_gradient(m, x).dot(x) < 0.0);
    }
}

TEST_CASE("analytic gradient requires the smooth model") {
    FieldModel mw = pure_field();
    mw.walls.push_back({{Vec{1.0, -1.0}, Vec{1.0, 1.0}}, 6.0});
    CHECK_THROWS_AS(analytic_gradient(mw, Vec{5.0, 0.0}), NotSmoothlyDifferentiable);

    FieldModel mf = pure_field();
    mf.fading = FadingField::make({0.125, 6.0, 32, 3}, 2);
    CHECK_THROWS_AS(analytic_gradient(mf, Vec{5.0, 0.0}), NotSmoothlyDifferentiable);
}

TEST_CASE("analytic gradient matches finite differences componentwise") {
    FieldModel m = pure_field();
    RngStream rng(29);
    const double h = 1e-4;
    for (int i = 0; i < 1000; ++i) {
        double r = 1.0 + 20.0 * rng.uniform();
        double th = 2.0 * std::numbers::pi * rng.uniform();
        Vec x{r * std::cos(th), r * std::sin(th)};
        Vec g = analytic_gradient(m, x);
        for (int c = 0; c < 2; ++c) {
            Vec e = Vec::axis(2, c, h);
            double fd = (eval_field(m, x + e) - eval_field(m, x - e)) / (2.0 * h);
            CHECK(std::abs(fd - g[c]) / std::max(1e-9, std::abs(g[c])) < 1e-5);
        }
    }
}
