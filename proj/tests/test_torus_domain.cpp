#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sympcalc/grid.hpp"
#include "sympcalc/spectral.hpp"

using namespace sympcalc;

namespace {
const GridSpec g64(64);
const double kPi = 0.5 * kTwoPi;
}

TEST_CASE("grid spec validates resolution") {
    CHECK_THROWS_AS(GridSpec(7), ConfigError);
    CHECK_THROWS_AS(GridSpec(6), ConfigError);
    CHECK(GridSpec(8).spacing() == doctest::Approx(kTwoPi / 8));
    CHECK(GridSpec(8).area() == doctest::Approx(kTwoPi * kTwoPi));
}

TEST_CASE("quadrature of basic integrands") {
    ScalarField one(g64, 1.0);
    CHECK(integrate_scalar(one) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-14));

    ScalarField s = sample_field(g64, [](double t1, double) { return std::sin(t1); });
    CHECK(std::fabs(integrate_scalar(s)) < 1e-12);

    // Closed form of the cos^2 integral is half the area.
    ScalarField c2 = sample_field(g64, [](double, double t2) {
        return std::cos(t2) * std::cos(t2);
    });
    CHECK(integrate_scalar(c2) == doctest::Approx(0.5 * kTwoPi * kTwoPi).epsilon(1e-13));
}

TEST_CASE("quadrature is exact on trig products below Nyquist") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> mode(1, 31);
    for (int trial = 0; trial < 20; ++trial) {
        int m = mode(rng), k = mode(rng);
        ScalarField f = sample_field(g64, [&](double t1, double t2) {
            return std::sin(m * t1) * std::cos(k * t2);
        });
        CHECK(std::fabs(integrate_scalar(f)) < 1e-12);
    }
}

TEST_CASE("spectral gradient matches analytic derivatives") {
    ScalarField s = sample_field(g64, [](double t1, double) { return std::sin(t1); });
    OneFormField ds = spectral_gradient(s);
    ScalarField expected = sample_field(g64, [](double t1, double) { return std::cos(t1); });
    CHECK(field_sup_abs(ds.a1 - expected) < 1e-12);
    CHECK(field_sup_abs(ds.a2) < 1e-12);

    ScalarField c(g64, 5.0);
    OneFormField dc = spectral_gradient(c);
    CHECK(field_sup_abs(dc.a1) < 1e-12);
    CHECK(field_sup_abs(dc.a2) < 1e-12);

    GridSpec g16(16);
    ScalarField f = sample_field(g16, [](double t1, double t2) {
        return std::sin(3 * t1) * std::cos(2 * t2);
    });
    OneFormField df = spectral_gradient(f);
    ScalarField d1 = sample_field(g16, [](double t1, double t2) {
        return 3 * std::cos(3 * t1) * std::cos(2 * t2);
    });
    ScalarField d2 = sample_field(g16, [](double t1, double t2) {
        return -2 * std::sin(3 * t1) * std::sin(2 * t2);
    });
    CHECK(field_sup_abs(df.a1 - d1) < 1e-12);
    CHECK(field_sup_abs(df.a2 - d2) < 1e-12);
}

TEST_CASE("exterior derivative detects non-closed forms and kills gradients") {
    OneFormField coframe{ScalarField(g64, 1.0), ScalarField(g64, 0.0)};
    CHECK(field_sup_abs(exterior_derivative(coframe)) < 1e-13);

    OneFormField twisted{sample_field(g64, [](double, double t2) { return std::sin(t2); }),
                         ScalarField(g64, 0.0)};
    ScalarField d = exterior_derivative(twisted);
    ScalarField expected = sample_field(g64, [](double, double t2) { return -std::cos(t2); });
    CHECK(field_sup_abs(d - expected) < 1e-12);

    ScalarField f = random_band_limited(g64, 42, 5, 1.0);
    ScalarField dd = exterior_derivative(spectral_gradient(f));
    CHECK(field_sup_abs(dd) < 1e-10 * field_sup_abs(f));
}

TEST_CASE("line integrals see winding and kill exact loops") {
    OneFormField dtheta1{ScalarField(g64, 1.0), ScalarField(g64, 0.0)};
    Curve full = straight_curve({0, 0}, {kTwoPi, 0}, 4 * 64);
    CHECK(line_integral(dtheta1, full) == doctest::Approx(kTwoPi).epsilon(1e-12));

    // Closed zero-winding loop against an exact form.
    ScalarField F = sample_field(g64, [](double t1, double t2) {
        return std::sin(t1) * std::cos(t2) + 0.3 * std::cos(2 * t2);
    });
    OneFormField dF = spectral_gradient(F);
    int n = 20000;
    std::vector<Point> loop(n + 1);
    for (int i = 0; i <= n; ++i) {
        double s = kTwoPi * i / n;
        loop[i] = {kPi + 0.8 * std::cos(s), kPi + 0.8 * std::sin(s)};
    }
    CHECK(std::fabs(line_integral(dF, Curve(loop), Interp::cubic)) < 1e-8);

    // Straight segments against cos(theta2) dtheta1.
    OneFormField alpha{sample_field(g64, [](double, double t2) { return std::cos(t2); }),
                       ScalarField(g64, 0.0)};
    Curve mid = straight_curve({0, kPi / 2}, {kPi, kPi / 2}, 2000);
    CHECK(std::fabs(line_integral(alpha, mid, Interp::cubic)) < 1e-7);
    Curve bottom = straight_curve({0, 0}, {kPi, 0}, 2000);
    CHECK(line_integral(alpha, bottom, Interp::cubic) == doctest::Approx(kPi).epsilon(1e-7));
}

TEST_CASE("winding quantization of coframe integrals") {
    OneFormField dtheta2{ScalarField(g64, 0.0), ScalarField(g64, 1.0)};
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> wind(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        int w = wind(rng);
        int n = 4000;
        std::vector<Point> pts(n + 1);
        for (int i = 0; i <= n; ++i) {
            double s = static_cast<double>(i) / n;
            // Closed curve with w net windings in theta2 plus a wiggle.
            pts[i] = {1.0 + 0.5 * std::sin(kTwoPi * s),
                      w * kTwoPi * s + 0.3 * std::sin(2 * kTwoPi * s)};
        }
        double got = line_integral(dtheta2, Curve(pts));
        CHECK(std::fabs(got - w * kTwoPi) < 1e-8);
    }
}

TEST_CASE("degenerate curves are rejected") {
    CHECK_THROWS_AS(Curve(std::vector<Point>{{0, 0}}), DegenerateCurve);
    CHECK_THROWS_AS(Curve(std::vector<Point>{{0, 0}, {4.0, 0}}), DegenerateCurve);
}

TEST_CASE("torus distance handles wrap-around and stays a metric") {
    CHECK(torus_distance({0.3, 1.2}, {0.3, 1.2}) == 0.0);
    CHECK(torus_distance({0, 0}, {kPi, 0}) == doctest::Approx(kPi));
    CHECK(torus_distance({0.1, 0}, {kTwoPi - 0.1, 0}) == doctest::Approx(0.2).epsilon(1e-12));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);
    for (int trial = 0; trial < 10000; ++trial) {
        Point a{unif(rng), unif(rng)}, b{unif(rng), unif(rng)}, c{unif(rng), unif(rng)};
        double ab = torus_distance(a, b);
        double ba = torus_distance(b, a);
        CHECK(ab == ba);
        CHECK(torus_distance(a, c) <= ab + torus_distance(b, c) + 1e-12);
    }
}

TEST_CASE("field evaluation modes") {
    ScalarField s = sample_field(g64, [](double t1, double) { return std::sin(t1); });
    double h = g64.spacing();
    CHECK(std::fabs(eval_field(s, {kPi / 2, 0}) - 1.0) <= h * h);

    ScalarField c(g64, 3.25);
    CHECK(eval_field(c, {1.234, 5.0}) == doctest::Approx(3.25).epsilon(1e-15));

    ScalarField c2 = sample_field(g64, [](double, double t2) { return std::cos(2 * t2); });
    CHECK(std::fabs(eval_field(c2, {0, kPi / 4})) <= h * h);

    // Fourier mode reproduces band-limited fields to machine precision
    // away from the nodes; cubic sits in between.
    ScalarField f = sample_field(g64, [](double t1, double t2) {
        return std::sin(2 * t1) * std::cos(3 * t2) + 0.5 * std::cos(t1);
    });
    Point p{0.7231, 4.1113};
    double exact = std::sin(2 * p.t1) * std::cos(3 * p.t2) + 0.5 * std::cos(p.t1);
    CHECK(std::fabs(eval_field(f, p, Interp::fourier) - exact) < 1e-11);
    CHECK(std::fabs(eval_field(f, p, Interp::cubic) - exact) < 1e-4);
    CHECK(std::fabs(eval_field(f, p, Interp::bilinear) - exact) < 2e-2);
}
