#ifndef SYMPCALC_GRID_HPP
#define SYMPCALC_GRID_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "sympcalc/errors.hpp"

namespace sympcalc {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/** Reduces an angle to [0, 2*pi). */
double wrap_angle(double theta);

/** Uniform N x N discretization of the flat torus [0,2pi)^2.
 * N must be even and at least 8 so the spectral operators have a clean
 * Nyquist mode to drop. */
struct GridSpec {
    int n = 0;

    GridSpec() = default;
    explicit GridSpec(int n_);

    double spacing() const { return kTwoPi / n; }
    /** Total area of the torus, carried explicitly everywhere. */
    double area() const { return kTwoPi * kTwoPi; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }
    double node1(int j) const { return kTwoPi * j / n; }
    double node2(int k) const { return kTwoPi * k / n; }

    bool operator==(const GridSpec& o) const { return n == o.n; }
    bool operator!=(const GridSpec& o) const { return n != o.n; }
};

/** A point on the torus (or on its universal cover when carrying a lift;
 * flow maps return lifted coordinates so winding stays visible). */
struct Point {
    double t1 = 0.0;
    double t2 = 0.0;
};

inline Point reduce(const Point& p) { return {wrap_angle(p.t1), wrap_angle(p.t2)}; }

/** Flat distance with wrap-around in each coordinate. */
double torus_distance(const Point& p, const Point& q);

enum class Interp { bilinear, cubic, fourier };

/** Grid sample of a real function on the torus; value(j,k) ~ f(2pi j/N, 2pi k/N).
 * Row index j runs along theta1, column index k along theta2. */
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(GridSpec g, double fill = 0.0)
        : grid(g), values(g.size(), fill) {}

    double& at(int j, int k) { return values[static_cast<std::size_t>(j) * grid.n + k]; }
    double at(int j, int k) const { return values[static_cast<std::size_t>(j) * grid.n + k]; }
};

/** Builds a field by sampling fn(theta1, theta2) at the grid nodes. */
template <class F>
ScalarField sample_field(GridSpec g, F&& fn) {
    ScalarField f(g);
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k)
            f.at(j, k) = fn(g.node1(j), g.node2(k));
    return f;
}

double field_mean(const ScalarField& f);
double field_max(const ScalarField& f);
double field_min(const ScalarField& f);
double field_sup_abs(const ScalarField& f);
bool field_finite(const ScalarField& f);

/** Subtracts the grid mean in place and returns the mean that was removed. */
double recenter(ScalarField& f);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

/** Quadrature of f over the torus: (2pi/N)^2 * sum of samples.
 * Exact for trigonometric polynomials of degree < N. */
double integrate_scalar(const ScalarField& f);

/** A 1-form a1*dtheta1 + a2*dtheta2 with both components on one grid. */
struct OneFormField {
    ScalarField a1;
    ScalarField a2;

    OneFormField() = default;
    OneFormField(ScalarField c1, ScalarField c2);
    const GridSpec& grid() const { return a1.grid; }
};

OneFormField operator+(const OneFormField& a, const OneFormField& b);
OneFormField operator-(const OneFormField& a, const OneFormField& b);
OneFormField operator*(double s, const OneFormField& a);

/** L2 norm sqrt(int (a1^2 + a2^2) dA). */
double l2_norm(const OneFormField& alpha);

/** Periodic interpolation of a scalar field at an arbitrary point.
 * bilinear: 4-point tensor product (default, O(h^2));
 * cubic:    4x4 Lagrange tensor product (O(h^4));
 * fourier:  exact trigonometric interpolation, O(N^2) per point. */
double eval_field(const ScalarField& f, const Point& p, Interp mode = Interp::bilinear);

/** Component-wise interpolation of a 1-form. */
Point eval_form(const OneFormField& alpha, const Point& p, Interp mode = Interp::bilinear);

/** Sampled curve on the universal cover with uniform parameter in [0,1].
 * Lifts are stored unreduced so integrals of closed non-exact forms see the
 * winding; consecutive samples must differ by less than pi per coordinate. */
struct Curve {
    std::vector<Point> samples;

    Curve() = default;
    explicit Curve(std::vector<Point> pts);
};

/** Straight segment in lifted coordinates with n_samples points. */
Curve straight_curve(const Point& from, const Point& to, int n_samples);

/** Composite midpoint quadrature of alpha along gamma using lifted
 * increments. A full winding of dtheta_i contributes exactly 2pi.
 * Rule of thumb for the sampling density: at least 4N samples per winding. */
double line_integral(const OneFormField& alpha, const Curve& gamma,
                     Interp mode = Interp::bilinear);

} // namespace sympcalc

#endif
