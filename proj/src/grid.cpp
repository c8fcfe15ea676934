#include "sympcalc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sympcalc {

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0; // fmod can round up to the period
    return t;
}

GridSpec::GridSpec(int n_) : n(n_) {
    if (n < 8 || n % 2 != 0)
        throw ConfigError("grid resolution must be even and >= 8, got " + std::to_string(n));
}

static double axis_distance(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

double torus_distance(const Point& p, const Point& q) {
    double d1 = axis_distance(p.t1, q.t1);
    double d2 = axis_distance(p.t2, q.t2);
    return std::sqrt(d1 * d1 + d2 * d2);
}

double field_mean(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / static_cast<double>(f.values.size());
}

double field_max(const ScalarField& f) {
    return *std::max_element(f.values.begin(), f.values.end());
}

double field_min(const ScalarField& f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

double field_sup_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::fabs(v));
    return m;
}

bool field_finite(const ScalarField& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

double recenter(ScalarField& f) {
    double m = field_mean(f);
    for (double& v : f.values) v -= m;
    return m;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid) throw ShapeMismatch("scalar field grids differ");
    ScalarField r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
    return r;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid) throw ShapeMismatch("scalar field grids differ");
    ScalarField r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
    return r;
}

ScalarField operator*(double s, const ScalarField& a) {
    ScalarField r = a;
    for (double& v : r.values) v *= s;
    return r;
}

double integrate_scalar(const ScalarField& f) {
    double h = f.grid.spacing();
    double s = 0.0;
    for (double v : f.values) s += v;
    return h * h * s;
}

OneFormField::OneFormField(ScalarField c1, ScalarField c2)
    : a1(std::move(c1)), a2(std::move(c2)) {
    if (a1.grid != a2.grid) throw ShapeMismatch("1-form components on different grids");
}

OneFormField operator+(const OneFormField& a, const OneFormField& b) {
    return {a.a1 + b.a1, a.a2 + b.a2};
}

OneFormField operator-(const OneFormField& a, const OneFormField& b) {
    return {a.a1 - b.a1, a.a2 - b.a2};
}

OneFormField operator*(double s, const OneFormField& a) {
    return {s * a.a1, s * a.a2};
}

double l2_norm(const OneFormField& alpha) {
    double h = alpha.grid().spacing();
    double s = 0.0;
    for (std::size_t i = 0; i < alpha.a1.values.size(); ++i)
        s += alpha.a1.values[i] * alpha.a1.values[i] + alpha.a2.values[i] * alpha.a2.values[i];
    return std::sqrt(h * h * s);
}

// --- interpolation -----------------------------------------------------

static inline int wrap_index(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

static double eval_bilinear(const ScalarField& f, double t1, double t2) {
    int n = f.grid.n;
    double h = f.grid.spacing();
    double x = wrap_angle(t1) / h;
    double y = wrap_angle(t2) / h;
    int j = static_cast<int>(std::floor(x));
    int k = static_cast<int>(std::floor(y));
    double u = x - j;
    double v = y - k;
    j = wrap_index(j, n);
    k = wrap_index(k, n);
    int j1 = wrap_index(j + 1, n);
    int k1 = wrap_index(k + 1, n);
    return (1 - u) * (1 - v) * f.at(j, k) + u * (1 - v) * f.at(j1, k)
         + (1 - u) * v * f.at(j, k1) + u * v * f.at(j1, k1);
}

// 4-point Lagrange weights on nodes {-1,0,1,2} at fractional offset t in [0,1).
static inline void cubic_weights(double t, double w[4]) {
    w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
    w[1] = (t * t - 1.0) * (t - 2.0) / 2.0;
    w[2] = -t * (t + 1.0) * (t - 2.0) / 2.0;
    w[3] = t * (t * t - 1.0) / 6.0;
}

static double eval_cubic(const ScalarField& f, double t1, double t2) {
    int n = f.grid.n;
    double h = f.grid.spacing();
    double x = wrap_angle(t1) / h;
    double y = wrap_angle(t2) / h;
    int j = static_cast<int>(std::floor(x));
    int k = static_cast<int>(std::floor(y));
    double u = x - j;
    double v = y - k;
    double wu[4], wv[4];
    cubic_weights(u, wu);
    cubic_weights(v, wv);
    double r = 0.0;
    for (int a = 0; a < 4; ++a) {
        int jj = wrap_index(j - 1 + a, n);
        double row = 0.0;
        for (int b = 0; b < 4; ++b) {
            int kk = wrap_index(k - 1 + b, n);
            row += wv[b] * f.at(jj, kk);
        }
        r += wu[a] * row;
    }
    return r;
}

// Direct evaluation of the trigonometric interpolant. Nyquist-row cosine
// convention keeps the interpolant real-valued for even N.
static double eval_fourier(const ScalarField& f, double t1, double t2) {
    int n = f.grid.n;
    double r = 0.0;
    // Dirichlet-kernel form: sum over nodes of f * D(t1 - x_j) * D(t2 - y_k),
    // where D is the even-N periodic sinc.
    auto dirichlet = [n](double t) {
        double s = std::sin(0.5 * n * t);
        double d = std::sin(0.5 * t);
        if (std::fabs(d) < 1e-14) return 1.0;
        return s / (n * d) * std::cos(0.5 * t);
    };
    for (int j = 0; j < n; ++j) {
        double d1 = dirichlet(t1 - f.grid.node1(j));
        if (d1 == 0.0) continue;
        for (int k = 0; k < n; ++k)
            r += f.at(j, k) * d1 * dirichlet(t2 - f.grid.node2(k));
    }
    return r;
}

double eval_field(const ScalarField& f, const Point& p, Interp mode) {
    switch (mode) {
        case Interp::bilinear: return eval_bilinear(f, p.t1, p.t2);
        case Interp::cubic: return eval_cubic(f, p.t1, p.t2);
        case Interp::fourier: return eval_fourier(f, p.t1, p.t2);
    }
    return 0.0;
}

Point eval_form(const OneFormField& alpha, const Point& p, Interp mode) {
    return {eval_field(alpha.a1, p, mode), eval_field(alpha.a2, p, mode)};
}

// --- curves -------------------------------------------------------------

Curve::Curve(std::vector<Point> pts) : samples(std::move(pts)) {
    if (samples.size() < 2) throw DegenerateCurve("curve needs at least 2 samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        double d1 = std::fabs(samples[i].t1 - samples[i - 1].t1);
        double d2 = std::fabs(samples[i].t2 - samples[i - 1].t2);
        if (d1 >= 0.5 * kTwoPi || d2 >= 0.5 * kTwoPi)
            throw DegenerateCurve("consecutive curve samples differ by >= pi; refine the lift");
    }
}

Curve straight_curve(const Point& from, const Point& to, int n_samples) {
    if (n_samples < 2) throw DegenerateCurve("curve needs at least 2 samples");
    std::vector<Point> pts(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        double s = static_cast<double>(i) / (n_samples - 1);
        pts[i] = {from.t1 + s * (to.t1 - from.t1), from.t2 + s * (to.t2 - from.t2)};
    }
    return Curve(std::move(pts));
}

double line_integral(const OneFormField& alpha, const Curve& gamma, Interp mode) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < gamma.samples.size(); ++i) {
        const Point& a = gamma.samples[i];
        const Point& b = gamma.samples[i + 1];
        Point mid{0.5 * (a.t1 + b.t1), 0.5 * (a.t2 + b.t2)};
        Point val = eval_form(alpha, mid, mode);
        total += val.t1 * (b.t1 - a.t1) + val.t2 * (b.t2 - a.t2);
    }
    return total;
}

} // namespace sympcalc
