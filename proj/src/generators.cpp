#include "sympcalc/generators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <string>

namespace sympcalc {

Generator::Generator(GridSpec g, int T) : grid(g), steps(T) {
    if (T < 1) throw ConfigError("generator needs at least 1 time step");
    u.assign(T + 1, ScalarField(g));
    h.assign(T + 1, HarmonicForm{});
}

void Generator::normalize() {
    for (ScalarField& s : u) recenter(s);
}

Generator zero_generator(GridSpec g, int T) { return Generator(g, T); }

Generator translation_generator(GridSpec g, int T, double v1, double v2) {
    Generator gen(g, T);
    for (auto& hs : gen.h) hs = {-v2, v1};
    return gen;
}

Generator constant_generator(GridSpec g, int T, ScalarField u, HarmonicForm h) {
    Generator gen(g, T);
    recenter(u);
    for (int k = 0; k <= T; ++k) {
        gen.u[k] = u;
        gen.h[k] = h;
    }
    return gen;
}

Generator random_generator(GridSpec g, int T, std::uint64_t seed, int max_mode,
                           double x_sup, double h_l2) {
    ScalarField f = random_band_limited(g, seed, max_mode, 1.0);
    // Scale U so the Hamiltonian part of the velocity has sup norm x_sup.
    OneFormField df = spectral_gradient(f);
    double vmax = 0.0;
    for (std::size_t i = 0; i < df.a1.values.size(); ++i)
        vmax = std::max(vmax, std::hypot(df.a1.values[i], df.a2.values[i]));
    if (vmax > 0.0) f = (x_sup / vmax) * f;

    HarmonicForm h{0.0, 0.0};
    if (h_l2 > 0.0) {
        // Direction from the seed, length from the requested L2 norm.
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
        std::uniform_real_distribution<double> unif(0.0, kTwoPi);
        double phase = unif(rng);
        double r = h_l2 / kTwoPi;
        h = {r * std::cos(phase), r * std::sin(phase)};
    }
    return constant_generator(g, T, std::move(f), h);
}

// --- interpolation stencils ----------------------------------------------

namespace {

// Shared spatial stencil so one point can be dotted against several fields.
struct Stencil {
    Interp mode;
    int n;
    int jj[4], kk[4];
    double wu[4], wv[4];
    Point p; // for the fourier fallback
};

inline int wrap_index(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

inline void cubic_weights(double t, double w[4]) {
    w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
    w[1] = (t * t - 1.0) * (t - 2.0) / 2.0;
    w[2] = -t * (t + 1.0) * (t - 2.0) / 2.0;
    w[3] = t * (t * t - 1.0) / 6.0;
}

void make_stencil(GridSpec g, const Point& p, Interp mode, Stencil& s) {
    s.mode = mode;
    s.n = g.n;
    s.p = p;
    if (mode == Interp::fourier) return;
    double h = g.spacing();
    double x = wrap_angle(p.t1) / h;
    double y = wrap_angle(p.t2) / h;
    int j = static_cast<int>(std::floor(x));
    int k = static_cast<int>(std::floor(y));
    double u = x - j;
    double v = y - k;
    if (mode == Interp::bilinear) {
        s.jj[0] = wrap_index(j, g.n);
        s.jj[1] = wrap_index(j + 1, g.n);
        s.kk[0] = wrap_index(k, g.n);
        s.kk[1] = wrap_index(k + 1, g.n);
        s.wu[0] = 1.0 - u;
        s.wu[1] = u;
        s.wv[0] = 1.0 - v;
        s.wv[1] = v;
    } else {
        for (int a = 0; a < 4; ++a) {
            s.jj[a] = wrap_index(j - 1 + a, g.n);
            s.kk[a] = wrap_index(k - 1 + a, g.n);
        }
        cubic_weights(u, s.wu);
        cubic_weights(v, s.wv);
    }
}

double apply_stencil(const ScalarField& f, const Stencil& s) {
    if (s.mode == Interp::fourier) return eval_field(f, s.p, Interp::fourier);
    int m = (s.mode == Interp::bilinear) ? 2 : 4;
    double r = 0.0;
    for (int a = 0; a < m; ++a) {
        const double* row = f.values.data() + static_cast<std::size_t>(s.jj[a]) * s.n;
        double acc = 0.0;
        for (int b = 0; b < m; ++b) acc += s.wv[b] * row[s.kk[b]];
        r += s.wu[a] * acc;
    }
    return r;
}

} // namespace

// --- isotopy --------------------------------------------------------------

Isotopy Isotopy::make(Generator g, IntegratorConfig cfg) {
    if (cfg.substeps < 1) throw ConfigError("integrator substeps must be >= 1");
    g.normalize();
    Isotopy iso;
    iso.cfg_ = cfg;
    iso.du_.reserve(g.u.size());
    for (const ScalarField& s : g.u) iso.du_.push_back(spectral_gradient(s));
    iso.gen_ = std::make_shared<const Generator>(std::move(g));
    return iso;
}

HarmonicForm Isotopy::harmonic_at(double s) const {
    const Generator& g = *gen_;
    double tau = std::clamp(s, 0.0, 1.0) * g.steps;
    int k = std::min(static_cast<int>(std::floor(tau)), g.steps - 1);
    double w = tau - k;
    return {(1 - w) * g.h[k].c1 + w * g.h[k + 1].c1,
            (1 - w) * g.h[k].c2 + w * g.h[k + 1].c2};
}

Point Isotopy::velocity(const Point& p, double s) const {
    const Generator& g = *gen_;
    double tau = std::clamp(s, 0.0, 1.0) * g.steps;
    int k = std::min(static_cast<int>(std::floor(tau)), g.steps - 1);
    double w = tau - k;

    Stencil st;
    make_stencil(g.grid, p, cfg_.interp, st);
    double d1 = (1 - w) * apply_stencil(du_[k].a1, st) + w * apply_stencil(du_[k + 1].a1, st);
    double d2 = (1 - w) * apply_stencil(du_[k].a2, st) + w * apply_stencil(du_[k + 1].a2, st);
    double c1 = (1 - w) * g.h[k].c1 + w * g.h[k + 1].c1;
    double c2 = (1 - w) * g.h[k].c2 + w * g.h[k + 1].c2;
    return {d2 + c2, -d1 - c1};
}

// --- flows ----------------------------------------------------------------

namespace {

constexpr double kPi = 0.5 * kTwoPi;

// One RK4 step from (x, s) with step dt; also advances an optional line
// integral of alpha along the trajectory (augmented state).
struct RkState {
    Point x;
    double c = 0.0;
};

template <class VelFn>
RkState rk4_step(const VelFn& vel, const RkState& st, double s, double dt) {
    auto [k1, c1] = vel(st.x, s);
    Point x2{st.x.t1 + 0.5 * dt * k1.t1, st.x.t2 + 0.5 * dt * k1.t2};
    auto [k2, c2] = vel(x2, s + 0.5 * dt);
    Point x3{st.x.t1 + 0.5 * dt * k2.t1, st.x.t2 + 0.5 * dt * k2.t2};
    auto [k3, c3] = vel(x3, s + 0.5 * dt);
    Point x4{st.x.t1 + dt * k3.t1, st.x.t2 + dt * k3.t2};
    auto [k4, c4] = vel(x4, s + dt);

    RkState out;
    double m1 = dt / 6.0;
    out.x.t1 = st.x.t1 + m1 * (k1.t1 + 2.0 * (k2.t1 + k3.t1) + k4.t1);
    out.x.t2 = st.x.t2 + m1 * (k1.t2 + 2.0 * (k2.t2 + k3.t2) + k4.t2);
    out.c = st.c + m1 * (c1 + 2.0 * (c2 + c3) + c4);
    if (std::fabs(out.x.t1 - st.x.t1) > kPi || std::fabs(out.x.t2 - st.x.t2) > kPi)
        throw StepTooCoarse("RK4 step moved a point by more than pi; increase substeps");
    return out;
}

struct PlainVel {
    const Isotopy& iso;
    std::pair<Point, double> operator()(const Point& p, double s) const {
        return {iso.velocity(p, s), 0.0};
    }
};

struct AugmentedVel {
    const Isotopy& iso;
    const OneFormField& alpha;
    std::pair<Point, double> operator()(const Point& p, double s) const {
        Point v = iso.velocity(p, s);
        Point a = eval_form(alpha, p, iso.config().interp);
        return {v, a.t1 * v.t1 + a.t2 * v.t2};
    }
};

template <class VelFn>
RkState integrate(const VelFn& vel, RkState st, double t0, double t1, int n_steps) {
    double dt = (t1 - t0) / n_steps;
    double s = t0;
    for (int i = 0; i < n_steps; ++i) {
        st = rk4_step(vel, st, s, dt);
        s = t0 + (i + 1) * dt;
    }
    return st;
}

int steps_for(const Isotopy& iso, double span) {
    int per_unit = iso.generator().steps * iso.config().substeps;
    return std::max(1, static_cast<int>(std::ceil(std::fabs(span) * per_unit)));
}

} // namespace

Point flow(const Isotopy& iso, const Point& x, double t) {
    return flow_segment(iso, x, 0.0, t);
}

Point flow_segment(const Isotopy& iso, const Point& x, double t0, double t1) {
    if (t0 == t1) return x;
    PlainVel vel{iso};
    return integrate(vel, RkState{x, 0.0}, t0, t1, steps_for(iso, t1 - t0)).x;
}

FlowHistory flow_history(const Isotopy& iso, Exec exec) {
    const Generator& g = iso.generator();
    const GridSpec grid = g.grid;
    const int T = g.steps;
    const int sub = iso.config().substeps;

    FlowHistory hist(T + 1);
    for (int k = 0; k <= T; ++k)
        hist[k] = DiscreteMap{grid, ScalarField(grid), ScalarField(grid), iso.config().interp};

    PlainVel vel{iso};
    for_each_index(grid.size(), exec, [&](std::size_t idx) {
        int j = static_cast<int>(idx) / grid.n;
        int k = static_cast<int>(idx) % grid.n;
        Point x0{grid.node1(j), grid.node2(k)};
        RkState st{x0, 0.0};
        for (int slice = 1; slice <= T; ++slice) {
            double ta = static_cast<double>(slice - 1) / T;
            double tb = static_cast<double>(slice) / T;
            st = integrate(vel, st, ta, tb, sub);
            hist[slice].disp1.at(j, k) = st.x.t1 - x0.t1;
            hist[slice].disp2.at(j, k) = st.x.t2 - x0.t2;
        }
    });
    return hist;
}

DiscreteMap time_one_map(const Isotopy& iso, Exec exec, double t) {
    const GridSpec grid = iso.generator().grid;
    DiscreteMap m{grid, ScalarField(grid), ScalarField(grid), iso.config().interp};
    PlainVel vel{iso};
    int n_steps = steps_for(iso, t);
    for_each_index(grid.size(), exec, [&](std::size_t idx) {
        int j = static_cast<int>(idx) / grid.n;
        int k = static_cast<int>(idx) % grid.n;
        Point x0{grid.node1(j), grid.node2(k)};
        Point x1 = (t == 0.0) ? x0 : integrate(vel, RkState{x0, 0.0}, 0.0, t, n_steps).x;
        m.disp1.at(j, k) = x1.t1 - x0.t1;
        m.disp2.at(j, k) = x1.t2 - x0.t2;
    });
    return m;
}

DiscreteMap inverse_time_one_map(const Isotopy& iso, Exec exec, double t) {
    const GridSpec grid = iso.generator().grid;
    DiscreteMap m{grid, ScalarField(grid), ScalarField(grid), iso.config().interp};
    PlainVel vel{iso};
    int n_steps = steps_for(iso, t);
    for_each_index(grid.size(), exec, [&](std::size_t idx) {
        int j = static_cast<int>(idx) / grid.n;
        int k = static_cast<int>(idx) % grid.n;
        Point x0{grid.node1(j), grid.node2(k)};
        Point x1 = (t == 0.0) ? x0 : integrate(vel, RkState{x0, 0.0}, t, 0.0, n_steps).x;
        m.disp1.at(j, k) = x1.t1 - x0.t1;
        m.disp2.at(j, k) = x1.t2 - x0.t2;
    });
    return m;
}

// --- map utilities ----------------------------------------------------------

DiscreteMap identity_map(GridSpec g) {
    return DiscreteMap{g, ScalarField(g), ScalarField(g), Interp::cubic};
}

Point eval_map(const DiscreteMap& m, const Point& p) {
    Stencil st;
    make_stencil(m.grid, p, m.interp, st);
    return {p.t1 + apply_stencil(m.disp1, st), p.t2 + apply_stencil(m.disp2, st)};
}

DiscreteMap compose(const DiscreteMap& outer, const DiscreteMap& inner) {
    if (outer.grid != inner.grid) throw ShapeMismatch("composing maps on different grids");
    const GridSpec g = outer.grid;
    DiscreteMap r{g, ScalarField(g), ScalarField(g), outer.interp};
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
            Point mid = inner.image_at_node(j, k);
            Point out = eval_map(outer, mid);
            r.disp1.at(j, k) = out.t1 - g.node1(j);
            r.disp2.at(j, k) = out.t2 - g.node2(k);
        }
    return r;
}

// --- group law ---------------------------------------------------------------

Generator inverse(const Generator& g, IntegratorConfig cfg, Exec exec) {
    Isotopy iso = Isotopy::make(g, cfg);
    FlowHistory hist = flow_history(iso, exec);
    const GridSpec grid = g.grid;

    Generator out(grid, g.steps);
    for (int k = 0; k <= g.steps; ++k) {
        const DiscreteMap& phi = hist[k];
        ScalarField& w = out.u[k];
        const HarmonicForm hk = g.h[k];
        for (int j = 0; j < grid.n; ++j)
            for (int kk = 0; kk < grid.n; ++kk) {
                Point img = phi.image_at_node(j, kk);
                double u_at = eval_field(g.u[k], img, cfg.interp);
                double cal = hk.c1 * phi.disp1.at(j, kk) + hk.c2 * phi.disp2.at(j, kk);
                w.at(j, kk) = -u_at - cal;
            }
        recenter(w);
        out.h[k] = {-hk.c1, -hk.c2};
    }
    return out;
}

Generator product(const Generator& g1, const Generator& g2, IntegratorConfig cfg,
                  Exec exec) {
    if (g1.grid != g2.grid || g1.steps != g2.steps)
        throw ShapeMismatch("product needs matching grids and step counts");

    // Slice maps of the first factor's inverse isotopy, obtained by flowing
    // the inverse generator forward.
    Generator g1_inv = inverse(g1, cfg, exec);
    FlowHistory psi = flow_history(Isotopy::make(g1_inv, cfg), exec);

    const GridSpec grid = g1.grid;
    Generator out(grid, g1.steps);
    for (int k = 0; k <= g1.steps; ++k) {
        const DiscreteMap& pk = psi[k];
        ScalarField& w = out.u[k];
        const HarmonicForm kk2 = g2.h[k];
        for (int j = 0; j < grid.n; ++j)
            for (int kk = 0; kk < grid.n; ++kk) {
                Point img = pk.image_at_node(j, kk);
                double v_at = eval_field(g2.u[k], img, cfg.interp);
                double cal = kk2.c1 * pk.disp1.at(j, kk) + kk2.c2 * pk.disp2.at(j, kk);
                w.at(j, kk) = g1.u[k].at(j, kk) + v_at + cal;
            }
        recenter(w);
        out.h[k] = g1.h[k] + g2.h[k];
    }
    return out;
}

Generator conjugate(const Generator& g, const Generator& g_psi, IntegratorConfig cfg,
                    Exec exec) {
    if (g.grid != g_psi.grid) throw ShapeMismatch("conjugate needs matching grids");
    DiscreteMap psi = time_one_map(Isotopy::make(g_psi, cfg), exec);

    const GridSpec grid = g.grid;
    Generator out(grid, g.steps);
    for (int k = 0; k <= g.steps; ++k) {
        ScalarField& w = out.u[k];
        const HarmonicForm hk = g.h[k];
        for (int j = 0; j < grid.n; ++j)
            for (int kk = 0; kk < grid.n; ++kk) {
                Point img = psi.image_at_node(j, kk);
                double v_at = eval_field(g.u[k], img, cfg.interp);
                double cal = hk.c1 * psi.disp1.at(j, kk) + hk.c2 * psi.disp2.at(j, kk);
                w.at(j, kk) = v_at + cal;
            }
        recenter(w);
        out.h[k] = hk;
    }
    return out;
}

// --- calibrators --------------------------------------------------------------

double calibrator(const Isotopy& iso, const OneFormField& alpha, double t,
                  const Point& x) {
    if (t == 0.0) return 0.0;
    AugmentedVel vel{iso, alpha};
    return integrate(vel, RkState{x, 0.0}, 0.0, t, steps_for(iso, t)).c;
}

ScalarField normalized_calibrator(const Isotopy& iso,
                                  const std::vector<HarmonicForm>& path, double t,
                                  Exec exec) {
    const GridSpec grid = iso.generator().grid;
    // Harmonic form frozen at time t, linearly interpolated on the path.
    double tau = std::clamp(t, 0.0, 1.0) * (static_cast<double>(path.size()) - 1.0);
    int k = std::min(static_cast<int>(std::floor(tau)),
                     static_cast<int>(path.size()) - 2);
    if (path.size() == 1) k = 0;
    double w = (path.size() == 1) ? 0.0 : tau - k;
    HarmonicForm hf = (path.size() == 1)
                          ? path[0]
                          : HarmonicForm{(1 - w) * path[k].c1 + w * path[k + 1].c1,
                                         (1 - w) * path[k].c2 + w * path[k + 1].c2};

    DiscreteMap m = time_one_map(iso, exec, t);
    ScalarField f(grid);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = hf.c1 * m.disp1.values[i] + hf.c2 * m.disp2.values[i];
    recenter(f);
    return f;
}

std::vector<ScalarField> calibrator_history(const Isotopy& iso,
                                            const OneFormField& alpha, Exec exec) {
    const Generator& g = iso.generator();
    const GridSpec grid = g.grid;
    const int T = g.steps;
    const int sub = iso.config().substeps;

    std::vector<ScalarField> hist(T + 1, ScalarField(grid));
    AugmentedVel vel{iso, alpha};
    for_each_index(grid.size(), exec, [&](std::size_t idx) {
        int j = static_cast<int>(idx) / grid.n;
        int k = static_cast<int>(idx) % grid.n;
        RkState st{{grid.node1(j), grid.node2(k)}, 0.0};
        for (int slice = 1; slice <= T; ++slice) {
            double ta = static_cast<double>(slice - 1) / T;
            double tb = static_cast<double>(slice) / T;
            st = integrate(vel, st, ta, tb, sub);
            hist[slice].at(j, k) = st.c;
        }
    });
    return hist;
}

// --- jacobians -----------------------------------------------------------------

namespace {

// 4th-order periodic central difference along one axis.
double diff4(const ScalarField& f, int j, int k, int axis, double h) {
    int n = f.grid.n;
    auto val = [&](int dj, int dk) {
        return f.at(wrap_index(j + dj, n), wrap_index(k + dk, n));
    };
    double fp1, fp2, fm1, fm2;
    if (axis == 0) {
        fp1 = val(1, 0); fp2 = val(2, 0); fm1 = val(-1, 0); fm2 = val(-2, 0);
    } else {
        fp1 = val(0, 1); fp2 = val(0, 2); fm1 = val(0, -1); fm2 = val(0, -2);
    }
    return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
}

} // namespace

MapJacobian map_jacobian(const DiscreteMap& m) {
    const GridSpec g = m.grid;
    double h = g.spacing();
    MapJacobian jac{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
            jac.j11.at(j, k) = 1.0 + diff4(m.disp1, j, k, 0, h);
            jac.j12.at(j, k) = diff4(m.disp1, j, k, 1, h);
            jac.j21.at(j, k) = diff4(m.disp2, j, k, 0, h);
            jac.j22.at(j, k) = 1.0 + diff4(m.disp2, j, k, 1, h);
        }
    return jac;
}

ScalarField jacobian_determinant(const DiscreteMap& m) {
    MapJacobian jac = map_jacobian(m);
    ScalarField det(m.grid);
    for (std::size_t i = 0; i < det.values.size(); ++i)
        det.values[i] = jac.j11.values[i] * jac.j22.values[i]
                      - jac.j12.values[i] * jac.j21.values[i];
    return det;
}

} // namespace sympcalc
