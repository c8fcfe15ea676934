#include "sympcalc/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace sympcalc {

double osc(const ScalarField& f) { return field_max(f) - field_min(f); }

namespace {

// Trapezoid weights over T+1 uniform slices of [0,1].
double trapezoid(const std::vector<double>& samples) {
    int T = static_cast<int>(samples.size()) - 1;
    double s = 0.5 * (samples.front() + samples.back());
    for (int k = 1; k < T; ++k) s += samples[k];
    return s / T;
}

} // namespace

LengthReport length(const Generator& g, double kappa) {
    std::vector<double> osc_u(g.u.size()), norm_h(g.h.size());
    for (std::size_t k = 0; k < g.u.size(); ++k) {
        osc_u[k] = osc(g.u[k]);
        norm_h[k] = l2_norm(g.h[k]);
    }
    LengthReport r;
    r.kappa = kappa;
    r.hamiltonian_part = trapezoid(osc_u);
    r.harmonic_part = trapezoid(norm_h);
    r.total = r.hamiltonian_part + kappa * r.harmonic_part;
    return r;
}

double D0(const Generator& g1, const Generator& g2, double kappa) {
    if (g1.grid != g2.grid || g1.steps != g2.steps)
        throw ShapeMismatch("D0 needs matching grids and step counts");
    std::vector<double> samples(g1.u.size());
    for (std::size_t k = 0; k < g1.u.size(); ++k)
        samples[k] = osc(g1.u[k] - g2.u[k]) + kappa * l2_norm(g1.h[k] - g2.h[k]);
    return trapezoid(samples);
}

double D1(const Generator& g1, const Generator& g2, double kappa,
          IntegratorConfig cfg, Exec exec) {
    double fwd = D0(g1, g2, kappa);
    double bwd = D0(inverse(g1, cfg, exec), inverse(g2, cfg, exec), kappa);
    return 0.5 * (fwd + bwd);
}

double hofer_like_norm_upper(const Generator& g, double kappa, IntegratorConfig cfg,
                             Exec exec) {
    return 0.5 * (length(g, kappa).total + length(inverse(g, cfg, exec), kappa).total);
}

FsHomeoProxy fshomeo_norm_proxy(const std::vector<Generator>& gs, double kappa,
                                IntegratorConfig cfg, Exec exec) {
    if (gs.empty()) throw ConfigError("fshomeo_norm_proxy needs a nonempty list");
    FsHomeoProxy r;
    r.value = hofer_like_norm_upper(gs[0], kappa, cfg, exec);
    for (std::size_t i = 1; i < gs.size(); ++i)
        r.value = std::min(r.value, hofer_like_norm_upper(gs[i], kappa, cfg, exec));

    // Convergence proxy: distances to the last map should not increase.
    if (gs.size() >= 3) {
        const DiscreteMap last = time_one_map(Isotopy::make(gs.back(), cfg), exec);
        double prev = -1.0;
        for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
            double d = dC0(time_one_map(Isotopy::make(gs[i], cfg), exec), last);
            if (prev >= 0.0 && d > prev + 1e-12) {
                r.dc0_monotone = false;
                break;
            }
            prev = d;
        }
    }
    return r;
}

double dC0(const DiscreteMap& m1, const DiscreteMap& m2) {
    if (m1.grid != m2.grid) throw ShapeMismatch("dC0 needs matching grids");
    const GridSpec g = m1.grid;
    double sup = 0.0;
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k)
            sup = std::max(sup, torus_distance(m1.image_at_node(j, k),
                                               m2.image_at_node(j, k)));
    return sup;
}

MapPair time_one_map_pair(const Isotopy& iso, Exec exec, double t) {
    return {time_one_map(iso, exec, t), inverse_time_one_map(iso, exec, t)};
}

double d0(const MapPair& m1, const MapPair& m2) {
    return std::max(dC0(m1.fwd, m2.fwd), dC0(m1.inv, m2.inv));
}

IsotopyPath isotopy_path(const Isotopy& iso, Exec exec) {
    FlowHistory fwd = flow_history(iso, exec);
    Generator ginv = inverse(iso.generator(), iso.config(), exec);
    FlowHistory bwd = flow_history(Isotopy::make(ginv, iso.config()), exec);

    IsotopyPath p;
    p.slices.reserve(fwd.size());
    for (std::size_t k = 0; k < fwd.size(); ++k)
        p.slices.push_back({fwd[k], bwd[k]});
    return p;
}

double dbar(const IsotopyPath& p1, const IsotopyPath& p2) {
    if (p1.slices.size() != p2.slices.size())
        throw ShapeMismatch("dbar needs paths with matching slice counts");
    double sup = 0.0;
    for (std::size_t k = 0; k < p1.slices.size(); ++k)
        sup = std::max(sup, d0(p1.slices[k], p2.slices[k]));
    return sup;
}

} // namespace sympcalc
