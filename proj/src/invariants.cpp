#include "sympcalc/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sympcalc {

FluxClass flux(const Generator& g) {
    double c1 = 0.5 * (g.h.front().c1 + g.h.back().c1);
    double c2 = 0.5 * (g.h.front().c2 + g.h.back().c2);
    for (int k = 1; k < g.steps; ++k) {
        c1 += g.h[k].c1;
        c2 += g.h[k].c2;
    }
    return {c1 / g.steps, c2 / g.steps};
}

double pair_flux(const OneFormField& alpha, const FluxClass& fl, double tol) {
    if (!is_closed(alpha, tol))
        throw NotClosed("pair_flux needs a closed form");
    ScalarField integrand(alpha.grid());
    for (std::size_t i = 0; i < integrand.values.size(); ++i)
        integrand.values[i] = alpha.a1.values[i] * fl.c2 - alpha.a2.values[i] * fl.c1;
    return integrate_scalar(integrand);
}

DeltaReport delta(const Generator& g, const OneFormField& alpha, const Point& x,
                  IntegratorConfig cfg, double tol) {
    if (!is_closed(alpha, tol)) throw NotClosed("delta needs a closed form");
    DeltaReport r;
    r.alpha_l2 = l2_norm(alpha);
    if (r.alpha_l2 <= 1e-14) throw ZeroForm("delta needs a nonzero form");
    r.basepoint = x;
    r.flux_pairing = pair_flux(alpha, flux(g), tol);
    Isotopy iso = Isotopy::make(g, cfg);
    r.calibrator_term = calibrator(iso, alpha, 1.0, x);
    r.value = (r.flux_pairing - g.grid.area() * r.calibrator_term) / r.alpha_l2;
    return r;
}

DeltaPathResult delta_path(const DiscreteMap& m, const OneFormField& alpha,
                           const Point& x, int samples_per_winding,
                           double spike_threshold, double tol, Exec exec) {
    if (!is_closed(alpha, tol)) throw NotClosed("delta_path needs a closed form");
    double alpha_l2 = l2_norm(alpha);
    if (alpha_l2 <= 1e-14) throw ZeroForm("delta_path needs a nonzero form");

    const GridSpec g = m.grid;
    if (samples_per_winding <= 0) samples_per_winding = 4 * g.n;

    // Pull alpha back through the map: (phi^* alpha)_i = a_j(phi(x)) dphi_j/dx_i.
    MapJacobian jac = map_jacobian(m);
    DeltaPathResult out;
    OneFormField beta{ScalarField(g), ScalarField(g)};
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
            Point img = m.image_at_node(j, k);
            double a1 = eval_field(alpha.a1, img, m.interp);
            double a2 = eval_field(alpha.a2, img, m.interp);
            double j11 = jac.j11.at(j, k), j12 = jac.j12.at(j, k);
            double j21 = jac.j21.at(j, k), j22 = jac.j22.at(j, k);
            beta.a1.at(j, k) = a1 * j11 + a2 * j21 - alpha.a1.at(j, k);
            beta.a2.at(j, k) = a1 * j12 + a2 * j22 - alpha.a2.at(j, k);
            double spike = std::max({std::fabs(j11), std::fabs(j12),
                                     std::fabs(j21), std::fabs(j22)});
            if (spike > spike_threshold) out.jacobian_spike = true;
        }

    // Accumulate G(y) = int over the two-segment lifted path x -> (y1, x2) -> y.
    Point x0 = reduce(x);
    ScalarField G(g);
    auto segment = [&](const Point& from, const Point& to) {
        double len = std::max(std::fabs(to.t1 - from.t1), std::fabs(to.t2 - from.t2));
        int n_seg = std::max(2, static_cast<int>(std::ceil(
                                    samples_per_winding * len / kTwoPi)));
        double total = 0.0;
        for (int i = 0; i < n_seg; ++i) {
            double sa = static_cast<double>(i) / n_seg;
            double sb = static_cast<double>(i + 1) / n_seg;
            Point pa{from.t1 + sa * (to.t1 - from.t1), from.t2 + sa * (to.t2 - from.t2)};
            Point pb{from.t1 + sb * (to.t1 - from.t1), from.t2 + sb * (to.t2 - from.t2)};
            Point mid{0.5 * (pa.t1 + pb.t1), 0.5 * (pa.t2 + pb.t2)};
            double b1 = eval_field(beta.a1, mid, m.interp);
            double b2 = eval_field(beta.a2, mid, m.interp);
            total += b1 * (pb.t1 - pa.t1) + b2 * (pb.t2 - pa.t2);
        }
        return total;
    };
    for_each_index(g.size(), exec, [&](std::size_t idx) {
        int j = static_cast<int>(idx) / g.n;
        int k = static_cast<int>(idx) % g.n;
        Point y{g.node1(j), g.node2(k)};
        Point corner{y.t1, x0.t2};
        G.at(j, k) = segment(x0, corner) + segment(corner, y);
    });

    out.value = integrate_scalar(G) / alpha_l2;
    return out;
}

NormInftySampled norm_infty_sampled(const Generator& g, int directions,
                                    IntegratorConfig cfg, Exec exec,
                                    const std::vector<ScalarField>* exact_potentials) {
    if (directions < 4) throw ConfigError("norm_infty_sampled needs K >= 4 directions");

    Isotopy iso = Isotopy::make(g, cfg);
    DiscreteMap m = time_one_map(iso, exec);
    FluxClass fl = flux(g);
    const GridSpec grid = g.grid;
    const double vol = grid.area();

    // Per-potential data for the exact-perturbation mode.
    struct Perturbation {
        const ScalarField* G;
        ScalarField transported; // G o phi^1 - G, per node
        double dG_l2sq;
    };
    std::vector<Perturbation> perts;
    if (exact_potentials) {
        for (const ScalarField& G : *exact_potentials) {
            Perturbation p;
            p.G = &G;
            p.transported = ScalarField(grid);
            for (int j = 0; j < grid.n; ++j)
                for (int k = 0; k < grid.n; ++k)
                    p.transported.at(j, k) =
                        eval_field(G, m.image_at_node(j, k), m.interp) - G.at(j, k);
            double n = l2_norm(spectral_gradient(G));
            p.dG_l2sq = n * n;
            perts.push_back(std::move(p));
        }
    }

    NormInftySampled out;
    out.directions = directions;
    out.per_direction.assign(directions, 0.0);

    // Unit-L2 harmonic directions over a half circle; signs are absorbed by
    // the absolute value. Each direction is scanned over every grid basepoint
    // in a fixed order so the reduction is deterministic.
    for_each_index(static_cast<std::size_t>(directions), exec, [&](std::size_t kd) {
        double angle = 0.5 * kTwoPi * static_cast<double>(kd) / directions;
        double c1 = std::cos(angle) / kTwoPi;
        double c2 = std::sin(angle) / kTwoPi;
        double pairing = vol * (c1 * fl.c2 - c2 * fl.c1);

        double best = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double cal = c1 * m.disp1.values[i] + c2 * m.disp2.values[i];
            best = std::max(best, std::fabs(pairing - vol * cal));
            for (const Perturbation& p : perts) {
                // beta = (alpha + dG) / ||alpha + dG||; the invariant is linear
                // in the form, exact pieces pair to zero with the flux.
                double scale = 1.0 / std::sqrt(1.0 + p.dG_l2sq);
                double tilde = pairing - vol * (cal + p.transported.values[i]);
                best = std::max(best, std::fabs(scale * tilde));
            }
        }
        out.per_direction[kd] = best;
    });
    for (double v : out.per_direction) out.value = std::max(out.value, v);
    return out;
}

double cocycle_check(const Generator& g1, const Generator& g2, const Generator& g_psi,
                     const OneFormField& alpha, const Point& y, IntegratorConfig cfg,
                     Exec exec) {
    Generator psi_inv = inverse(g_psi, cfg, exec);
    Generator a = product(g1, psi_inv, cfg, exec);
    Generator b = product(g2, psi_inv, cfg, exec);
    Generator c = product(g1, inverse(g2, cfg, exec), cfg, exec);

    // Basepoint of the third term: phi2^1((psi^1)^{-1}(y)).
    Isotopy iso_psi = Isotopy::make(g_psi, cfg);
    Point y_back = flow_segment(iso_psi, y, 1.0, 0.0);
    Point pt = flow(Isotopy::make(g2, cfg), y_back, 1.0);

    double lhs = delta(a, alpha, y, cfg).value;
    double rhs = delta(b, alpha, y, cfg).value + delta(c, alpha, pt, cfg).value;
    return std::fabs(lhs - rhs);
}

} // namespace sympcalc
