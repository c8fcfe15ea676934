#ifndef SYMPCALC_INVARIANTS_HPP
#define SYMPCALC_INVARIANTS_HPP

#include <vector>

#include "sympcalc/generators.hpp"

namespace sympcalc {

/** Cohomology class of the flux in the basis [dtheta1], [dtheta2]. */
struct FluxClass {
    double c1 = 0.0;
    double c2 = 0.0;
};

/** Flux of the isotopy: time integral of the harmonic path (the exact parts
 * carry no class). Vanishes exactly on Hamiltonian generators. */
FluxClass flux(const Generator& g);

/** Intersection pairing of [alpha] with the flux class:
 * int alpha ^ (c1 dtheta1 + c2 dtheta2) = int (a1 c2 - a2 c1) dA. */
double pair_flux(const OneFormField& alpha, const FluxClass& fl,
                 double tol = kDefaultClosedTol);

/** The calibration invariant assembled from the flux pairing and the
 * calibrator at the basepoint:
 * value = (flux_pairing - Vol * calibrator_term) / alpha_l2. */
struct DeltaReport {
    double flux_pairing = 0.0;
    double calibrator_term = 0.0;
    double value = 0.0;
    double alpha_l2 = 0.0;
    Point basepoint;
};

DeltaReport delta(const Generator& g, const OneFormField& alpha, const Point& x,
                  IntegratorConfig cfg = {}, double tol = kDefaultClosedTol);

/** Same invariant assembled the long way from the time-one map alone:
 * pull alpha back through the map (finite-difference Jacobian), line-integrate
 * the difference from the basepoint to every node along axis-aligned lifted
 * two-segment curves, and average over the torus. */
struct DeltaPathResult {
    double value = 0.0;
    bool jacobian_spike = false; // set when a differential entry is suspect
};

DeltaPathResult delta_path(const DiscreteMap& m, const OneFormField& alpha,
                           const Point& x, int samples_per_winding = 0,
                           double spike_threshold = 100.0,
                           double tol = kDefaultClosedTol,
                           Exec exec = Exec::parallel);

/** Sampled sup of |flux pairing - Vol * calibrator| over a dictionary of
 * unit-L2 closed forms and all grid basepoints. A lower bound of the sup
 * over the full unit sphere; the dictionary holds K harmonic directions,
 * optionally perturbed by exact pieces dG (unit-renormalized). */
struct NormInftySampled {
    double value = 0.0;
    int directions = 0;
    bool lower_bound = true; // always: a finite dictionary undershoots the sup
    std::vector<double> per_direction;
};

NormInftySampled norm_infty_sampled(const Generator& g, int directions,
                                    IntegratorConfig cfg = {},
                                    Exec exec = Exec::parallel,
                                    const std::vector<ScalarField>* exact_potentials = nullptr);

/** Residual of the composition identity
 * Delta(phi1 o psi^{-1})_y = Delta(phi2 o psi^{-1})_y
 *                          + Delta(phi1 o phi2^{-1})_{phi2(psi^{-1}(y))}.
 * All three composites are built through the generator group law. */
double cocycle_check(const Generator& g1, const Generator& g2, const Generator& g_psi,
                     const OneFormField& alpha, const Point& y,
                     IntegratorConfig cfg = {}, Exec exec = Exec::parallel);

} // namespace sympcalc

#endif
