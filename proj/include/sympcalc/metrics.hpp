#ifndef SYMPCALC_METRICS_HPP
#define SYMPCALC_METRICS_HPP

#include <vector>

#include "sympcalc/generators.hpp"

namespace sympcalc {

/** Oscillation: grid max minus grid min. */
double osc(const ScalarField& f);

/** Length breakdown of a generator: hamiltonian part integrates osc(U^t),
 * harmonic part integrates the L2 norm of H^t, total combines them with the
 * weight kappa. */
struct LengthReport {
    double hamiltonian_part = 0.0;
    double harmonic_part = 0.0;
    double kappa = 1.0;
    double total = 0.0;
};

/** Trapezoid quadrature in t of osc(U^t) + kappa*||H^t||_L2. */
LengthReport length(const Generator& g, double kappa = 1.0);

/** Generator-space distance: integral of osc(U-V) + kappa*||H-K||_L2. */
double D0(const Generator& g1, const Generator& g2, double kappa = 1.0);

/** Average of D0 on the pair and on their inverses. */
double D1(const Generator& g1, const Generator& g2, double kappa = 1.0,
          IntegratorConfig cfg = {}, Exec exec = Exec::parallel);

/** Upper bound for the Hofer-like norm of the time-one map:
 * (length(g) + length(inverse(g)))/2. The true norm takes an infimum over
 * every generating isotopy and is not computable; callers get the bound for
 * the one presented. */
double hofer_like_norm_upper(const Generator& g, double kappa = 1.0,
                             IntegratorConfig cfg = {}, Exec exec = Exec::parallel);

/** Finite-sequence proxy for the lim-inf norm on finite-energy limits:
 * min over the supplied generators of hofer_like_norm_upper. The dc0_monotone
 * flag records whether the time-one maps got pairwise closer along the list,
 * the caller's convergence proxy. */
struct FsHomeoProxy {
    double value = 0.0;
    bool dc0_monotone = true;
};
FsHomeoProxy fshomeo_norm_proxy(const std::vector<Generator>& gs, double kappa = 1.0,
                                IntegratorConfig cfg = {}, Exec exec = Exec::parallel);

/** Uniform distance between two grid maps: sup over nodes of the torus
 * distance between images. */
double dC0(const DiscreteMap& m1, const DiscreteMap& m2);

/** Map together with its inverse (for the two-sided C0 distance). */
struct MapPair {
    DiscreteMap fwd;
    DiscreteMap inv;
};

MapPair time_one_map_pair(const Isotopy& iso, Exec exec = Exec::parallel, double t = 1.0);

/** d0 = max(dC0(f,h), dC0(f^{-1},h^{-1})). */
double d0(const MapPair& m1, const MapPair& m2);

/** Path of maps with inverses at every stored slice. */
struct IsotopyPath {
    std::vector<MapPair> slices;
};

IsotopyPath isotopy_path(const Isotopy& iso, Exec exec = Exec::parallel);

/** dbar = max over stored slices of d0; a lower bound for the continuous-
 * time sup. */
double dbar(const IsotopyPath& p1, const IsotopyPath& p2);

} // namespace sympcalc

#endif
