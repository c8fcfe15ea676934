#ifndef SYMPCALC_HODGE_HPP
#define SYMPCALC_HODGE_HPP

#include <optional>

#include "sympcalc/grid.hpp"
#include "sympcalc/spectral.hpp"

namespace sympcalc {

/** Constant-coefficient 1-form c1*dtheta1 + c2*dtheta2; on the flat torus
 * these are exactly the harmonic representatives of H^1. */
struct HarmonicForm {
    double c1 = 0.0;
    double c2 = 0.0;
};

inline HarmonicForm operator+(HarmonicForm a, HarmonicForm b) { return {a.c1 + b.c1, a.c2 + b.c2}; }
inline HarmonicForm operator-(HarmonicForm a, HarmonicForm b) { return {a.c1 - b.c1, a.c2 - b.c2}; }
inline HarmonicForm operator*(double s, HarmonicForm a) { return {s * a.c1, s * a.c2}; }

/** L2 norm of a harmonic form on the 2pi-torus: 2pi*sqrt(c1^2+c2^2). */
double l2_norm(const HarmonicForm& h);

/** Realizes a harmonic form as constant component fields on a grid. */
OneFormField as_form(const HarmonicForm& h, GridSpec g);

/** Result of splitting a closed form into section part + exact part dF,
 * with F zero-mean. */
struct SplitForm {
    HarmonicForm harmonic;
    ScalarField potential;
};

/** Optional replacement of the harmonic section: the class representative of
 * (c1, c2) becomes c1*(dtheta1 + dG1) + c2*(dtheta2 + dG2). Defaults to the
 * plain harmonic (Hodge) section when the offsets are absent. */
struct SectionConfig {
    std::optional<ScalarField> offset1;
    std::optional<ScalarField> offset2;
};

inline constexpr double kDefaultClosedTol = 1e-8;

/** True iff sup|d(alpha)| <= tol. */
bool is_closed(const OneFormField& alpha, double tol = kDefaultClosedTol);

/** Splits a closed 1-form into its section representative plus an exact part.
 * The class coefficients are the component means (flat-torus projection);
 * the potential comes from a spectral Poisson solve and is zero-mean.
 * Throws NotClosed when d(alpha) exceeds tol and ResidualTooLarge when the
 * reconstruction misses alpha by more than tol in sup norm. */
SplitForm split(const OneFormField& alpha, double tol = kDefaultClosedTol,
                const SectionConfig& section = {});

/** Reassembles section-part + d(potential) on the grid. */
OneFormField reconstruct(const SplitForm& s, GridSpec g,
                         const SectionConfig& section = {});

} // namespace sympcalc

#endif
