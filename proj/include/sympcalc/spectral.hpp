#ifndef SYMPCALC_SPECTRAL_HPP
#define SYMPCALC_SPECTRAL_HPP

#include <cstdint>

#include "sympcalc/grid.hpp"

namespace sympcalc {

/** Fourier differentiation in theta1 and theta2; the Nyquist mode is
 * zeroed so derivatives of real fields stay real and odd-symmetric. */
OneFormField spectral_gradient(const ScalarField& f);

/** Coefficient of dtheta1^dtheta2 in d(alpha): da2/dtheta1 - da1/dtheta2. */
ScalarField exterior_derivative(const OneFormField& alpha);

/** Solves Laplace(F) = g with zero-mean F (zero mode pinned to 0).
 * The mean of g is discarded; pass a zero-mean right-hand side. */
ScalarField poisson_solve(const ScalarField& g);

/** Deterministic band-limited random field: modes with |m|,|k| <= max_mode,
 * coefficients drawn from the seeded generator, zero mean, then scaled so
 * the sup norm equals amplitude. */
ScalarField random_band_limited(GridSpec g, std::uint64_t seed, int max_mode,
                                double amplitude);

} // namespace sympcalc

#endif
