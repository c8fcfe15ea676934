#ifndef SYMPCALC_EXPERIMENTS_HPP
#define SYMPCALC_EXPERIMENTS_HPP

#include <map>
#include <string>
#include <vector>

#include "sympcalc/invariants.hpp"
#include "sympcalc/metrics.hpp"

namespace sympcalc {

/** Tagged rows of experiment output. Columns are doubles; everything else
 * (config hash, grid, seed, recorded constants) lives in the metadata map.
 * Given one config the table is reproduced bit for bit. */
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> metadata;

    void add_row(std::vector<double> row);
};

enum class ShearFamily { reciprocal, log_reciprocal, constant };

/** Cutoff shear profile h_i on the theta2 circle: zero on [0, 1/i], the
 * family profile on [2/i, 2pi], cubic smoothstep blend between. Profiles are
 * pointwise nondecreasing in the cutoff index. */
struct ShearProfileSpec {
    ShearFamily family = ShearFamily::reciprocal;
    int cutoff_index = 8;   // i
    double amplitude = 1.0; // overall scale; the constant family uses it directly
    bool unit_mean = false; // rescale so the grid mean of the profile is 1
};

/** Profile value at theta2 (analytic, before any unit-mean rescale). */
double shear_profile(const ShearProfileSpec& spec, double theta2);

/** Builds the shear generator: the profile field h_i(theta2) dtheta2 is
 * split into mean(h_i) dtheta2 plus an exact part dF, giving U = F constant
 * in time and H = (0, mean). Requires N >= 8*i to resolve the cutoff band. */
Generator build_shear(const ShearProfileSpec& spec, GridSpec g, int T);

/** Shear rescaled so its length functional hits target (length is linear in
 * the profile scale). */
Generator build_shear_with_length(const ShearProfileSpec& spec, GridSpec g, int T,
                                  double target_length, double kappa = 1.0);

struct DivergenceResult {
    ResultTable table;
    bool delta_strictly_increasing = true;
    bool dc0_nonincreasing = true;
};

/** Shear divergence driver: per cutoff index the invariant is assembled both
 * from the closed-form profile integrals and from the flux/calibrator route,
 * together with the length and the C0 distance to the finest map. */
DivergenceResult divergence_experiment(const ShearProfileSpec& family_spec,
                                       const std::vector<int>& i_list, GridSpec g,
                                       int T, const Point& basepoint,
                                       IntegratorConfig cfg = {},
                                       Exec exec = Exec::parallel);

struct ConjugationResult {
    ResultTable table;
    double b_hat = 0.0; // recorded empirical calibrator/harmonic-norm ratio
    bool all_within_bound = true;
};

/** Conjugates every generator in gs by the time-one map of g_psi and compares
 * the conjugated lengths against 2*(b_hat+1)*length. b_hat is measured by
 * scanning unit harmonic forms through the probe's calibrator. */
ConjugationResult conjugation_experiment(const std::vector<Generator>& gs,
                                         const Generator& g_psi, double kappa = 1.0,
                                         IntegratorConfig cfg = {},
                                         Exec exec = Exec::parallel);

/** Configuration of the energy-gap construction. The bump amplitude obeys
 * osc(beta) <= epsilon/(C*E + epsilon); an explicit amplitude below that cap
 * may be supplied to keep the perturbed flows C0-small. */
struct EnergyGapSpec {
    double energy = 1.0;   // E
    double epsilon = 0.1;
    Point disc_center{0.5 * kTwoPi, 0.5 * kTwoPi};
    double disc_radius = 0.1;
    double bump_amplitude = -1.0; // <= 0: use the cap epsilon/(C*E+epsilon)
    double alpha_angle = 0.0;     // unit form cos(a) dtheta1 + sin(a) dtheta2, /2pi
    Point basepoint{0.0, 0.0};
};

struct EnergyGapResult {
    ResultTable table;
    double working_c = 0.0;  // 2*max{2, C(alpha)}
    double c_alpha = 0.0;
    bool dbar_small = true;      // both perturbed paths stay C0-close
    bool lengths_within = true;  // both lengths <= E + epsilon
    bool dichotomy_lemma = false;    // max(D2, -D1) >= C*E - eps, either sign convention
    bool dichotomy_derived = false;  // same with threshold 2*C*E - eps
};

/** One stage of the energy-gap construction: bump Hamiltonians built from the
 * running sup/inf of the base calibrator over the disc, composed onto the
 * base isotopy, with distances, lengths and the two invariant values
 * reported for both amplitude sign conventions. */
EnergyGapResult energy_gap_experiment(const EnergyGapSpec& spec, const Generator& base,
                                      const Generator& probe, GridSpec g,
                                      IntegratorConfig cfg = {},
                                      Exec exec = Exec::parallel);

/** The composite Hamiltonian (K1 # K2bar)^t(z) = K1^t(z) - K2^t(w) with
 * w = phi_{K2}^t((phi_{K1}^t)^{-1}(z)); compactly supported whenever K1, K2
 * are. Used by the support case analysis of the energy-gap argument. */
double sharp_bar(const Generator& k1, const Generator& k2, double t, const Point& z,
                 IntegratorConfig cfg = {});

} // namespace sympcalc

#endif
