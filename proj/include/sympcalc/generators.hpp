#ifndef SYMPCALC_GENERATORS_HPP
#define SYMPCALC_GENERATORS_HPP

#include <memory>
#include <vector>

#include "sympcalc/grid.hpp"
#include "sympcalc/hodge.hpp"
#include "sympcalc/parallel.hpp"

namespace sympcalc {

/** Generator of a symplectic isotopy: the velocity field contracted into
 * the area form equals dU^t + H^t, with U^t zero-mean and H^t harmonic.
 * Slices are stored at t = k/T and interpolated linearly in time. */
struct Generator {
    GridSpec grid;
    int steps = 0;                     // T
    std::vector<ScalarField> u;        // T+1 slices, each zero-mean
    std::vector<HarmonicForm> h;       // T+1 slices

    Generator() = default;
    Generator(GridSpec g, int T);

    /** Recenters every U slice to zero mean. */
    void normalize();
    double slice_time(int k) const { return static_cast<double>(k) / steps; }
};

/** Zero generator (identity isotopy). */
Generator zero_generator(GridSpec g, int T);

/** Rigid translation flow with velocity (v1, v2): U = 0 and the harmonic
 * part is (-v2, v1), so H = (0,1) translates by (1,0) in unit time. */
Generator translation_generator(GridSpec g, int T, double v1, double v2);

/** Time-independent generator from a single (U, H) pair. */
Generator constant_generator(GridSpec g, int T, ScalarField u, HarmonicForm h);

/** Band-limited random generator, constant in time, with the velocity field
 * scaled to have sup norm x_sup and a harmonic part of L2 norm h_l2. */
Generator random_generator(GridSpec g, int T, std::uint64_t seed, int max_mode,
                           double x_sup, double h_l2);

struct IntegratorConfig {
    int substeps = 2;              // RK4 steps per generator slice
    Interp interp = Interp::cubic; // spatial interpolation inside the flow
};

/** Flow evaluator: owns a generator plus the per-slice spectral gradients
 * dU^t, ready for velocity queries at arbitrary (point, time). */
class Isotopy {
  public:
    static Isotopy make(Generator g, IntegratorConfig cfg = {});

    const Generator& generator() const { return *gen_; }
    const IntegratorConfig& config() const { return cfg_; }

    /** Velocity at lifted point p and time s in [0,1]:
     * X1 = dU/dtheta2 + c2, X2 = -dU/dtheta1 - c1. */
    Point velocity(const Point& p, double s) const;

    /** Harmonic coefficients at time s (linear interpolation). */
    HarmonicForm harmonic_at(double s) const;

  private:
    std::shared_ptr<const Generator> gen_;
    std::vector<OneFormField> du_;
    IntegratorConfig cfg_;
};

/** Time-one (or time-t) map sampled on the grid. Displacements are stored
 * as periodic fields so the map can be evaluated anywhere; images keep
 * their lifts, so winding survives. */
struct DiscreteMap {
    GridSpec grid;
    ScalarField disp1; // lifted image minus node, theta1 component
    ScalarField disp2;
    Interp interp = Interp::cubic;

    Point image_at_node(int j, int k) const {
        return {grid.node1(j) + disp1.at(j, k), grid.node2(k) + disp2.at(j, k)};
    }
};

DiscreteMap identity_map(GridSpec g);

/** Evaluates the map at an arbitrary (lifted) point. */
Point eval_map(const DiscreteMap& m, const Point& p);

/** Composition outer(inner(x)) on the grid; lifts accumulate. */
DiscreteMap compose(const DiscreteMap& outer, const DiscreteMap& inner);

/** All slice maps of the flow: entry k is the time-k/T map. */
using FlowHistory = std::vector<DiscreteMap>;

/** RK4 flow of a single point from time 0 to t (lifted output).
 * Throws StepTooCoarse if one step moves the point by more than pi
 * in either coordinate. */
Point flow(const Isotopy& iso, const Point& x, double t);

/** RK4 flow from time t0 to t1 (either direction). */
Point flow_segment(const Isotopy& iso, const Point& x, double t0, double t1);

/** Flows every grid node from 0 to 1 and records each slice. */
FlowHistory flow_history(const Isotopy& iso, Exec exec = Exec::parallel);

/** Flows every grid node to time t (default the time-one map). */
DiscreteMap time_one_map(const Isotopy& iso, Exec exec = Exec::parallel, double t = 1.0);

/** Grid map of (phi^t)^{-1} via backward integration from t to 0. */
DiscreteMap inverse_time_one_map(const Isotopy& iso, Exec exec = Exec::parallel,
                                 double t = 1.0);

/** Group law on generators: returns the generator of the isotopy
 * phi_g1^t o phi_g2^t. Each slice of the first factor's inverse flow is
 * obtained by integrating the inverse generator forward. */
Generator product(const Generator& g1, const Generator& g2,
                  IntegratorConfig cfg = {}, Exec exec = Exec::parallel);

/** Generator of the inverse isotopy {(phi^t)^{-1}}. */
Generator inverse(const Generator& g, IntegratorConfig cfg = {},
                  Exec exec = Exec::parallel);

/** Generator of the conjugated isotopy psi^{-1} o phi^t o psi, where psi is
 * the time-one map of g_psi. */
Generator conjugate(const Generator& g, const Generator& g_psi,
                    IntegratorConfig cfg = {}, Exec exec = Exec::parallel);

/** Calibrator of a fixed closed 1-form along the flow: the line integral of
 * alpha over the trajectory of x up to time t. For exact alpha = dG this is
 * G(phi^t x) - G(x). */
double calibrator(const Isotopy& iso, const OneFormField& alpha, double t,
                  const Point& x);

/** Calibrator field of a harmonic-form path, frozen at its value at time t,
 * with the grid mean removed. Cheap: a harmonic form integrates along a
 * trajectory to the pairing with the lifted displacement. */
ScalarField normalized_calibrator(const Isotopy& iso,
                                  const std::vector<HarmonicForm>& path, double t,
                                  Exec exec = Exec::parallel);

/** Calibrator of alpha along the flow of every grid node, recorded at each
 * generator slice: entry k holds the field x -> calibrator value at t = k/T. */
std::vector<ScalarField> calibrator_history(const Isotopy& iso,
                                            const OneFormField& alpha,
                                            Exec exec = Exec::parallel);

/** Jacobian of the map by 4th-order central differences of the displacement
 * fields. Entry order: d(image1)/d(theta1), d(image1)/d(theta2),
 * d(image2)/d(theta1), d(image2)/d(theta2). */
struct MapJacobian {
    ScalarField j11, j12, j21, j22;
};
MapJacobian map_jacobian(const DiscreteMap& m);

/** Pointwise determinant of the map differential; 1 for exact
 * area-preserving maps. */
ScalarField jacobian_determinant(const DiscreteMap& m);

} // namespace sympcalc

#endif
