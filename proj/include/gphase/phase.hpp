#pragma once

#include <span>
#include <vector>

#include "gphase/sphere.hpp"
#include "gphase/spin.hpp"

namespace gphase {

/// Principal value in (-pi, pi]; the branch boundary -pi is normalized to +pi.
double principal_phase(double x);

/// Circular distance |a - b| mod 2pi, in [0, pi].
double phase_distance(double a, double b);

/// Interferometric phase arg Tr(U rho) with its fringe contrast. When the
/// visibility |Tr(U rho)| drops below sing_tol the phase is undefined; it is
/// reported as 0 with singular = true so downstream arithmetic stays total.
struct PhaseResult {
    double phase = 0;       // radians in (-pi, pi]; 0 when singular
    double visibility = 0;  // |Tr(U rho)|
    bool singular = false;
};

PhaseResult trace_phase(const ComplexMatrix& u, const DensityMatrix& rho,
                        const Tolerances& tol = {});

/// |Tr(u rho)| < sing_tol — the points where the phase is undefined.
bool is_singular(const ComplexMatrix& u, const DensityMatrix& rho,
                 const Tolerances& tol = {});

/// Parallel transport around a closed path of quantization axes: the ordered
/// product of rotations about n_k x n_{k+1} by the angle between them. Each
/// step rotation has no component about the transported axis itself, so no
/// dynamical phase enters. Path must be closed (first == last within 1e-12)
/// with adjacent separations < 0.1 rad.
ComplexMatrix holonomy_unitary(const SpinSystem& s, std::span<const Vec3> path);

/// arg <psi_m| u |psi_m> where |psi_m> is the (axis . J) eigenvector with
/// eigenvalue m = two_m/2. Throws if the overlap magnitude falls below
/// sing_tol (cannot happen for a transported eigenstate; reported as an
/// internal error if hit).
double transported_phase(const SpinSystem& s, const ComplexMatrix& u, const Axis& start_axis,
                         int two_m, double sing_tol = 1e-9);

/// Geometric phase of the spin component m around a circuit. With the
/// counterclockwise-positive orientation convention the transported
/// eigenstate acquires beta == -m * alpha (mod 2pi), up to discretization
/// error that shrinks with step size.
struct HolonomyResult {
    double beta = 0;        // radians in (-pi, pi]
    SolidAngle alpha_used;  // solid angle of the circuit
    int two_m = 0;          // the transported weight, as 2m
    long steps = 0;         // transport steps actually taken
};

HolonomyResult holonomy_phase(const SpinSystem& s, const SphericalCircuit& c, int two_m,
                              int steps_per_edge);

/// arg sum_j lambda_j e^{i beta_j} — the spectral combination of per-component
/// phases. Same singularity contract as trace_phase.
PhaseResult mixed_phase_from_spectrum(std::span<const double> lambdas,
                                      std::span<const double> betas,
                                      const Tolerances& tol = {});

/// One point of a sampled evolution U(t).
struct EvolutionSample {
    double t = 0;
    ComplexMatrix u;
};

struct PhaseSample {
    double t = 0;
    double raw_phase = 0;        // principal value in (-pi, pi]; 0 at singular samples
    double unwrapped_phase = 0;  // cumulative, history-dependent
    double visibility = 0;
};

/// Raw (modular) and unwrapped (non-modular) phase history along an
/// evolution. winding counts how many extra 2pi turns the unwrapped phase
/// accumulated relative to the final principal value.
struct PhaseTrace {
    std::vector<PhaseSample> samples;
    long winding = 0;
    std::vector<double> singular_crossings;  // t values of singular samples
};

/// Tracks arg Tr(U(t) rho) along the samples, unwrapping by the principal
/// increment arg(z_k / z_{k-1}). Samples with visibility < sing_tol are
/// recorded as singular crossings; the increment across them is interpolated
/// between the flanking non-singular samples. Requires U(t_0) == I; throws if
/// every sample is singular.
PhaseTrace track_phase(std::span<const EvolutionSample> evolution, const DensityMatrix& rho,
                       const Tolerances& tol = {});

/// beta / alpha in the infinitesimal-circuit regime (0 < alpha < 0.1), where
/// the n = 0 branch is unambiguous and the ratio reads off the spin weight.
double estimate_spin(double beta, SolidAngle alpha);

}  // namespace gphase
