#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gphase/phase.hpp"

namespace gphase {

struct FringeSample {
    double chi = 0;        // variable arm phase, radians
    double intensity = 0;  // >= 0
};

struct FringeFit {
    double phase = 0;       // radians in (-pi, pi]
    double visibility = 0;  // in [0, 1]
    double residual = 0;    // RMS misfit
};

/// Two-beam readout model: I(chi) = 1 + |Tr(u rho)| cos(chi - arg Tr(u rho)).
/// At a singularity the pattern is exactly flat at 1.
std::vector<FringeSample> synthesize_fringes(const ComplexMatrix& u, const DensityMatrix& rho,
                                             std::span<const double> chis,
                                             const Tolerances& tol = {});

/// Same, with additive Gaussian noise of the given sigma (seeded, deterministic).
std::vector<FringeSample> synthesize_fringes(const ComplexMatrix& u, const DensityMatrix& rho,
                                             std::span<const double> chis, double noise_sigma,
                                             std::uint64_t seed, const Tolerances& tol = {});

/// Ordinary linear least squares of I = A + B cos chi + C sin chi; recovers
/// phase = atan2(C, B) and visibility = sqrt(B^2 + C^2)/A. Needs >= 3 samples
/// at >= 3 distinct chi values spanning more than pi. A fit with visibility
/// below sing_tol is reported as the singular-equivalent (phase 0, visibility 0).
FringeFit fit_fringes(std::span<const FringeSample> samples, double sing_tol = 1e-9);

/// n chi values uniform over [0, 2pi), starting at 0.
std::vector<double> uniform_chi_grid(int n);

/// CSV with header "chi,intensity"; values round-trip bit-exactly.
void write_fringe_csv(std::ostream& out, std::span<const FringeSample> samples);
std::vector<FringeSample> read_fringe_csv(std::istream& in);

}  // namespace gphase
