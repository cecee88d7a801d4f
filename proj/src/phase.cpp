#include "gphase/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gphase/kernels.hpp"

namespace gphase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double arg_principal(Complex z) {
    const double a = std::arg(z);
    return a <= -kPi ? kPi : a;  // branch convention: -pi maps to +pi
}

Complex trace_with_state(const ComplexMatrix& u, const DensityMatrix& rho,
                         const Tolerances& tol, const char* op) {
    tol.validate();
    if (u.dim() != rho.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    if (!u.all_finite()) throw std::invalid_argument(std::string(op) + ": non-finite entry");
    if (unitary_defect(u) >= tol.unit_tol)
        throw std::invalid_argument(std::string(op) + ": matrix is not unitary");
    return kernels::trace_product(u.data(), rho.mat().data(), u.dim());
}

PhaseResult phase_from_amplitude(Complex z, double sing_tol) {
    PhaseResult r;
    r.visibility = std::abs(z);
    r.singular = r.visibility < sing_tol;
    r.phase = r.singular ? 0.0 : arg_principal(z);
    return r;
}

}  // namespace

double principal_phase(double x) {
    const double y = std::remainder(x, kTwoPi);  // in [-pi, pi]
    return y <= -kPi ? kPi : y;
}

double phase_distance(double a, double b) {
    return std::abs(std::remainder(a - b, kTwoPi));
}

PhaseResult trace_phase(const ComplexMatrix& u, const DensityMatrix& rho, const Tolerances& tol) {
    return phase_from_amplitude(trace_with_state(u, rho, tol, "trace_phase"), tol.sing_tol);
}

bool is_singular(const ComplexMatrix& u, const DensityMatrix& rho, const Tolerances& tol) {
    return std::abs(trace_with_state(u, rho, tol, "is_singular")) < tol.sing_tol;
}

ComplexMatrix holonomy_unitary(const SpinSystem& s, std::span<const Vec3> path) {
    if (path.size() < 2) throw std::invalid_argument("holonomy_unitary: path too short");
    const Vec3 first = path.front();
    const Vec3 last = path.back();
    if (norm(first - last) > 1e-12)
        throw std::invalid_argument("holonomy_unitary: path is not closed");

    // Each step is the rotation about n_k x n_{k+1} carrying n_k onto n_{k+1}
    // (no component about the transported axis: the parallel-transport step).
    // The ordered product is accumulated in the fundamental representation as
    // a unit quaternion and lifted to spin J once at the end; the spin-J
    // representation is a group homomorphism, so this equals the ordered
    // product of the per-step rotation unitaries up to roundoff, at O(1) cost
    // per step instead of an eigensolve.
    double w = 1.0;
    Vec3 v{0, 0, 0};
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const Vec3& a = path[k];
        const Vec3& b = path[k + 1];
        const double angle = angle_between(a, b);
        if (angle >= 0.1)
            throw std::invalid_argument(
                "holonomy_unitary: adjacent samples separated by >= 0.1 rad");
        if (angle < 1e-15) continue;  // coincident samples contribute nothing

        const Vec3 axis = normalized(cross(a, b));
        const double sw = std::cos(0.5 * angle);
        const Vec3 sv = std::sin(0.5 * angle) * axis;

        // q <- q_step * q
        const double nw = sw * w - dot(sv, v);
        const Vec3 nv = sw * v + w * sv + cross(sv, v);
        const double r = std::sqrt(nw * nw + dot(nv, nv));
        w = nw / r;
        v = (1.0 / r) * nv;
    }

    const double vn = norm(v);
    const double phi = 2.0 * std::atan2(vn, w);
    // for a (near-)identity or 2pi total rotation the axis is immaterial
    const Axis axis = vn > 1e-300 ? (1.0 / vn) * v : Axis{0, 0, 1};
    return rotation_unitary(s, axis, phi);
}

double transported_phase(const SpinSystem& s, const ComplexMatrix& u, const Axis& start_axis,
                         int two_m, double sing_tol) {
    if (std::abs(two_m) > s.two_j || ((two_m - s.two_j) % 2) != 0)
        throw std::invalid_argument("transported_phase: two_m outside {-two_j, ..., two_j}");
    const EigenSystem es = hermitian_eigensystem(spin_along(s, start_axis));
    const int k = (s.two_j - two_m) / 2;

    const int dim = s.dim();
    Complex z{0.0, 0.0};
    for (int r = 0; r < dim; ++r) {
        Complex row{0.0, 0.0};
        for (int c = 0; c < dim; ++c) row += u.at(r, c) * es.vectors.at(c, k);
        z += std::conj(es.vectors.at(r, k)) * row;
    }
    if (std::abs(z) < sing_tol)
        throw std::runtime_error(
            "transported_phase: singular overlap for a transported eigenstate (internal error)");
    return arg_principal(z);
}

HolonomyResult holonomy_phase(const SpinSystem& s, const SphericalCircuit& c, int two_m,
                              int steps_per_edge) {
    const std::vector<Vec3> path = discretize(c, steps_per_edge);
    const ComplexMatrix u = holonomy_unitary(s, path);

    HolonomyResult res;
    res.beta = transported_phase(s, u, path.front(), two_m);
    res.alpha_used = solid_angle(c);
    res.two_m = two_m;
    res.steps = static_cast<long>(path.size()) - 1;
    return res;
}

PhaseResult mixed_phase_from_spectrum(std::span<const double> lambdas,
                                      std::span<const double> betas, const Tolerances& tol) {
    tol.validate();
    if (lambdas.size() != betas.size())
        throw std::invalid_argument("mixed_phase_from_spectrum: length mismatch");
    if (lambdas.empty()) throw std::invalid_argument("mixed_phase_from_spectrum: empty spectrum");
    double sum = 0;
    for (double l : lambdas) {
        if (!(l >= 0)) throw std::invalid_argument("mixed_phase_from_spectrum: negative weight");
        sum += l;
    }
    if (std::abs(sum - 1.0) >= 1e-12)
        throw std::invalid_argument("mixed_phase_from_spectrum: weights must sum to 1");

    Complex z{0.0, 0.0};
    for (std::size_t i = 0; i < lambdas.size(); ++i) z += lambdas[i] * std::polar(1.0, betas[i]);
    return phase_from_amplitude(z, tol.sing_tol);
}

PhaseTrace track_phase(std::span<const EvolutionSample> evolution, const DensityMatrix& rho,
                       const Tolerances& tol) {
    tol.validate();
    if (evolution.empty()) throw std::invalid_argument("track_phase: no samples");
    if (max_abs_diff(evolution.front().u, ComplexMatrix::identity(rho.dim())) > 1e-9)
        throw std::invalid_argument("track_phase: first sample is not the identity");

    const std::size_t n = evolution.size();
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const ComplexMatrix& u = evolution[k].u;
        if (u.dim() != rho.dim())
            throw std::invalid_argument("track_phase: sample dimension mismatch");
        if (!u.all_finite()) throw std::invalid_argument("track_phase: non-finite sample");
        z[k] = kernels::trace_product(u.data(), rho.mat().data(), u.dim());
    }

    PhaseTrace trace;
    trace.samples.resize(n);
    long last_good = -1;  // index of the latest non-singular sample

    for (std::size_t k = 0; k < n; ++k) {
        PhaseSample& ps = trace.samples[k];
        ps.t = evolution[k].t;
        ps.visibility = std::abs(z[k]);
        const bool singular = ps.visibility < tol.sing_tol;

        if (singular) {
            ps.raw_phase = 0.0;
            // placeholder; filled in once the next non-singular sample is known
            ps.unwrapped_phase = last_good >= 0 ? trace.samples[last_good].unwrapped_phase : 0.0;
            trace.singular_crossings.push_back(ps.t);
            continue;
        }

        ps.raw_phase = arg_principal(z[k]);
        if (last_good < 0) {
            ps.unwrapped_phase = ps.raw_phase;
        } else {
            // principal increment; across a singular gap this bridges the
            // flanking non-singular samples and the gap is interpolated
            const double step = arg_principal(z[k] / z[last_good]);
            ps.unwrapped_phase = trace.samples[last_good].unwrapped_phase + step;
            for (long j = last_good + 1; j < static_cast<long>(k); ++j)
                trace.samples[j].unwrapped_phase =
                    trace.samples[last_good].unwrapped_phase +
                    step * static_cast<double>(j - last_good) / static_cast<double>(k - last_good);
        }
        last_good = static_cast<long>(k);
    }

    if (last_good < 0) throw std::runtime_error("track_phase: all samples singular");

    const PhaseSample& fin = trace.samples[last_good];
    trace.winding = std::lround((fin.unwrapped_phase - fin.raw_phase) / kTwoPi);
    return trace;
}

double estimate_spin(double beta, SolidAngle alpha) {
    if (!(alpha.alpha > 0) || !(alpha.alpha < 0.1))
        throw std::invalid_argument(
            "estimate_spin: alpha outside the infinitesimal regime (0, 0.1)");
    if (!(std::abs(beta) < kPi))
        throw std::invalid_argument("estimate_spin: |beta| must be below pi");
    return beta / alpha.alpha;
}

}  // namespace gphase
