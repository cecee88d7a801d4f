#include "gphase/fringes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gphase {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<FringeSample> synthesize(const ComplexMatrix& u, const DensityMatrix& rho,
                                     std::span<const double> chis, double noise_sigma,
                                     std::uint64_t seed, const Tolerances& tol) {
    const PhaseResult pr = trace_phase(u, rho, tol);
    const double v = pr.singular ? 0.0 : pr.visibility;  // singular pattern is exactly flat

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);

    std::vector<FringeSample> out;
    out.reserve(chis.size());
    for (double chi : chis) {
        if (!std::isfinite(chi)) throw std::invalid_argument("synthesize_fringes: non-finite chi");
        double intensity = 1.0 + v * std::cos(chi - pr.phase);
        if (noise_sigma > 0) intensity += noise(rng);
        out.push_back({chi, intensity});
    }
    return out;
}

}  // namespace

std::vector<FringeSample> synthesize_fringes(const ComplexMatrix& u, const DensityMatrix& rho,
                                             std::span<const double> chis,
                                             const Tolerances& tol) {
    return synthesize(u, rho, chis, 0.0, 0, tol);
}

std::vector<FringeSample> synthesize_fringes(const ComplexMatrix& u, const DensityMatrix& rho,
                                             std::span<const double> chis, double noise_sigma,
                                             std::uint64_t seed, const Tolerances& tol) {
    if (!(noise_sigma >= 0))
        throw std::invalid_argument("synthesize_fringes: noise sigma must be >= 0");
    return synthesize(u, rho, chis, noise_sigma, seed, tol);
}

FringeFit fit_fringes(std::span<const FringeSample> samples, double sing_tol) {
    if (samples.size() < 3) throw std::invalid_argument("fit_fringes: need at least 3 samples");

    double chi_min = samples.front().chi, chi_max = samples.front().chi;
    std::vector<double> distinct;
    for (const FringeSample& s : samples) {
        if (!std::isfinite(s.chi) || !std::isfinite(s.intensity))
            throw std::invalid_argument("fit_fringes: non-finite sample");
        chi_min = std::min(chi_min, s.chi);
        chi_max = std::max(chi_max, s.chi);
        if (std::none_of(distinct.begin(), distinct.end(),
                         [&](double c) { return c == s.chi; }))
            distinct.push_back(s.chi);
    }
    if (distinct.size() < 3)
        throw std::invalid_argument("fit_fringes: need at least 3 distinct chi values");
    if (!(chi_max - chi_min > kPi))
        throw std::invalid_argument("fit_fringes: chi values must span more than pi");

    // normal equations for I = A + B cos chi + C sin chi
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (const FringeSample& s : samples) {
        const std::array<double, 3> g{1.0, std::cos(s.chi), std::sin(s.chi)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += g[i] * g[j];
            rhs[i] += g[i] * s.intensity;
        }
    }

    // 3x3 Gaussian elimination with partial pivoting
    std::array<std::array<double, 4>, 3> aug{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) aug[i][j] = m[i][j];
        aug[i][3] = rhs[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        std::swap(aug[col], aug[piv]);
        if (std::abs(aug[col][col]) < 1e-12 * samples.size())
            throw std::invalid_argument("fit_fringes: rank-deficient sample set");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = aug[r][col] / aug[col][col];
            for (int j = col; j < 4; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    const double a = aug[0][3] / aug[0][0];
    const double b = aug[1][3] / aug[1][1];
    const double c = aug[2][3] / aug[2][2];

    double sq = 0;
    for (const FringeSample& s : samples) {
        const double r = s.intensity - (a + b * std::cos(s.chi) + c * std::sin(s.chi));
        sq += r * r;
    }
    const double residual = std::sqrt(sq / samples.size());

    if (!(a > 0)) throw std::invalid_argument("fit_fringes: nonpositive mean intensity");
    const double vis = std::hypot(b, c) / a;
    FringeFit fit;
    fit.residual = residual;
    if (vis < sing_tol) {
        fit.phase = 0.0;
        fit.visibility = 0.0;
    } else {
        const double ph = std::atan2(c, b);
        fit.phase = ph <= -kPi ? kPi : ph;
        fit.visibility = std::min(vis, 1.0);
    }
    return fit;
}

std::vector<double> uniform_chi_grid(int n) {
    if (n < 1) throw std::invalid_argument("uniform_chi_grid: n must be >= 1");
    std::vector<double> chis(n);
    for (int k = 0; k < n; ++k) chis[k] = 2.0 * kPi * k / n;
    return chis;
}

void write_fringe_csv(std::ostream& out, std::span<const FringeSample> samples) {
    out << "chi,intensity\n";
    char buf[80];
    for (const FringeSample& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.chi, s.intensity);
        out << buf;
    }
}

std::vector<FringeSample> read_fringe_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "chi,intensity")
        throw std::invalid_argument("fringe csv: missing 'chi,intensity' header");
    std::vector<FringeSample> samples;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("fringe csv: line " + std::to_string(lineno) +
                                        ": expected 'chi,intensity'");
        try {
            std::size_t used = 0;
            const double chi = std::stod(line.substr(0, comma), &used);
            const double intensity = std::stod(line.substr(comma + 1), &used);
            samples.push_back({chi, intensity});
        } catch (const std::exception&) {
            throw std::invalid_argument("fringe csv: line " + std::to_string(lineno) +
                                        ": malformed number");
        }
    }
    return samples;
}

}  // namespace gphase
