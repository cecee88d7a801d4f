#include "gphase/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gphase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

// Consecutive vertices must be separated by an angle in (1e-8, pi - 1e-8):
// the excess formula is ill-conditioned at degenerate or antipodal edges.
constexpr double kEdgeGuard = 1e-8;

void check_polygon(const SphericalCircuit& c) {
    if (c.kind != CircuitKind::polygon)
        throw std::invalid_argument("solid_angle_polygon: circuit is not a polygon");
    const auto& v = c.vertices;
    if (v.size() < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
    for (const Vec3& p : v)
        if (!is_unit(p)) throw std::invalid_argument("polygon: vertex is not unit length");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double sep = angle_between(v[i], v[(i + 1) % v.size()]);
        if (sep <= kEdgeGuard || sep >= kPi - kEdgeGuard)
            throw std::invalid_argument("polygon: consecutive vertices equal or antipodal");
    }
}

// Unit tangent at p pointing along the geodesic toward q.
Vec3 tangent_toward(Vec3 p, Vec3 q) { return normalized(q - dot(q, p) * p); }

}  // namespace

SphericalCircuit SphericalCircuit::make_polygon(std::vector<Vec3> vertices) {
    SphericalCircuit c;
    c.kind = CircuitKind::polygon;
    c.vertices = std::move(vertices);
    check_polygon(c);
    return c;
}

SphericalCircuit SphericalCircuit::make_cap(Axis axis, double polar_angle, int orientation) {
    if (!is_unit(axis)) throw std::invalid_argument("cap: axis is not unit length");
    if (!(polar_angle >= 0) || !(polar_angle <= kPi))
        throw std::invalid_argument("cap: polar angle outside [0, pi]");
    if (orientation != 1 && orientation != -1)
        throw std::invalid_argument("cap: orientation must be +1 or -1");
    SphericalCircuit c;
    c.kind = CircuitKind::cap;
    c.cap_axis = axis;
    c.cap_polar_angle = polar_angle;
    c.cap_orientation = orientation;
    return c;
}

double reduce_solid_angle(double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("solid angle: non-finite value");
    double r = std::fmod(alpha, kFourPi);
    if (r < 0) r += kFourPi;
    if (r >= kFourPi) r = 0;  // fmod rounding at the upper edge
    return r;
}

SolidAngle solid_angle_polygon(const SphericalCircuit& c) {
    check_polygon(c);
    const auto& v = c.vertices;
    const std::size_t n = v.size();

    // Gauss-Bonnet: the enclosed area is 2pi minus the sum of the signed
    // turning angles, measured about the outward normal at each vertex.
    // Equivalent to sum(interior angles) - (n-2) pi with oriented angles.
    double turning = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& prev = v[(i + n - 1) % n];
        const Vec3& here = v[i];
        const Vec3& next = v[(i + 1) % n];
        const Vec3 incoming = -1.0 * tangent_toward(here, prev);
        const Vec3 outgoing = tangent_toward(here, next);
        turning += std::atan2(dot(here, cross(incoming, outgoing)), dot(incoming, outgoing));
    }
    return SolidAngle{reduce_solid_angle(2.0 * kPi - turning)};
}

SolidAngle solid_angle_cap(double polar_angle, int orientation) {
    if (!(polar_angle >= 0) || !(polar_angle <= kPi))
        throw std::invalid_argument("solid_angle_cap: polar angle outside [0, pi]");
    if (orientation != 1 && orientation != -1)
        throw std::invalid_argument("solid_angle_cap: orientation must be +1 or -1");
    const double cap = 2.0 * kPi * (1.0 - std::cos(polar_angle));
    return SolidAngle{reduce_solid_angle(orientation > 0 ? cap : kFourPi - cap)};
}

SolidAngle solid_angle(const SphericalCircuit& c) {
    return c.kind == CircuitKind::polygon
               ? solid_angle_polygon(c)
               : solid_angle_cap(c.cap_polar_angle, c.cap_orientation);
}

SolidAngle complementary(SolidAngle a) { return SolidAngle{reduce_solid_angle(kFourPi - a.alpha)}; }

std::vector<Vec3> discretize(const SphericalCircuit& c, int steps_per_edge) {
    if (steps_per_edge < 1) throw std::invalid_argument("discretize: steps_per_edge must be >= 1");

    std::vector<Vec3> path;
    if (c.kind == CircuitKind::polygon) {
        check_polygon(c);
        const auto& v = c.vertices;
        const std::size_t n = v.size();
        path.reserve(n * steps_per_edge + 1);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3& a = v[i];
            const Vec3& b = v[(i + 1) % n];
            path.push_back(a);  // exact vertex, so closure is bitwise
            for (int k = 1; k < steps_per_edge; ++k)
                path.push_back(slerp(a, b, static_cast<double>(k) / steps_per_edge));
        }
        path.push_back(v[0]);
        return path;
    }

    // cap: steps_per_edge points around the whole circle
    if (!is_unit(c.cap_axis)) throw std::invalid_argument("discretize: cap axis is not unit");
    const Vec3 pole = std::abs(c.cap_axis.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    const Vec3 e1 = normalized(cross(c.cap_axis, pole));
    const Vec3 e2 = cross(c.cap_axis, e1);  // (e1, e2, axis) right-handed
    const double st = std::sin(c.cap_polar_angle);
    const double ct = std::cos(c.cap_polar_angle);
    path.reserve(steps_per_edge + 1);
    for (int k = 0; k <= steps_per_edge; ++k) {
        const double phi =
            c.cap_orientation * 2.0 * kPi * (k % steps_per_edge) / steps_per_edge;
        path.push_back(normalized(st * std::cos(phi) * e1 + st * std::sin(phi) * e2 +
                                  ct * c.cap_axis));
    }
    return path;
}

}  // namespace gphase
