#pragma once

#include <vector>

#include "gphase/vec3.hpp"

namespace gphase {

// Closed oriented circuits on the unit sphere and their solid angles.
//
// Orientation convention (fixed once, used by every module downstream):
// a circuit traversed counterclockwise as seen from outside the sphere
// encloses positive solid angle. Reversing a circuit therefore yields the
// complementary surface, 4pi - alpha.

enum class CircuitKind { polygon, cap };

struct SphericalCircuit {
    CircuitKind kind = CircuitKind::polygon;

    // polygon: >= 3 unit vertices, implicitly closed (last connects to first);
    // consecutive vertices must be neither equal nor antipodal.
    std::vector<Vec3> vertices;

    // cap: the circle at polar_angle from cap_axis. orientation +1 traverses
    // counterclockwise around the axis (encloses the polar patch of area
    // 2pi(1-cos theta)); -1 traverses the other way (encloses the complement).
    Axis cap_axis{0, 0, 1};
    double cap_polar_angle = 0;
    int cap_orientation = +1;

    /// Validating constructors; throw std::invalid_argument on bad geometry.
    static SphericalCircuit make_polygon(std::vector<Vec3> vertices);
    static SphericalCircuit make_cap(Axis axis, double polar_angle, int orientation);
};

/// Oriented area on the unit sphere, reduced to [0, 4pi). The full sphere
/// (exactly 4pi) reduces to 0; phases only ever see e^{i m alpha}, which
/// cannot tell them apart.
struct SolidAngle {
    double alpha = 0;
};

/// Reduce any real steradian value into [0, 4pi).
double reduce_solid_angle(double alpha);

/// Oriented spherical excess of a geodesic polygon via the signed angle-sum
/// (Gauss-Bonnet) formula. Counterclockwise circuits give the enclosed area;
/// the reversed circuit gives the complementary surface.
SolidAngle solid_angle_polygon(const SphericalCircuit& c);

/// 2pi(1 - cos theta) for orientation +1, the complement for -1.
SolidAngle solid_angle_cap(double polar_angle, int orientation);

/// Dispatch on circuit kind.
SolidAngle solid_angle(const SphericalCircuit& c);

/// 4pi - alpha, reduced to [0, 4pi).
SolidAngle complementary(SolidAngle a);

/// Closed polyline of unit vectors along the circuit: geodesic subdivision of
/// each polygon edge, or equally spaced points around the cap circle (there
/// steps_per_edge counts points around the whole circle). The first point is
/// repeated at the end.
std::vector<Vec3> discretize(const SphericalCircuit& c, int steps_per_edge);

}  // namespace gphase
