#pragma once

#include <cmath>

namespace gphase {

/// 3-vector. Quantization axes and sphere points are unit Vec3s; the
/// operations that require unit length check it at their boundary.
struct Vec3 {
    double x = 0, y = 0, z = 0;

    bool operator==(const Vec3&) const = default;
};

/// A unit vector on S^2 (checked where consumed, tolerance 1e-12).
using Axis = Vec3;

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

/// v / |v|; throws std::invalid_argument for (near-)zero input.
Vec3 normalized(Vec3 v);

inline bool is_unit(Vec3 v, double tol = 1e-12) { return std::abs(dot(v, v) - 1.0) <= 2 * tol; }

/// Angle between unit vectors, in [0, pi]. Stable for small and near-pi angles.
inline double angle_between(Vec3 a, Vec3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

/// Point a fraction t along the geodesic from a to b (both unit, not antipodal).
Vec3 slerp(Vec3 a, Vec3 b, double t);

}  // namespace gphase
