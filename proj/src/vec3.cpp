#include "gphase/vec3.hpp"

#include <stdexcept>

namespace gphase {

Vec3 normalized(Vec3 v) {
    const double n = norm(v);
    if (!(n > 1e-14) || !std::isfinite(n))
        throw std::invalid_argument("normalized: zero or non-finite vector");
    if (std::abs(n - 1.0) < 4e-16) return v;  // idempotent on unit input
    return {v.x / n, v.y / n, v.z / n};
}

Vec3 slerp(Vec3 a, Vec3 b, double t) {
    const double omega = angle_between(a, b);
    if (omega < 1e-15) return a;
    const double so = std::sin(omega);
    const Vec3 p = (std::sin((1.0 - t) * omega) / so) * a + (std::sin(t * omega) / so) * b;
    return normalized(p);
}

}  // namespace gphase
