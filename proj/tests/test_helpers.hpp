#pragma once

// Shared helpers for the unit and acceptance suites: seeded random frames,
// similarity transforms, and conversions between the library frame type and
// the oracle's raw coordinate layout.

#include "oracle.hpp"

#include "romkit/skeleton.hpp"
#include "romkit/vec3.hpp"

#include <array>
#include <cmath>
#include <random>

namespace testutil {

inline std::array<double, 63> to_coords(const romkit::HandSkeletonFrame& f) {
    std::array<double, 63> c{};
    for (std::size_t j = 0; j < romkit::kJointCount; ++j) {
        c[3 * j] = f.joints[j].x;
        c[3 * j + 1] = f.joints[j].y;
        c[3 * j + 2] = f.joints[j].z;
    }
    return c;
}

inline romkit::HandSkeletonFrame from_coords(const std::array<double, 63>& c) {
    romkit::HandSkeletonFrame f;
    for (std::size_t j = 0; j < romkit::kJointCount; ++j)
        f.joints[j] = {c[3 * j], c[3 * j + 1], c[3 * j + 2]};
    return f;
}

// Uniform random joints in a 200 mm cube, rejected until well conditioned
// (see oracle::well_conditioned).
inline romkit::HandSkeletonFrame random_frame(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    while (true) {
        std::array<double, 63> c;
        for (auto& v : c)
            v = u(rng);
        if (oracle::well_conditioned(c))
            return from_coords(c);
    }
}

struct Similarity {
    double r[3][3];
    romkit::Vec3 t;
    double scale;

    romkit::Vec3 apply(const romkit::Vec3& p) const {
        romkit::Vec3 q{r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z,
                       r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z,
                       r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z};
        return q * scale + t;
    }
};

// Rotation from a random unit quaternion, translation in +-500 mm, scale
// log-uniform in [0.01, 100].
inline Similarity random_similarity(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double q[4];
    double n = 0.0;
    do {
        n = 0.0;
        for (auto& v : q) {
            v = g(rng);
            n += v * v;
        }
    } while (n < 1e-12);
    n = std::sqrt(n);
    for (auto& v : q)
        v /= n;
    double w = q[0], x = q[1], y = q[2], z = q[3];

    Similarity s;
    s.r[0][0] = 1 - 2 * (y * y + z * z);
    s.r[0][1] = 2 * (x * y - w * z);
    s.r[0][2] = 2 * (x * z + w * y);
    s.r[1][0] = 2 * (x * y + w * z);
    s.r[1][1] = 1 - 2 * (x * x + z * z);
    s.r[1][2] = 2 * (y * z - w * x);
    s.r[2][0] = 2 * (x * z - w * y);
    s.r[2][1] = 2 * (y * z + w * x);
    s.r[2][2] = 1 - 2 * (x * x + y * y);

    std::uniform_real_distribution<double> ut(-500.0, 500.0);
    std::uniform_real_distribution<double> us(-2.0, 2.0);
    s.t = {ut(rng), ut(rng), ut(rng)};
    s.scale = std::pow(10.0, us(rng));
    return s;
}

inline romkit::HandSkeletonFrame transform(const romkit::HandSkeletonFrame& f,
                                           const Similarity& s) {
    romkit::HandSkeletonFrame out = f;
    for (auto& p : out.joints)
        p = s.apply(p);
    return out;
}

} // namespace testutil
