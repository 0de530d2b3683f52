#pragma once

// Brute-force reference for the hand angle formulas, kept deliberately
// independent of the library: it works on the raw 63-coordinate layout
// (21 joints x xyz, canonical order) in long double and spells out every
// vector operation inline. Test code only.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

namespace oracle {

using ld = long double;

struct V {
    ld x, y, z;
};

inline V sub(const V& a, const V& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline ld dot(const V& a, const V& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline ld nrm(const V& a) { return std::sqrt(dot(a, a)); }
inline V crs(const V& a, const V& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// canonical layout: joint 0 = wrist, finger f in 1..5 occupies 1+4(f-1)..4+4(f-1)
inline V joint(const std::array<double, 63>& c, std::size_t j) {
    return {static_cast<ld>(c[3 * j]), static_cast<ld>(c[3 * j + 1]),
            static_cast<ld>(c[3 * j + 2])};
}

inline std::optional<ld> angle(const V& u, const V& v, ld eps) {
    ld nu = nrm(u), nv = nrm(v);
    if (nu <= eps || nv <= eps)
        return std::nullopt;
    ld c = dot(u, v) / (nu * nv);
    if (c > 1.0L)
        c = 1.0L;
    if (c < -1.0L)
        c = -1.0L;
    return std::acos(c);
}

// All 20 angles of one frame, in radians.
// Layout: index (f-1)*3+s for flexion at slot s of finger f, then 15+(f-1)
// for the abduction of finger f. nullopt marks degenerate geometry.
inline std::array<std::optional<ld>, 20> all_angles(const std::array<double, 63>& c,
                                                    ld eps = 1e-9L) {
    std::array<std::optional<ld>, 20> out;
    V w = joint(c, 0);

    for (std::size_t f = 1; f <= 5; ++f) {
        std::size_t base = 1 + 4 * (f - 1);
        V mcp = joint(c, base + 0);
        V pip = joint(c, base + 1);
        V dip = joint(c, base + 2);
        V tip = joint(c, base + 3);
        V b0 = sub(mcp, w);
        V b1 = sub(pip, mcp);
        V b2 = sub(dip, pip);
        V b3 = sub(tip, dip);
        out[(f - 1) * 3 + 0] = angle(b0, b1, eps);
        out[(f - 1) * 3 + 1] = angle(b1, b2, eps);
        out[(f - 1) * 3 + 2] = angle(b2, b3, eps);
    }

    // palm plane from W, MCP2, MCP5
    V e2 = sub(joint(c, 1 + 4 * 1), w);
    V e5 = sub(joint(c, 1 + 4 * 4), w);
    V n = crs(e2, e5);
    ld nn = nrm(n);
    if (nn <= eps)
        return out; // abduction entries stay absent
    n = {n.x / nn, n.y / nn, n.z / nn};

    for (std::size_t f = 1; f <= 5; ++f) {
        std::size_t base = 1 + 4 * (f - 1);
        V mcp = joint(c, base + 0);
        V pip = joint(c, base + 1);
        V meta = sub(mcp, w);
        V ph = sub(pip, mcp);
        ld k = dot(ph, n);
        V proj = {ph.x - k * n.x, ph.y - k * n.y, ph.z - k * n.z};
        out[15 + (f - 1)] = angle(meta, proj, eps);
    }
    return out;
}

// Conditioning guard used when sampling random frames: every bone, the palm
// cross product and every palm projection must be comfortably non-degenerate
// and no angle may sit close to 0 or pi, where arccos loses precision.
inline bool well_conditioned(const std::array<double, 63>& c) {
    const ld min_len = 1.0L;      // mm
    const ld min_cross = 10.0L;   // mm^2
    const ld margin = 1e-4L;      // rad
    V w = joint(c, 0);
    for (std::size_t f = 1; f <= 5; ++f) {
        std::size_t base = 1 + 4 * (f - 1);
        V prev = w;
        for (std::size_t s = 0; s < 4; ++s) {
            V cur = joint(c, base + s);
            if (nrm(sub(cur, prev)) < min_len)
                return false;
            prev = cur;
        }
    }
    V e2 = sub(joint(c, 1 + 4 * 1), w);
    V e5 = sub(joint(c, 1 + 4 * 4), w);
    if (nrm(crs(e2, e5)) < min_cross)
        return false;
    V n = crs(e2, e5);
    ld nn = nrm(n);
    n = {n.x / nn, n.y / nn, n.z / nn};
    for (std::size_t f = 1; f <= 5; ++f) {
        std::size_t base = 1 + 4 * (f - 1);
        V ph = sub(joint(c, base + 1), joint(c, base + 0));
        ld k = dot(ph, n);
        V proj = {ph.x - k * n.x, ph.y - k * n.y, ph.z - k * n.z};
        if (nrm(proj) < min_len)
            return false;
    }
    auto a = all_angles(c);
    for (const auto& v : a) {
        if (!v)
            return false;
        if (*v < margin || *v > std::acos(-1.0L) - margin)
            return false;
    }
    return true;
}

} // namespace oracle
