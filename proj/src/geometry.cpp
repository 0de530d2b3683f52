#include "romkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace romkit {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Bones of one finger chain, proximal to distal.
std::array<Vec3, 4> finger_bones(const HandSkeletonFrame& frame, Finger f) {
    const Vec3& w = frame[JointId::wrist()];
    const Vec3& mcp = frame[JointId::of(f, Slot::mcp)];
    const Vec3& pip = frame[JointId::of(f, Slot::pip)];
    const Vec3& dip = frame[JointId::of(f, Slot::dip)];
    const Vec3& tip = frame[JointId::of(f, Slot::tip)];
    return {mcp - w, pip - mcp, dip - pip, tip - dip};
}

std::string bone_label(Finger f, std::size_t k) {
    JointId prox = k == 0 ? JointId::wrist() : JointId::of(f, static_cast<Slot>(k - 1));
    JointId dist = JointId::of(f, static_cast<Slot>(k));
    return prox.name() + "-" + dist.name();
}

} // namespace

std::size_t channel_index(ChannelId id) {
    std::size_t f = static_cast<std::size_t>(id.finger) - 1;
    if (id.kind == AngleKind::abduction)
        return 15 + f;
    return f * 3 + static_cast<std::size_t>(id.slot);
}

ChannelId channel_from_index(std::size_t i) {
    if (i >= kChannelCount)
        throw InvalidArgumentError("channel index out of range: " + std::to_string(i));
    if (i < 15)
        return {AngleKind::flexion, static_cast<Finger>(i / 3 + 1),
                static_cast<Slot>(i % 3)};
    return {AngleKind::abduction, static_cast<Finger>(i - 15 + 1)};
}

std::string channel_name(ChannelId id) {
    if (id.kind == AngleKind::abduction)
        return "A" + JointId::of(id.finger, Slot::mcp).name();
    return "F" + JointId::of(id.finger, id.slot).name();
}

ChannelId parse_channel(const std::string& name) {
    for (std::size_t i = 0; i < kChannelCount; ++i) {
        ChannelId id = channel_from_index(i);
        if (channel_name(id) == name)
            return id;
    }
    throw InvalidArgumentError("unknown channel: '" + name +
                               "' (expected e.g. FPIP4, FCMC1 or AMCP2)");
}

std::optional<double> AngleFrame::channel(ChannelId id) const {
    std::size_t f = static_cast<std::size_t>(id.finger) - 1;
    if (id.kind == AngleKind::abduction)
        return abduction_deg[f];
    return flexion_deg[f][static_cast<std::size_t>(id.slot)];
}

double angle_between(const Vec3& u, const Vec3& v, double eps) {
    double nu = norm(u);
    double nv = norm(v);
    if (!(nu > eps) || !(nv > eps))
        throw GeometryError(GeometryErrorKind::degenerate_vector,
                            "degenerate vector in angle computation");
    double c = dot(u, v) / (nu * nv);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

FlexionAngles flexion_angles(const HandSkeletonFrame& frame, Finger finger) {
    auto bones = finger_bones(frame, finger);
    for (std::size_t k = 0; k < 4; ++k)
        if (!(norm(bones[k]) > kDegenerateEps))
            throw GeometryError(GeometryErrorKind::degenerate_bone,
                                "degenerate bone " + bone_label(finger, k));
    return {angle_between(bones[0], bones[1]) * kRadToDeg,
            angle_between(bones[1], bones[2]) * kRadToDeg,
            angle_between(bones[2], bones[3]) * kRadToDeg};
}

PalmPlane palm_plane(const HandSkeletonFrame& frame) {
    const Vec3& w = frame[JointId::wrist()];
    Vec3 e2 = frame[JointId::of(Finger::index, Slot::mcp)] - w;
    Vec3 e5 = frame[JointId::of(Finger::pinky, Slot::mcp)] - w;
    Vec3 n = cross(e2, e5);
    double nn = norm(n);
    if (!(nn > kDegenerateEps))
        throw GeometryError(GeometryErrorKind::degenerate_plane,
                            "palm plane undefined: W, MCP2, MCP5 are collinear");
    return {n / nn, w};
}

Vec3 project_onto_plane(const Vec3& v, const PalmPlane& plane) {
    return v - dot(v, plane.normal) * plane.normal;
}

namespace {

double abduction_from_plane(const HandSkeletonFrame& frame, Finger finger,
                            const PalmPlane& plane) {
    const Vec3& w = frame[JointId::wrist()];
    Vec3 meta = frame[JointId::of(finger, Slot::mcp)] - w;
    Vec3 phalanx = frame[JointId::of(finger, Slot::pip)] -
                   frame[JointId::of(finger, Slot::mcp)];
    if (!(norm(meta) > kDegenerateEps))
        throw GeometryError(GeometryErrorKind::degenerate_bone,
                            "degenerate bone " + bone_label(finger, 0));
    Vec3 proj = project_onto_plane(phalanx, plane);
    if (!(norm(proj) > kDegenerateEps))
        throw GeometryError(GeometryErrorKind::degenerate_projection,
                            "proximal phalanx of finger " + finger_name(finger) +
                                " is perpendicular to the palm plane");
    return angle_between(meta, proj) * kRadToDeg;
}

} // namespace

double abduction_angle(const HandSkeletonFrame& frame, Finger finger) {
    return abduction_from_plane(frame, finger, palm_plane(frame));
}

int abduction_sign(const HandSkeletonFrame& frame, Finger finger) {
    PalmPlane plane = palm_plane(frame);
    const Vec3& w = frame[JointId::wrist()];
    Vec3 meta = frame[JointId::of(finger, Slot::mcp)] - w;
    Vec3 phalanx = frame[JointId::of(finger, Slot::pip)] -
                   frame[JointId::of(finger, Slot::mcp)];
    double s = dot(cross(meta, project_onto_plane(phalanx, plane)), plane.normal);
    return s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
}

AngleFrame frame_angles(const HandSkeletonFrame& frame, std::size_t frame_index) {
    AngleFrame out;
    out.frame_index = frame_index;

    for (Finger f : kFingers) {
        auto bones = finger_bones(frame, f);
        bool ok[4];
        for (std::size_t k = 0; k < 4; ++k)
            ok[k] = finite(bones[k]) && norm(bones[k]) > kDegenerateEps;
        auto& flex = out.flexion_deg[static_cast<std::size_t>(f) - 1];
        for (std::size_t s = 0; s < 3; ++s)
            if (ok[s] && ok[s + 1])
                flex[s] = angle_between(bones[s], bones[s + 1]) * kRadToDeg;
    }

    std::optional<PalmPlane> plane;
    try {
        plane = palm_plane(frame);
    } catch (const GeometryError&) {
        return out; // abductions stay absent, flexions are unaffected
    }
    for (Finger f : kFingers) {
        try {
            out.abduction_deg[static_cast<std::size_t>(f) - 1] =
                abduction_from_plane(frame, f, *plane);
        } catch (const GeometryError&) {
        }
    }
    return out;
}

} // namespace romkit
