#pragma once

// Angle measurements on a single skeleton frame.
//
// Flexion at a joint is the angle between the two adjacent bone vectors of
// the chain W -> MCP -> PIP -> DIP -> TIP (0 deg = straight, larger = more
// flexed). Abduction of a finger is the angle between the palm-plane
// projection of its proximal phalanx and its metacarpal vector, where the
// palm plane is spanned by MCP2-W and MCP5-W.
//
// All vectors are normalized before the dot product, cosines are clamped to
// [-1, 1], results are reported in degrees. Degeneracy threshold for vector
// norms is kDegenerateEps (mm).

#include "romkit/skeleton.hpp"
#include "romkit/errors.hpp"
#include "romkit/vec3.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace romkit {

constexpr double kDegenerateEps = 1e-9;

struct PalmPlane {
    Vec3 normal; // unit
    Vec3 anchor; // wrist position
};

struct FlexionAngles {
    double mcp_deg;
    double pip_deg;
    double dip_deg;
};

// One of the 20 angle channels: three flexion slots per finger plus one
// abduction per finger. Canonical index: (f-1)*3+slot for flexion,
// 15+(f-1) for abduction.
enum class AngleKind { flexion, abduction };

struct ChannelId {
    AngleKind kind;
    Finger finger;
    Slot slot = Slot::mcp; // flexion only; one of mcp/pip/dip

    bool operator==(const ChannelId&) const = default;
};

constexpr std::size_t kChannelCount = 20;

std::size_t channel_index(ChannelId id);
ChannelId channel_from_index(std::size_t i);
// Channel names follow the joint the angle lives at: FMCP4, FPIP4, FDIP4,
// AMCP4; thumb flexion channels are FCMC1, FMCP1, FIP1.
std::string channel_name(ChannelId id);
ChannelId parse_channel(const std::string& name);

struct AngleFrame {
    // [finger-1][slot] flexion in degrees; absent where geometry is degenerate
    std::array<std::array<std::optional<double>, 3>, 5> flexion_deg{};
    std::array<std::optional<double>, 5> abduction_deg{};
    std::size_t frame_index = 0;

    std::optional<double> channel(ChannelId id) const;
};

// Angle between two vectors in radians, [0, pi]. Throws GeometryError when
// either norm is <= eps.
double angle_between(const Vec3& u, const Vec3& v, double eps = kDegenerateEps);

// Strict per-finger flexion; throws naming the degenerate bone.
FlexionAngles flexion_angles(const HandSkeletonFrame& frame, Finger finger);

// Throws when W, MCP2, MCP5 are collinear or coincident.
PalmPlane palm_plane(const HandSkeletonFrame& frame);

Vec3 project_onto_plane(const Vec3& v, const PalmPlane& plane);

// Strict per-finger abduction in degrees; unsigned, as the arccos formula
// cannot tell radial from ulnar deviation.
double abduction_angle(const HandSkeletonFrame& frame, Finger finger);

// Extension beyond the unsigned measure: sign of the deviation of the
// projected proximal phalanx relative to the metacarpal (+1/-1, 0 when
// parallel), from the triple product ((MCP-W) x P) . N. Not part of any
// reproduction output.
int abduction_sign(const HandSkeletonFrame& frame, Finger finger);

// Tolerant whole-frame evaluation: degenerate entries become absent instead
// of failing the frame. A degenerate palm plane blanks all five abductions
// and nothing else.
AngleFrame frame_angles(const HandSkeletonFrame& frame, std::size_t frame_index = 0);

} // namespace romkit
