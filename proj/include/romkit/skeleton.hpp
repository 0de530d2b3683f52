#pragma once

// 21-joint hand skeleton: wrist plus five fingers with four joints each.
// For the thumb the four slots map onto its anatomical joints CMC, MCP, IP,
// TIP, so every finger shares one proximal-to-distal layout and the same
// angle formulas apply to all five chains.

#include "romkit/vec3.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace romkit {

enum class Finger : int { thumb = 1, index = 2, middle = 3, ring = 4, pinky = 5 };

// Generic slot within a finger chain, proximal to distal. Thumb aliases:
// mcp->CMC, pip->MCP, dip->IP.
enum class Slot : int { mcp = 0, pip = 1, dip = 2, tip = 3 };

enum class Handedness { left, right };

enum class Movement { flexion, abduction };

constexpr std::size_t kJointCount = 21;
constexpr std::array<Finger, 5> kFingers = {Finger::thumb, Finger::index, Finger::middle,
                                            Finger::ring, Finger::pinky};

class JointId {
public:
    JointId() = default; // wrist
    static JointId wrist() { return JointId(0); }
    static JointId of(Finger f, Slot s) {
        return JointId(1 + 4 * (static_cast<std::size_t>(f) - 1) +
                       static_cast<std::size_t>(s));
    }
    static JointId from_index(std::size_t i);

    bool is_wrist() const { return index_ == 0; }
    Finger finger() const { return static_cast<Finger>((index_ - 1) / 4 + 1); }
    Slot slot() const { return static_cast<Slot>((index_ - 1) % 4); }
    std::size_t index() const { return index_; }
    std::string name() const;

    bool operator==(const JointId&) const = default;

private:
    explicit JointId(std::size_t i) : index_(i) {}
    std::size_t index_ = 0;
};

std::string finger_name(Finger f);                 // roman numeral, "I".."V"
Finger parse_finger(const std::string& text);      // accepts "IV", "4", "ring"

struct HandSkeletonFrame {
    std::array<Vec3, kJointCount> joints{};
    std::optional<double> timestamp; // seconds

    const Vec3& operator[](JointId id) const { return joints[id.index()]; }
    Vec3& operator[](JointId id) { return joints[id.index()]; }
};

inline const Vec3& joint(const HandSkeletonFrame& frame, JointId id) { return frame[id]; }

struct SkeletonSequence {
    std::vector<HandSkeletonFrame> frames;
    Handedness handedness = Handedness::right;
    double frame_rate = 30.0; // frames/second; sensor rate is caller metadata
};

// The 20 bones of the chain model: W->MCP_f plus the three phalanx bones of
// each finger. Used by validation and by the geometry module's error texts.
struct Bone {
    JointId proximal;
    JointId distal;
    std::string name() const { return proximal.name() + "-" + distal.name(); }
};

std::array<Bone, 20> skeleton_bones();

struct ValidationFinding {
    std::optional<std::size_t> frame; // absent for sequence-level findings
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool clean() const { return findings.empty(); }
};

// Reports empty sequences, non-finite coordinates, non-monotone or mixed
// timestamps, non-positive frame rates and zero-length bones.
ValidationReport validate(const SkeletonSequence& seq);

} // namespace romkit
