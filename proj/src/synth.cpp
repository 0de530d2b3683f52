#include "romkit/synth.hpp"

#include "romkit/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace romkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

// Flexion plane tilt against the palm normal. A small tilt keeps the palm
// projection of a fully bent phalanx away from zero and produces plausible
// abduction traces during flexion movements.
constexpr double kFingerPlaneTiltDeg = 10.0;

// Converts degree-equivalent jitter into mm. Calibrated so noise_sigma_deg
// matches the worst per-angle standard deviation the jitter induces across
// the analyzed channels (short distal bones amplify positional noise most).
constexpr double kNoiseBoneLengthMm = 12.5;

struct FingerShape {
    double fan_deg;      // metacarpal direction, rotation about the palm normal
    double lengths[4];   // metacarpal + three phalanges, mm
};

constexpr FingerShape kHand[5] = {
    {55.0, {35.0, 42.0, 32.0, 28.0}},  // thumb (CMC-MCP-IP-TIP chain)
    {18.0, {78.0, 45.0, 25.0, 22.0}},  // index
    {0.0, {75.0, 48.0, 28.0, 24.0}},   // middle
    {-15.0, {68.0, 44.0, 26.0, 23.0}}, // ring
    {-32.0, {62.0, 36.0, 20.0, 19.0}}, // pinky
};

// Deterministic Gaussian draws (Box-Muller over mt19937_64), independent of
// the standard library's distribution implementation.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

void validate_params(const SynthParams& p) {
    if (p.n_cycles < 1)
        throw InvalidArgumentError("n_cycles must be >= 1");
    if (p.frames_per_cycle < 8)
        throw InvalidArgumentError("frames_per_cycle must be >= 8");
    if (!(p.frame_rate > 0.0) || !std::isfinite(p.frame_rate))
        throw InvalidArgumentError("frame_rate must be positive");
    if (!(p.flexion_amplitude_deg >= 0.0) || !(p.abduction_amplitude_deg >= 0.0) ||
        !(p.noise_sigma_deg >= 0.0))
        throw InvalidArgumentError("amplitudes and noise must be >= 0");
    if (!(p.flexion_offset_deg - p.flexion_amplitude_deg >= 0.0))
        throw InvalidArgumentError("flexion offset - amplitude must stay >= 0 deg");
    if (!(p.flexion_offset_deg + p.flexion_amplitude_deg <= 170.0))
        throw InvalidArgumentError("flexion offset + amplitude must stay <= 170 deg");
    if (!(p.abduction_amplitude_deg <= 90.0))
        throw InvalidArgumentError("abduction amplitude must stay <= 90 deg");
}

std::size_t synth_frame_count(const SynthParams& p) {
    return p.n_cycles * p.frames_per_cycle + 1;
}

double synth_driving_angle(const SynthParams& p, std::size_t t) {
    double phase = 2.0 * kPi * static_cast<double>(t) /
                   static_cast<double>(p.frames_per_cycle);
    if (p.movement == Movement::flexion)
        return p.flexion_offset_deg - p.flexion_amplitude_deg * std::cos(phase);
    return p.abduction_amplitude_deg * 0.5 * (1.0 - std::cos(phase));
}

double synth_expected_channel(const SynthParams& p, ChannelId channel, std::size_t t) {
    double drive = synth_driving_angle(p, t);
    if (p.movement == Movement::flexion) {
        if (channel.kind == AngleKind::flexion)
            return drive;
        // palm projection of the proximal phalanx bent by `drive` in a
        // plane tilted by kFingerPlaneTiltDeg
        double th = drive * kDegToRad;
        double tilt = kFingerPlaneTiltDeg * kDegToRad;
        return std::atan2(std::abs(std::sin(th)) * std::sin(tilt), std::cos(th)) *
               kRadToDeg;
    }
    if (channel.kind == AngleKind::abduction || channel.slot == Slot::mcp)
        return drive;
    return 0.0;
}

SkeletonSequence generate_synthetic(const SynthParams& p) {
    validate_params(p);

    SkeletonSequence seq;
    seq.handedness = p.handedness;
    seq.frame_rate = p.frame_rate;

    double mirror = p.handedness == Handedness::right ? 1.0 : -1.0;
    double tilt = kFingerPlaneTiltDeg * kDegToRad;
    double sigma_mm = p.noise_sigma_deg * kDegToRad * kNoiseBoneLengthMm;
    GaussianSource noise(p.seed);

    std::size_t n = synth_frame_count(p);
    seq.frames.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        double drive = synth_driving_angle(p, t) * kDegToRad;

        HandSkeletonFrame frame;
        frame.timestamp = static_cast<double>(t) / p.frame_rate;
        frame[JointId::wrist()] = {0.0, 0.0, 0.0};

        for (Finger f : kFingers) {
            const FingerShape& shape = kHand[static_cast<std::size_t>(f) - 1];
            double fan = mirror * shape.fan_deg * kDegToRad;
            if (p.movement == Movement::abduction)
                fan += drive; // whole chain past the metacarpal deviates in-palm

            Vec3 meta_dir = {std::sin(mirror * shape.fan_deg * kDegToRad),
                             std::cos(mirror * shape.fan_deg * kDegToRad), 0.0};
            Vec3 chain_dir = {std::sin(fan), std::cos(fan), 0.0};
            Vec3 side = {-chain_dir.y, chain_dir.x, 0.0};
            Vec3 curl = Vec3{0.0, 0.0, -std::cos(tilt)} + side * std::sin(tilt);

            Vec3 pos = meta_dir * shape.lengths[0];
            frame[JointId::of(f, Slot::mcp)] = pos;
            double cumulative = 0.0;
            for (std::size_t s = 1; s < 4; ++s) {
                if (p.movement == Movement::flexion)
                    cumulative += drive;
                Vec3 dir = chain_dir * std::cos(cumulative) + curl * std::sin(cumulative);
                pos = pos + dir * shape.lengths[s];
                frame[JointId::of(f, static_cast<Slot>(s))] = pos;
            }
        }

        if (sigma_mm > 0.0) {
            for (auto& joint_pos : frame.joints) {
                joint_pos.x += sigma_mm * noise.next();
                joint_pos.y += sigma_mm * noise.next();
                joint_pos.z += sigma_mm * noise.next();
            }
        }
        seq.frames.push_back(frame);
    }
    return seq;
}

} // namespace romkit
