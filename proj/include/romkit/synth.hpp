#pragma once

// Synthetic hand motion for demos and tests. Every finger is a kinematic
// chain in a flexion plane tilted against the palm plane; joint flexions
// follow offset - amplitude*cos(2*pi*t/period), so pulse k peaks at frame
// (k+1/2)*period and the analyzed flexion angles reproduce the driving
// signal exactly when noise is zero.

#include "romkit/geometry.hpp"
#include "romkit/skeleton.hpp"

#include <cstddef>
#include <cstdint>

namespace romkit {

struct SynthParams {
    std::size_t n_cycles = 3;
    std::size_t frames_per_cycle = 100; // >= 8
    double flexion_amplitude_deg = 40.0;
    double flexion_offset_deg = 45.0;
    double abduction_amplitude_deg = 25.0; // abduction movement only
    double noise_sigma_deg = 0.0; // positional jitter, degree-equivalent
    std::uint64_t seed = 1;
    double frame_rate = 30.0;
    Handedness handedness = Handedness::right;
    Movement movement = Movement::flexion;
};

// Throws InvalidArgumentError on out-of-range parameters.
void validate_params(const SynthParams& params);

// Frame count is n_cycles*frames_per_cycle + 1 so the recording starts and
// ends exactly on a movement minimum.
std::size_t synth_frame_count(const SynthParams& params);

SkeletonSequence generate_synthetic(const SynthParams& params);

// Closed-form driving angle at frame t for the generated movement: the
// flexion sinusoid in flexion mode, the abduction deviation in abduction
// mode. Ground truth for the noise-free analyzed channels.
double synth_driving_angle(const SynthParams& params, std::size_t t);

// Expected noise-free analyzed value of one channel at frame t, nan-free:
// flexion mode drives all 15 flexion channels with the sinusoid; abduction
// mode drives the five abductions and the five mcp-slot flexions.
double synth_expected_channel(const SynthParams& params, ChannelId channel,
                              std::size_t t);

} // namespace romkit
