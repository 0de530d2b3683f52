#pragma once

// Movement structure on top of per-frame angles: smoothing, prominence-based
// extrema, cycle segmentation (automatic or from landmark frame pairs), time
// normalization and mean/std profiles, ROM summaries, group comparison.

#include "romkit/geometry.hpp"
#include "romkit/skeleton.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace romkit {

// One angle channel over time; absent entries mark degenerate geometry.
using Channel = std::vector<std::optional<double>>;

struct AngleSeries {
    std::string id;
    double frame_rate = 30.0;
    std::size_t n_frames = 0;
    std::array<Channel, kChannelCount> channels;

    const Channel& channel(ChannelId c) const { return channels[channel_index(c)]; }
    Channel& channel(ChannelId c) { return channels[channel_index(c)]; }
};

enum class ExtremumKind { maximum, minimum };

struct Extremum {
    std::size_t frame;
    ExtremumKind kind;
    double value_deg;
    double prominence_deg;
};

enum class CycleSource { automatic, landmark };

struct MovementCycle {
    ChannelId channel;
    std::size_t start_frame; // inclusive
    std::size_t end_frame;   // inclusive, > start_frame
    std::size_t peak_frame;  // start <= peak <= end
    CycleSource source;
};

struct CycleProfile {
    ChannelId channel;
    std::size_t n_samples = 100;
    std::vector<double> mean_deg;
    std::vector<double> std_deg; // population standard deviation
    std::size_t n_cycles = 0;
};

struct RomEntry {
    double min_deg;
    double max_deg;
    double range_deg() const { return max_deg - min_deg; }
};

struct RomSummary {
    // entry per canonical channel index; absent when the channel has no
    // present values
    std::array<std::optional<RomEntry>, kChannelCount> entries;
};

struct SegmentationParams {
    double prominence_deg = 10.0;
};

// Frame-by-frame angles for a whole sequence.
AngleSeries angle_series(const SkeletonSequence& seq, std::string id = {});

// Centered moving median with the window clipped at the series edges.
// Absent samples are skipped; an output sample is present when its window
// holds at least one present value. window must be odd, >= 1 and <= length.
AngleSeries smooth(const AngleSeries& series, std::size_t window);
Channel smooth_channel(const Channel& ch, std::size_t window);

// Alternating maxima/minima with topographic prominence >= the threshold.
// Plateaus report their center frame. Series endpoints may qualify as
// minima (pulses truncated at the recording edges) but never as maxima.
std::vector<Extremum> detect_extrema(const Channel& ch, double prominence_deg);

// Automatic segmentation: one cycle per detected maximum, spanning the
// bracketing minima. Consecutive cycles share their boundary minimum.
std::vector<MovementCycle> segment_cycles(const AngleSeries& series, ChannelId channel,
                                          const SegmentationParams& params);

// Landmark segmentation: one cycle per (start, end) pair, peak at the argmax
// of the channel inside the pair.
std::vector<MovementCycle> segment_cycles(
    const AngleSeries& series, ChannelId channel,
    const std::vector<std::pair<std::size_t, std::size_t>>& landmarks);

// Linear interpolation of the cycle's channel onto n_samples equally spaced
// points over [start, end]; absence gaps are interpolated across and the
// ends clamp to the nearest present value.
std::vector<double> resample_cycle(const AngleSeries& series, const MovementCycle& cycle,
                                   std::size_t n_samples);

// Pointwise mean and population std over resampled cycles of equal length.
CycleProfile aggregate(const std::vector<std::vector<double>>& cycles, ChannelId channel,
                       std::size_t n_samples);

RomSummary rom_summary(const AngleSeries& series);

struct ProfileStats {
    double peak_mean_deg;  // max of the mean curve
    double mean_std_deg;   // average std over the cycle
    double mean_range_deg; // max - min of the mean curve
};

struct LabeledProfile {
    std::string label;
    CycleProfile profile;
};

struct ProfileComparison {
    ChannelId channel;
    std::size_t n_samples;
    std::vector<LabeledProfile> profiles;
    std::vector<ProfileStats> stats; // parallel to profiles
};

// All profiles must share channel and n_samples.
ProfileComparison compare_profiles(const std::vector<LabeledProfile>& profiles);

} // namespace romkit
