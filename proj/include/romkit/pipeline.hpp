#pragma once

// Manifest-driven aggregation: parse, validate and segment every sequence
// of a group, then pool the time-normalized cycles per channel. Sequences
// are independent, so they may be processed by a worker pool; results are
// merged in manifest order and are therefore independent of scheduling.

#include "romkit/analysis.hpp"
#include "romkit/io.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace romkit {

struct AnalysisParams {
    ChannelId segmentation_channel = {AngleKind::flexion, Finger::ring, Slot::pip};
    double prominence_deg = 10.0;
    std::size_t smooth_window = 5;
    std::size_t n_samples = 100;
};

// Worker cap: explicit argument, else the ROMKIT_THREADS environment
// variable, else the hardware concurrency.
std::size_t effective_thread_count(std::optional<std::size_t> requested);

// Profiles for every channel that produced at least one cycle, in canonical
// channel order, labeled with the group name. Sequence paths resolve
// relative to `base_dir` (the manifest's directory).
std::vector<LabeledProfile> group_profiles(const DatasetManifest& manifest,
                                           const std::string& base_dir, GroupLabel group,
                                           const AnalysisParams& params,
                                           std::optional<std::size_t> threads = {});

// Per-channel comparison across the three groups; only groups with data for
// a channel participate, channels with no data at all are skipped.
std::vector<ProfileComparison> compare_groups(const DatasetManifest& manifest,
                                              const std::string& base_dir,
                                              const AnalysisParams& params,
                                              std::optional<std::size_t> threads = {});

} // namespace romkit
