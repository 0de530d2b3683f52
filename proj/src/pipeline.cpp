#include "romkit/pipeline.hpp"

#include "romkit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <thread>

namespace romkit {

namespace {

// Cycles of one sequence resampled on every channel.
struct SequenceCycles {
    std::array<std::vector<std::vector<double>>, kChannelCount> per_channel;
};

SequenceCycles analyze_sequence(const std::string& path, const AnalysisParams& params) {
    SkeletonSequence seq = parse_sequence_file(path);
    ValidationReport report = validate(seq);
    if (!report.clean())
        throw ValidationError(path + ": " + report.findings.front().code + ": " +
                              report.findings.front().message);

    AngleSeries raw = angle_series(seq, path);
    std::size_t window = std::min(params.smooth_window, raw.n_frames);
    if (window % 2 == 0)
        --window; // keep the window odd on very short recordings
    AngleSeries smoothed = smooth(raw, window);
    auto cycles = segment_cycles(smoothed, params.segmentation_channel,
                                 SegmentationParams{params.prominence_deg});

    SequenceCycles out;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        for (const auto& cy : cycles) {
            MovementCycle shifted = cy;
            shifted.channel = channel_from_index(c);
            try {
                out.per_channel[c].push_back(
                    resample_cycle(raw, shifted, params.n_samples));
            } catch (const ValidationError&) {
                // channel unmeasurable inside this cycle; skip it
            }
        }
    }
    return out;
}

} // namespace

std::size_t effective_thread_count(std::optional<std::size_t> requested) {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (requested)
        return std::clamp<std::size_t>(*requested, 1, hw);
    if (const char* env = std::getenv("ROMKIT_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1)
            return std::min<std::size_t>(v, hw);
    }
    return hw;
}

std::vector<LabeledProfile> group_profiles(const DatasetManifest& manifest,
                                           const std::string& base_dir, GroupLabel group,
                                           const AnalysisParams& params,
                                           std::optional<std::size_t> threads) {
    std::vector<std::string> paths;
    for (const auto& e : manifest.sequences)
        if (sequence_in_group(manifest, e, group))
            paths.push_back((std::filesystem::path(base_dir) / e.path).string());

    std::vector<SequenceCycles> results(paths.size());
    std::vector<std::exception_ptr> errors(paths.size());

    std::size_t workers = std::min(effective_thread_count(threads), paths.size());
    if (workers > 1) {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < paths.size();
                     i = next.fetch_add(1)) {
                    try {
                        results[i] = analyze_sequence(paths[i], params);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool)
            t.join();
    } else {
        for (std::size_t i = 0; i < paths.size(); ++i) {
            try {
                results[i] = analyze_sequence(paths[i], params);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    }
    // deterministic: report the failure of the earliest sequence in manifest order
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<LabeledProfile> out;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        std::vector<std::vector<double>> pooled;
        for (const auto& r : results)
            for (const auto& cy : r.per_channel[c])
                pooled.push_back(cy);
        if (pooled.empty())
            continue;
        LabeledProfile lp;
        lp.label = group_label_name(group);
        lp.profile = aggregate(pooled, channel_from_index(c), params.n_samples);
        out.push_back(std::move(lp));
    }
    return out;
}

std::vector<ProfileComparison> compare_groups(const DatasetManifest& manifest,
                                              const std::string& base_dir,
                                              const AnalysisParams& params,
                                              std::optional<std::size_t> threads) {
    std::vector<std::vector<LabeledProfile>> groups;
    for (GroupLabel g :
         {GroupLabel::control, GroupLabel::patient, GroupLabel::patient_orthosis})
        groups.push_back(group_profiles(manifest, base_dir, g, params, threads));

    std::vector<ProfileComparison> out;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        std::vector<LabeledProfile> labeled;
        for (const auto& group : groups)
            for (const auto& lp : group)
                if (channel_index(lp.profile.channel) == c)
                    labeled.push_back(lp);
        if (labeled.empty())
            continue;
        out.push_back(compare_profiles(labeled));
    }
    return out;
}

} // namespace romkit
