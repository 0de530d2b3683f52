// romkit: hand range-of-motion analytics over 21-joint skeleton sequences.
//
// Data goes to stdout (or --output), diagnostics to stderr. Exit codes:
// 0 ok, 2 usage, 3 parse/io, 4 validation, 5 degenerate geometry.

#include "romkit/analysis.hpp"
#include "romkit/errors.hpp"
#include "romkit/geometry.hpp"
#include "romkit/io.hpp"
#include "romkit/pipeline.hpp"
#include "romkit/skeleton.hpp"
#include "romkit/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace romkit;

// Writes to --output when given, stdout otherwise.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw IoError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

AngleSeries load_series(const std::string& path, std::size_t smooth_window) {
    SkeletonSequence seq = parse_sequence_file(path);
    ValidationReport report = validate(seq);
    if (!report.clean())
        throw ValidationError(path + ": " + report.findings.front().code + ": " +
                              report.findings.front().message +
                              " (run 'romkit validate' for the full report)");
    AngleSeries series = angle_series(seq, path);
    return smooth_window > 1 ? smooth(series, smooth_window) : series;
}

struct CommonFlags {
    std::string output;
    std::size_t smooth_window = 1;
};

int run(int argc, char** argv) {
    CLI::App app{"hand range-of-motion analytics over 21-joint skeleton sequences"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    // angles
    auto* angles_cmd = app.add_subcommand("angles", "per-frame flexion/abduction table");
    std::string angles_input;
    std::string angles_finger;
    CommonFlags angles_flags;
    angles_cmd->add_option("sequence", angles_input, "sequence file")->required();
    angles_cmd->add_option("--smooth-window", angles_flags.smooth_window,
                           "odd moving-median window (1 = raw)");
    angles_cmd->add_option("--finger", angles_finger,
                           "restrict to one finger (I-V, 1-5 or a name)");
    angles_cmd->add_option("-o,--output", angles_flags.output, "write to file");

    // segment
    auto* segment_cmd = app.add_subcommand("segment", "movement cycle table");
    std::string segment_input, segment_channel = "FPIP4", segment_landmarks;
    double segment_prominence = 10.0;
    CommonFlags segment_flags;
    segment_flags.smooth_window = 5;
    segment_cmd->add_option("sequence", segment_input, "sequence file")->required();
    segment_cmd->add_option("--channel", segment_channel, "segmentation channel");
    segment_cmd->add_option("--prominence", segment_prominence,
                            "extremum prominence threshold, degrees");
    segment_cmd->add_option("--smooth-window", segment_flags.smooth_window,
                            "odd moving-median window applied before detection");
    segment_cmd->add_option("--landmarks", segment_landmarks,
                            "landmark file with start,end frame pairs");
    segment_cmd->add_option("-o,--output", segment_flags.output, "write to file");

    // rom
    auto* rom_cmd = app.add_subcommand("rom", "per-channel min/max/range table");
    std::string rom_input;
    CommonFlags rom_flags;
    rom_cmd->add_option("sequence", rom_input, "sequence file")->required();
    rom_cmd->add_option("--smooth-window", rom_flags.smooth_window,
                        "odd moving-median window (1 = raw)");
    rom_cmd->add_option("-o,--output", rom_flags.output, "write to file");

    // aggregate
    auto* agg_cmd = app.add_subcommand("aggregate",
                                       "time-normalized mean/std profiles for a group");
    std::string agg_manifest, agg_group, agg_channel = "FPIP4";
    AnalysisParams agg_params;
    CommonFlags agg_flags;
    agg_cmd->add_option("manifest", agg_manifest, "dataset manifest (JSON)")->required();
    agg_cmd->add_option("--group", agg_group, "control, patient or patient-orthosis")
        ->required();
    agg_cmd->add_option("--channel", agg_channel, "segmentation channel");
    agg_cmd->add_option("--prominence", agg_params.prominence_deg,
                        "extremum prominence threshold, degrees");
    agg_cmd->add_option("--smooth-window", agg_params.smooth_window,
                        "odd moving-median window used for segmentation");
    agg_cmd->add_option("--samples", agg_params.n_samples,
                        "samples per normalized cycle");
    agg_cmd->add_option("-o,--output", agg_flags.output, "write to file");

    // compare
    auto* cmp_cmd = app.add_subcommand(
        "compare", "control vs patient vs patient-with-orthosis comparison");
    std::string cmp_manifest, cmp_channel = "FPIP4";
    std::vector<std::string> cmp_profile_files;
    AnalysisParams cmp_params;
    CommonFlags cmp_flags;
    cmp_cmd->add_option("manifest", cmp_manifest, "dataset manifest (JSON)");
    cmp_cmd->add_option("--profiles", cmp_profile_files,
                        "compare saved profile tables instead of a manifest");
    cmp_cmd->add_option("--channel", cmp_channel, "segmentation channel");
    cmp_cmd->add_option("--prominence", cmp_params.prominence_deg,
                        "extremum prominence threshold, degrees");
    cmp_cmd->add_option("--smooth-window", cmp_params.smooth_window,
                        "odd moving-median window used for segmentation");
    cmp_cmd->add_option("--samples", cmp_params.n_samples,
                        "samples per normalized cycle");
    cmp_cmd->add_option("-o,--output", cmp_flags.output, "write to file");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic sequence");
    SynthParams synth_params;
    std::string synth_out, synth_movement = "flexion", synth_hand = "right";
    synth_cmd->add_option("--cycles", synth_params.n_cycles, "number of movement cycles");
    synth_cmd->add_option("--frames-per-cycle", synth_params.frames_per_cycle,
                          "frames per cycle (>= 8)");
    synth_cmd->add_option("--amplitude", synth_params.flexion_amplitude_deg,
                          "flexion amplitude, degrees");
    synth_cmd->add_option("--offset", synth_params.flexion_offset_deg,
                          "flexion offset, degrees");
    synth_cmd->add_option("--abd-amplitude", synth_params.abduction_amplitude_deg,
                          "abduction amplitude, degrees");
    synth_cmd->add_option("--noise", synth_params.noise_sigma_deg,
                          "positional jitter, degree-equivalent sigma");
    synth_cmd->add_option("--seed", synth_params.seed, "random seed");
    synth_cmd->add_option("--fps", synth_params.frame_rate, "frame rate");
    synth_cmd->add_option("--movement", synth_movement, "flexion or abduction");
    synth_cmd->add_option("--hand", synth_hand, "left or right");
    synth_cmd->add_option("--out", synth_out, "output path (stdout when omitted)");

    // validate
    auto* val_cmd = app.add_subcommand("validate",
                                       "validate a sequence or manifest; exit 0 iff clean");
    std::string val_input;
    CommonFlags val_flags;
    val_cmd->add_option("input", val_input, "sequence or manifest file")->required();
    val_cmd->add_option("-o,--output", val_flags.output, "write report to file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (angles_cmd->parsed()) {
        AngleSeries series = load_series(angles_input, angles_flags.smooth_window);
        std::optional<Finger> finger;
        if (!angles_finger.empty())
            finger = parse_finger(angles_finger);
        OutputSink sink(angles_flags.output);
        write_angles(series, sink.stream(), finger);
    } else if (segment_cmd->parsed()) {
        // landmark mode takes the peaks off the raw channel unless smoothing
        // was asked for explicitly
        if (!segment_landmarks.empty() && segment_cmd->count("--smooth-window") == 0)
            segment_flags.smooth_window = 1;
        AngleSeries series = load_series(segment_input, segment_flags.smooth_window);
        ChannelId channel = parse_channel(segment_channel);
        std::vector<MovementCycle> cycles;
        if (!segment_landmarks.empty()) {
            auto pairs = parse_landmarks_file(segment_landmarks);
            cycles = segment_cycles(series, channel, pairs);
        } else {
            cycles = segment_cycles(series, channel,
                                    SegmentationParams{segment_prominence});
        }
        OutputSink sink(segment_flags.output);
        write_cycles(cycles, sink.stream());
    } else if (rom_cmd->parsed()) {
        AngleSeries series = load_series(rom_input, rom_flags.smooth_window);
        OutputSink sink(rom_flags.output);
        write_rom(rom_summary(series), sink.stream());
    } else if (agg_cmd->parsed()) {
        agg_params.segmentation_channel = parse_channel(agg_channel);
        DatasetManifest manifest = load_manifest_file(agg_manifest);
        std::string base = std::filesystem::path(agg_manifest).parent_path().string();
        auto profiles =
            group_profiles(manifest, base, parse_group_label(agg_group), agg_params);
        OutputSink sink(agg_flags.output);
        write_profiles(profiles, sink.stream());
    } else if (cmp_cmd->parsed()) {
        std::vector<ProfileComparison> comparisons;
        if (!cmp_profile_files.empty()) {
            if (!cmp_manifest.empty())
                throw InvalidArgumentError(
                    "compare takes either a manifest or --profiles, not both");
            std::vector<LabeledProfile> all;
            for (const auto& path : cmp_profile_files)
                for (auto& lp : read_profiles_file(path))
                    all.push_back(std::move(lp));
            for (std::size_t c = 0; c < kChannelCount; ++c) {
                std::vector<LabeledProfile> labeled;
                for (const auto& lp : all)
                    if (channel_index(lp.profile.channel) == c)
                        labeled.push_back(lp);
                if (!labeled.empty())
                    comparisons.push_back(compare_profiles(labeled));
            }
        } else {
            if (cmp_manifest.empty())
                throw InvalidArgumentError("compare needs a manifest or --profiles");
            cmp_params.segmentation_channel = parse_channel(cmp_channel);
            DatasetManifest manifest = load_manifest_file(cmp_manifest);
            std::string base =
                std::filesystem::path(cmp_manifest).parent_path().string();
            comparisons = compare_groups(manifest, base, cmp_params);
        }
        OutputSink sink(cmp_flags.output);
        write_comparison(comparisons, sink.stream());
    } else if (synth_cmd->parsed()) {
        synth_params.movement = synth_movement == "abduction" ? Movement::abduction
                                : synth_movement == "flexion"
                                    ? Movement::flexion
                                    : throw InvalidArgumentError(
                                          "--movement must be flexion or abduction");
        synth_params.handedness = synth_hand == "left" ? Handedness::left
                                  : synth_hand == "right"
                                      ? Handedness::right
                                      : throw InvalidArgumentError(
                                            "--hand must be left or right");
        SkeletonSequence seq = generate_synthetic(synth_params);
        if (synth_out.empty())
            write_sequence(seq, std::cout);
        else
            write_sequence_file(seq, synth_out);
    } else if (val_cmd->parsed()) {
        // sniff the input kind: sequences start with the format marker,
        // manifests are JSON documents
        std::ifstream probe(val_input);
        if (!probe)
            throw IoError("cannot open '" + val_input + "' for reading");
        std::string first_line;
        std::getline(probe, first_line);
        probe.close();

        if (first_line.rfind("# romkit-sequence", 0) == 0) {
            SkeletonSequence seq = parse_sequence_file(val_input);
            ValidationReport report = validate(seq);
            OutputSink sink(val_flags.output);
            write_validation(report, sink.stream());
            if (!report.clean())
                return kExitValidation;
        } else {
            load_manifest_file(val_input); // throws when invalid
            OutputSink sink(val_flags.output);
            write_validation(ValidationReport{}, sink.stream());
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const romkit::Error& e) {
        std::cerr << "romkit: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "romkit: internal error: " << e.what() << "\n";
        return 1;
    }
}
