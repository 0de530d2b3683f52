// Acceptance suite: seven gate criteria, one PASS/FAIL line each, nonzero
// exit when any fails. Budgeted criteria also check their runtime.

#include "oracle.hpp"
#include "test_helpers.hpp"

#include "romkit/analysis.hpp"
#include "romkit/errors.hpp"
#include "romkit/geometry.hpp"
#include "romkit/io.hpp"
#include "romkit/pipeline.hpp"
#include "romkit/skeleton.hpp"
#include "romkit/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace romkit;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    const char* name;
    bool (*run)(std::string& detail);
};

// 1. on 1000 seeded random non-degenerate frames all 20 angles match the
//    independent brute-force implementation within 1e-9 rad; < 5 s
bool criterion_oracle(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260808);
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        HandSkeletonFrame f = testutil::random_frame(rng);
        auto expected = oracle::all_angles(testutil::to_coords(f));
        AngleFrame af = frame_angles(f);
        for (std::size_t c = 0; c < kChannelCount; ++c) {
            auto v = af.channel(channel_from_index(c));
            if (!v || !expected[c])
                return false;
            double err = std::abs(*v * kPi / 180.0 - static_cast<double>(*expected[c]));
            worst = std::max(worst, err);
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    std::ostringstream ss;
    ss << "max |impl-oracle| = " << worst << " rad, " << secs << " s";
    detail = ss.str();
    return worst < 1e-9 && secs < 5.0;
}

// 2. 200 random frames x 20 random similarity transforms; max angle
//    deviation < 1e-6 degrees
bool criterion_invariance(std::string& detail) {
    std::mt19937_64 rng(20260809);
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
        HandSkeletonFrame f = testutil::random_frame(rng);
        AngleFrame base = frame_angles(f);
        for (int k = 0; k < 20; ++k) {
            auto sim = testutil::random_similarity(rng);
            AngleFrame moved = frame_angles(testutil::transform(f, sim));
            for (std::size_t c = 0; c < kChannelCount; ++c) {
                auto a = base.channel(channel_from_index(c));
                auto b = moved.channel(channel_from_index(c));
                if (!a || !b)
                    return false;
                worst = std::max(worst, std::abs(*a - *b));
            }
        }
    }
    std::ostringstream ss;
    ss << "max deviation = " << worst << " deg";
    detail = ss.str();
    return worst < 1e-6;
}

// 3. generator with k in 1..10 cycles, noise sigma 2 deg, smoothing window
//    5, prominence 10 -> exactly k cycles for every k and 20 seeds; < 10 s
bool criterion_pulses(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    const ChannelId channel{AngleKind::flexion, Finger::ring, Slot::pip};
    std::size_t runs = 0, correct = 0;
    for (std::size_t k = 1; k <= 10; ++k) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            SynthParams p;
            p.n_cycles = k;
            p.noise_sigma_deg = 2.0;
            p.seed = seed;
            auto series = angle_series(generate_synthetic(p));
            auto cycles =
                segment_cycles(smooth(series, 5), channel, SegmentationParams{10.0});
            ++runs;
            if (cycles.size() == k)
                ++correct;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    std::ostringstream ss;
    ss << correct << "/" << runs << " exact counts, " << secs << " s";
    detail = ss.str();
    return correct == runs && secs < 10.0;
}

// 4. 50 noisy cycles aggregated: mean within 1 deg of the clean driving
//    curve pointwise, std positive and <= 3 sigma; one cycle -> std == 0
bool criterion_profile(std::string& detail) {
    const ChannelId channel{AngleKind::flexion, Finger::ring, Slot::pip};
    SynthParams p;
    p.n_cycles = 50;
    p.frames_per_cycle = 100;
    p.noise_sigma_deg = 2.0;
    p.seed = 424242;
    auto series = angle_series(generate_synthetic(p));

    // landmark segmentation at the generator's exact pulse boundaries,
    // mirroring the manually identified landmark procedure
    std::vector<std::pair<std::size_t, std::size_t>> landmarks;
    for (std::size_t k = 0; k < p.n_cycles; ++k)
        landmarks.emplace_back(k * p.frames_per_cycle, (k + 1) * p.frames_per_cycle);
    auto cycles = segment_cycles(series, channel, landmarks);
    if (cycles.size() != 50)
        return false;

    std::vector<std::vector<double>> resampled;
    for (const auto& cy : cycles)
        resampled.push_back(resample_cycle(series, cy, 100));
    CycleProfile profile = aggregate(resampled, channel, 100);

    double worst_mean_err = 0.0, worst_std = 0.0, min_std = 1e300;
    for (std::size_t j = 0; j < 100; ++j) {
        double x = 100.0 * static_cast<double>(j) / 99.0; // frames into the pulse
        double clean = p.flexion_offset_deg -
                       p.flexion_amplitude_deg * std::cos(2.0 * kPi * x / 100.0);
        worst_mean_err = std::max(worst_mean_err, std::abs(profile.mean_deg[j] - clean));
        worst_std = std::max(worst_std, profile.std_deg[j]);
        min_std = std::min(min_std, profile.std_deg[j]);
    }

    CycleProfile single = aggregate({resampled.front()}, channel, 100);
    bool single_zero = true;
    for (double s : single.std_deg)
        single_zero = single_zero && s == 0.0;

    std::ostringstream ss;
    ss << "max |mean-clean| = " << worst_mean_err << " deg, std in [" << min_std << ", "
       << worst_std << "]";
    detail = ss.str();
    return worst_mean_err < 1.0 && min_std > 0.0 &&
           worst_std <= 3.0 * p.noise_sigma_deg && single_zero;
}

// 5. rom_summary of the 45 - 40 cos sinusoid: min 5 +- 0.2, max 85 +- 0.2
bool criterion_rom(std::string& detail) {
    SynthParams p;
    p.n_cycles = 3;
    p.frames_per_cycle = 100;
    auto rom = rom_summary(angle_series(generate_synthetic(p)));
    auto entry = rom.entries[channel_index({AngleKind::flexion, Finger::ring, Slot::pip})];
    if (!entry)
        return false;
    std::ostringstream ss;
    ss << "min = " << entry->min_deg << ", max = " << entry->max_deg;
    detail = ss.str();
    return std::abs(entry->min_deg - 5.0) < 0.2 && std::abs(entry->max_deg - 85.0) < 0.2;
}

// 6. 500 fuzzed sequences round-trip bit-exactly; the malformed corpus
//    yields the documented error kind and a line number
bool criterion_roundtrip(std::string& detail) {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> coord(-200.0, 200.0);
    for (int it = 0; it < 500; ++it) {
        SkeletonSequence seq;
        seq.handedness = rng() % 2 ? Handedness::left : Handedness::right;
        seq.frame_rate = 1.0 + static_cast<double>(rng() % 240);
        bool with_ts = rng() % 2 == 0;
        std::size_t n = 1 + rng() % 12;
        double ts = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            HandSkeletonFrame f;
            for (auto& pt : f.joints) {
                double scale = std::pow(10.0, static_cast<int>(rng() % 17) - 8);
                pt = {coord(rng) * scale, coord(rng) * scale, coord(rng) * scale};
            }
            if (with_ts) {
                ts += 0.01 + 0.001 * static_cast<double>(rng() % 50);
                f.timestamp = ts;
            }
            seq.frames.push_back(f);
        }

        std::ostringstream out;
        write_sequence(seq, out);
        std::istringstream in(out.str());
        SkeletonSequence back = parse_sequence(in);
        if (back.frames.size() != seq.frames.size())
            return false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < kJointCount; ++j) {
                const Vec3& a = seq.frames[i].joints[j];
                const Vec3& b = back.frames[i].joints[j];
                if (std::memcmp(&a, &b, sizeof a) != 0)
                    return false;
            }
    }

    // malformed corpus: every entry must raise the documented kind with a line
    std::string head = "# romkit-sequence v1\n# handedness: right\n# frame_rate: 30\n";
    std::string joints = "# joints: " + canonical_joint_order() + "\n";
    std::string row62 = "0";
    for (int c = 0; c < 61; ++c)
        row62 += ",1";
    std::string row_ok = "0";
    for (int c = 0; c < 63; ++c)
        row_ok += ",1";
    std::string row_text = "0";
    for (int c = 0; c < 62; ++c)
        row_text += ",1";
    row_text += ",x";
    std::string row_badidx = "3";
    for (int c = 0; c < 63; ++c)
        row_badidx += ",1";

    struct Bad {
        std::string text;
        ParseErrorKind kind;
        std::size_t line;
    };
    const Bad corpus[] = {
        {"", ParseErrorKind::empty_file, 1},
        {"# wrong-magic\n", ParseErrorKind::malformed_header, 1},
        {"# romkit-sequence v2\n", ParseErrorKind::malformed_header, 1},
        {"# romkit-sequence v1\n# handedness: both\n", ParseErrorKind::malformed_header, 2},
        {"# romkit-sequence v1\n# handedness: left\n# frame_rate: 0\n",
         ParseErrorKind::malformed_header, 3},
        {head + "# joints: W\n", ParseErrorKind::malformed_header, 4},
        {head + joints + row62 + "\n", ParseErrorKind::wrong_column_count, 5},
        {head + joints + row_ok + "\n" + row62 + "\n", ParseErrorKind::wrong_column_count,
         6},
        {head + joints + row_text + "\n", ParseErrorKind::non_numeric_cell, 5},
        {head + joints + row_badidx + "\n", ParseErrorKind::bad_frame_index, 5},
    };
    std::size_t hits = 0;
    for (const auto& bad : corpus) {
        try {
            std::istringstream in(bad.text);
            parse_sequence(in);
        } catch (const ParseError& e) {
            if (e.kind() == bad.kind && e.line() == bad.line)
                ++hits;
        }
    }
    std::ostringstream ss;
    ss << "500 round trips exact, " << hits << "/" << std::size(corpus)
       << " corpus entries classified";
    detail = ss.str();
    return hits == std::size(corpus);
}

// 7. synth -> angles -> segment -> aggregate -> compare over three groups,
//    byte-identical across two runs, peak means ordered by amplitude; < 30 s
int run_cli(const std::string& args) {
    std::string cmd = std::string(ROMKIT_CLI_PATH) + " " + args;
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool run_flow(const fs::path& dir, std::string& err) {
    fs::create_directories(dir);
    struct Group {
        const char* label;
        const char* subject;
        double amplitude;
        double offset;
        bool orthosis;
    };
    const Group groups[] = {
        {"control", "c0", 40.0, 45.0, false},
        {"patient", "p0", 25.0, 50.0, false},
        {"patient-orthosis", "p0", 30.0, 48.0, true},
    };

    std::string manifest = R"({"subjects": [{"id": "c0", "group": "control"},)"
                           R"({"id": "p0", "group": "patient"}], "sequences": [)";
    bool first = true;
    for (const auto& g : groups) {
        for (int i = 0; i < 2; ++i) {
            std::string name = std::string(g.label) + "_" + std::to_string(i) + ".seq";
            std::ostringstream cmd;
            cmd << "synth --cycles 4 --noise 1 --seed " << (17 + i) << " --amplitude "
                << g.amplitude << " --offset " << g.offset << " --out "
                << (dir / name).string();
            if (run_cli(cmd.str()) != 0) {
                err = "synth failed for " + name;
                return false;
            }
            manifest += std::string(first ? "" : ",") + R"({"path": ")" + name +
                        R"(", "subject": ")" + g.subject +
                        R"(", "hand": "right", "movement": "flexion", "orthosis": )" +
                        (g.orthosis ? "true" : "false") + "}";
            first = false;
        }
    }
    manifest += "]}";
    std::ofstream(dir / "manifest.json") << manifest;

    if (run_cli("angles " + (dir / "control_0.seq").string() + " -o " +
                (dir / "angles.csv").string()) != 0 ||
        run_cli("segment " + (dir / "control_0.seq").string() + " -o " +
                (dir / "segment.csv").string()) != 0) {
        err = "angles/segment failed";
        return false;
    }
    for (const char* label : {"control", "patient", "patient-orthosis"}) {
        if (run_cli("aggregate " + (dir / "manifest.json").string() + " --group " +
                    label + " -o " + (dir / (std::string(label) + ".profile.csv")).string()) !=
            0) {
            err = std::string("aggregate failed for ") + label;
            return false;
        }
    }
    if (run_cli("compare " + (dir / "manifest.json").string() + " -o " +
                (dir / "compare.csv").string()) != 0) {
        err = "compare failed";
        return false;
    }
    return true;
}

bool criterion_cli(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    fs::path base = "acceptance_tmp";
    fs::remove_all(base);
    std::string err;
    if (!run_flow(base / "run1", err) || !run_flow(base / "run2", err)) {
        detail = err;
        return false;
    }

    const char* outputs[] = {"angles.csv",          "segment.csv",
                             "control.profile.csv", "patient.profile.csv",
                             "patient-orthosis.profile.csv", "compare.csv"};
    for (const char* f : outputs) {
        if (slurp(base / "run1" / f) != slurp(base / "run2" / f) ||
            slurp(base / "run1" / f).empty()) {
            detail = std::string("output differs or is empty: ") + f;
            return false;
        }
    }

    // peak means on the segmentation channel must order like the amplitudes
    auto profiles = read_profiles_file((base / "run1" / "compare.csv").string());
    double peak_control = -1, peak_patient = -1, peak_orthosis = -1;
    for (const auto& lp : profiles) {
        if (channel_name(lp.profile.channel) != "FPIP4")
            continue;
        double peak = *std::max_element(lp.profile.mean_deg.begin(),
                                        lp.profile.mean_deg.end());
        if (lp.label == "control")
            peak_control = peak;
        else if (lp.label == "patient")
            peak_patient = peak;
        else if (lp.label == "patient-orthosis")
            peak_orthosis = peak;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    std::ostringstream ss;
    ss << "peaks c/po/p = " << peak_control << "/" << peak_orthosis << "/"
       << peak_patient << " deg, " << secs << " s";
    detail = ss.str();
    return peak_control > peak_orthosis && peak_orthosis > peak_patient &&
           peak_patient > 0 && secs < 30.0;
}

} // namespace

int main() {
    const Criterion criteria[] = {
        {"geometry oracle equivalence (1000 frames, 1e-9 rad, <5 s)", criterion_oracle},
        {"rigid-motion and scale invariance (<1e-6 deg)", criterion_invariance},
        {"synthetic pulse reproduction (k=1..10, 20 seeds, <10 s)", criterion_pulses},
        {"profile recovery (50 noisy cycles, mean within 1 deg)", criterion_profile},
        {"rom correctness (5/85 +- 0.2 deg)", criterion_rom},
        {"sequence round-trip and malformed corpus", criterion_roundtrip},
        {"end-to-end cli determinism (<30 s)", criterion_cli},
    };

    int failures = 0;
    int index = 1;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << index << ": " << c.name;
        if (!detail.empty())
            std::cout << " [" << detail << "]";
        std::cout << std::endl;
        failures += ok ? 0 : 1;
        ++index;
    }
    if (failures)
        std::cout << failures << " criterion(s) failed" << std::endl;
    else
        std::cout << "all criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
