#pragma once

// File formats. All formats are plain text and documented in
// docs/formats.md; coordinate and angle values are rendered with 17
// significant digits so binary doubles round-trip exactly.

#include "romkit/analysis.hpp"
#include "romkit/skeleton.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace romkit {

constexpr int kSequenceFormatVersion = 1;

struct SequenceFileHeader {
    int version = kSequenceFormatVersion;
    Handedness handedness = Handedness::right;
    double frame_rate = 30.0;
    std::vector<std::string> joint_order; // must equal the canonical order
};

// Canonical comma-separated 21-joint name list, "W,CMC1,...,TIP5".
std::string canonical_joint_order();

// Consumes and checks the four header lines; fails unless the joint-order
// declaration equals the canonical order.
SequenceFileHeader parse_sequence_header(std::istream& in);

SkeletonSequence parse_sequence(std::istream& in);
SkeletonSequence parse_sequence_file(const std::string& path);

void write_sequence(const SkeletonSequence& seq, std::ostream& out);
void write_sequence_file(const SkeletonSequence& seq, const std::string& path);

// --- dataset manifest (JSON) ---

enum class SubjectGroup { control, patient };

struct SubjectInfo {
    std::string id;
    SubjectGroup group = SubjectGroup::control;
    std::string notes;
};

struct SequenceEntry {
    std::string path;
    std::string subject;
    Handedness hand = Handedness::right;
    Movement movement = Movement::flexion;
    bool orthosis = false;
    std::optional<double> frame_rate;
};

struct DatasetManifest {
    std::vector<SubjectInfo> subjects;
    std::vector<SequenceEntry> sequences;

    const SubjectInfo& subject(const std::string& id) const;
};

DatasetManifest load_manifest(std::istream& in);
DatasetManifest load_manifest_file(const std::string& path);

// The three comparison groups of the dataset.
enum class GroupLabel { control, patient, patient_orthosis };
std::string group_label_name(GroupLabel g);
GroupLabel parse_group_label(const std::string& text);
bool sequence_in_group(const DatasetManifest& m, const SequenceEntry& e, GroupLabel g);

// --- result tables (CSV with a header row; absent values = empty cells) ---

void write_angles(const AngleSeries& series, std::ostream& out,
                  std::optional<Finger> only_finger = std::nullopt);
void write_cycles(const std::vector<MovementCycle>& cycles, std::ostream& out);
void write_rom(const RomSummary& rom, std::ostream& out);
void write_validation(const ValidationReport& report, std::ostream& out);

// Long-format profile table: columns label,channel,x,mean,std where x is the
// sample position 0..n_samples-1. Cycle counts travel in '# cycles:' comment
// lines so a read reproduces the profiles exactly.
void write_profiles(const std::vector<LabeledProfile>& profiles, std::ostream& out);
void write_comparison(const std::vector<ProfileComparison>& comparisons,
                      std::ostream& out);
std::vector<LabeledProfile> read_profiles(std::istream& in);
std::vector<LabeledProfile> read_profiles_file(const std::string& path);

// Landmark files: one "start,end" (or "start end") frame pair per line,
// blank lines and '#' comments ignored.
std::vector<std::pair<std::size_t, std::size_t>> parse_landmarks(std::istream& in);
std::vector<std::pair<std::size_t, std::size_t>> parse_landmarks_file(
    const std::string& path);

// 17-significant-digit decimal rendering used by every writer.
std::string render_double(double v);

} // namespace romkit
