#include "romkit/io.hpp"

#include "romkit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace romkit {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
}

double parse_cell_double(const std::string& cell, std::size_t line) {
    if (cell.empty())
        throw ParseError(ParseErrorKind::non_numeric_cell, line, "empty numeric cell");
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + cell.size())
        throw ParseError(ParseErrorKind::non_numeric_cell, line,
                         "non-numeric cell '" + cell + "'");
    return v;
}

std::size_t parse_cell_index(const std::string& cell, std::size_t line) {
    if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(ParseErrorKind::non_numeric_cell, line,
                         "non-numeric cell '" + cell + "'");
    return static_cast<std::size_t>(std::strtoull(cell.c_str(), nullptr, 10));
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    return in;
}

} // namespace

std::string render_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string canonical_joint_order() {
    std::string out;
    for (std::size_t i = 0; i < kJointCount; ++i) {
        if (i)
            out += ',';
        out += JointId::from_index(i).name();
    }
    return out;
}

// --- sequence files ---

namespace {

std::string expect_header(std::istream& in, std::size_t& line_no, const std::string& key) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(line_no == 1 ? ParseErrorKind::empty_file
                                      : ParseErrorKind::malformed_header,
                         line_no, "missing header line '# " + key + "'");
    std::string prefix = "# " + key;
    if (line.rfind(prefix, 0) != 0)
        throw ParseError(ParseErrorKind::malformed_header, line_no,
                         "expected header '# " + key + "...', got '" + line + "'");
    ++line_no;
    return line.substr(prefix.size());
}

} // namespace

SequenceFileHeader parse_sequence_header(std::istream& in) {
    std::size_t line_no = 1;
    SequenceFileHeader header;

    std::string version = expect_header(in, line_no, "romkit-sequence v");
    if (version != std::to_string(kSequenceFormatVersion))
        throw ParseError(ParseErrorKind::malformed_header, line_no - 1,
                         "unsupported format version '" + version + "'");
    header.version = kSequenceFormatVersion;

    std::string hand = expect_header(in, line_no, "handedness: ");
    if (hand == "left")
        header.handedness = Handedness::left;
    else if (hand == "right")
        header.handedness = Handedness::right;
    else
        throw ParseError(ParseErrorKind::malformed_header, line_no - 1,
                         "handedness must be 'left' or 'right', got '" + hand + "'");

    std::string rate = expect_header(in, line_no, "frame_rate: ");
    header.frame_rate = parse_cell_double(rate, line_no - 1);
    if (!(header.frame_rate > 0.0) || !std::isfinite(header.frame_rate))
        throw ParseError(ParseErrorKind::malformed_header, line_no - 1,
                         "frame_rate must be positive");

    std::string joints = expect_header(in, line_no, "joints: ");
    header.joint_order = split(joints, ',');
    if (joints != canonical_joint_order())
        throw ParseError(ParseErrorKind::malformed_header, line_no - 1,
                         "joint order must be the canonical 21-joint order '" +
                             canonical_joint_order() + "'");
    return header;
}

SkeletonSequence parse_sequence(std::istream& in) {
    SequenceFileHeader header = parse_sequence_header(in);
    SkeletonSequence seq;
    seq.handedness = header.handedness;
    seq.frame_rate = header.frame_rate;
    std::size_t line_no = 5; // data rows start after the four header lines

    std::optional<std::size_t> n_columns;
    std::string line;
    while (std::getline(in, line)) {
        auto cells = split(line, ',');
        if (!n_columns) {
            if (cells.size() != 64 && cells.size() != 65)
                throw ParseError(ParseErrorKind::wrong_column_count, line_no,
                                 "expected 64 or 65 columns, got " +
                                     std::to_string(cells.size()));
            n_columns = cells.size();
        } else if (cells.size() != *n_columns) {
            throw ParseError(ParseErrorKind::wrong_column_count, line_no,
                             "expected " + std::to_string(*n_columns) +
                                 " columns, got " + std::to_string(cells.size()));
        }

        std::size_t idx = parse_cell_index(cells[0], line_no);
        if (idx != seq.frames.size())
            throw ParseError(ParseErrorKind::bad_frame_index, line_no,
                             "frame index " + std::to_string(idx) + " out of order, expected " +
                                 std::to_string(seq.frames.size()));

        HandSkeletonFrame frame;
        std::size_t base = 1;
        if (*n_columns == 65) {
            frame.timestamp = parse_cell_double(cells[1], line_no);
            base = 2;
        }
        for (std::size_t j = 0; j < kJointCount; ++j) {
            frame.joints[j].x = parse_cell_double(cells[base + 3 * j + 0], line_no);
            frame.joints[j].y = parse_cell_double(cells[base + 3 * j + 1], line_no);
            frame.joints[j].z = parse_cell_double(cells[base + 3 * j + 2], line_no);
        }
        seq.frames.push_back(frame);
        ++line_no;
    }
    return seq;
}

SkeletonSequence parse_sequence_file(const std::string& path) {
    auto in = open_input(path);
    try {
        return parse_sequence(in);
    } catch (const ParseError& e) {
        throw ParseError(e.kind(), e.line(), path + ": " + e.what());
    }
}

void write_sequence(const SkeletonSequence& seq, std::ostream& out) {
    std::size_t with_ts = 0;
    for (const auto& f : seq.frames)
        if (f.timestamp)
            ++with_ts;
    if (with_ts != 0 && with_ts != seq.frames.size())
        throw ValidationError("cannot write sequence with mixed timestamp presence");

    out << "# romkit-sequence v" << kSequenceFormatVersion << "\n";
    out << "# handedness: " << (seq.handedness == Handedness::left ? "left" : "right")
        << "\n";
    out << "# frame_rate: " << render_double(seq.frame_rate) << "\n";
    out << "# joints: " << canonical_joint_order() << "\n";
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const auto& f = seq.frames[i];
        out << i;
        if (f.timestamp)
            out << ',' << render_double(*f.timestamp);
        for (const auto& p : f.joints)
            out << ',' << render_double(p.x) << ',' << render_double(p.y) << ','
                << render_double(p.z);
        out << '\n';
    }
    if (!out)
        throw IoError("write failure while emitting sequence");
}

void write_sequence_file(const SkeletonSequence& seq, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    write_sequence(seq, out);
}

// --- manifest ---

const SubjectInfo& DatasetManifest::subject(const std::string& id) const {
    for (const auto& s : subjects)
        if (s.id == id)
            return s;
    throw ValidationError("unknown subject id '" + id + "'");
}

namespace {

using nlohmann::json;

std::string json_string(const json& j, const char* object, const char* field) {
    if (!j.contains(field) || !j[field].is_string())
        throw ValidationError(std::string("manifest: ") + object +
                              " needs a string field '" + field + "'");
    return j[field].get<std::string>();
}

} // namespace

DatasetManifest load_manifest(std::istream& in) {
    std::string text(std::istreambuf_iterator<char>(in), {});
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        byte = std::min(byte, text.size());
        std::size_t line = 1 + static_cast<std::size_t>(
                                   std::count(text.begin(), text.begin() + byte, '\n'));
        throw ParseError(ParseErrorKind::malformed_json, line,
                         std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ValidationError("manifest: top level must be a JSON object");

    DatasetManifest m;
    for (const auto& js : doc.value("subjects", json::array())) {
        SubjectInfo s;
        s.id = json_string(js, "subject", "id");
        std::string group = json_string(js, "subject", "group");
        if (group == "control")
            s.group = SubjectGroup::control;
        else if (group == "patient")
            s.group = SubjectGroup::patient;
        else
            throw ValidationError("manifest: subject '" + s.id +
                                  "': group must be 'control' or 'patient'");
        s.notes = js.value("notes", "");
        for (const auto& other : m.subjects)
            if (other.id == s.id)
                throw ValidationError("manifest: duplicate subject id '" + s.id + "'");
        m.subjects.push_back(std::move(s));
    }

    for (const auto& je : doc.value("sequences", json::array())) {
        SequenceEntry e;
        e.path = json_string(je, "sequence", "path");
        e.subject = json_string(je, "sequence", "subject");
        std::string hand = json_string(je, "sequence", "hand");
        if (hand == "left")
            e.hand = Handedness::left;
        else if (hand == "right")
            e.hand = Handedness::right;
        else
            throw ValidationError("manifest: sequence '" + e.path +
                                  "': hand must be 'left' or 'right'");
        std::string movement = json_string(je, "sequence", "movement");
        if (movement == "flexion")
            e.movement = Movement::flexion;
        else if (movement == "abduction")
            e.movement = Movement::abduction;
        else
            throw ValidationError("manifest: sequence '" + e.path +
                                  "': movement must be 'flexion' or 'abduction'");
        if (je.contains("orthosis")) {
            if (!je["orthosis"].is_boolean())
                throw ValidationError("manifest: sequence '" + e.path +
                                      "': orthosis must be a boolean");
            e.orthosis = je["orthosis"].get<bool>();
        }
        if (je.contains("frame_rate")) {
            if (!je["frame_rate"].is_number())
                throw ValidationError("manifest: sequence '" + e.path +
                                      "': frame_rate must be a number");
            e.frame_rate = je["frame_rate"].get<double>();
        }

        bool found = false;
        for (const auto& s : m.subjects) {
            if (s.id == e.subject) {
                found = true;
                if (e.orthosis && s.group == SubjectGroup::control)
                    throw ValidationError("manifest: sequence '" + e.path +
                                          "': orthosis requires a patient subject");
            }
        }
        if (!found)
            throw ValidationError("manifest: sequence '" + e.path +
                                  "' references unknown subject '" + e.subject + "'");
        for (const auto& other : m.sequences)
            if (other.path == e.path)
                throw ValidationError("manifest: duplicate sequence path '" + e.path +
                                      "'");
        m.sequences.push_back(std::move(e));
    }
    return m;
}

DatasetManifest load_manifest_file(const std::string& path) {
    auto in = open_input(path);
    return load_manifest(in);
}

std::string group_label_name(GroupLabel g) {
    switch (g) {
    case GroupLabel::control: return "control";
    case GroupLabel::patient: return "patient";
    case GroupLabel::patient_orthosis: return "patient-orthosis";
    }
    return {};
}

GroupLabel parse_group_label(const std::string& text) {
    for (GroupLabel g : {GroupLabel::control, GroupLabel::patient,
                         GroupLabel::patient_orthosis})
        if (text == group_label_name(g))
            return g;
    throw InvalidArgumentError("unknown group '" + text +
                               "' (control, patient or patient-orthosis)");
}

bool sequence_in_group(const DatasetManifest& m, const SequenceEntry& e, GroupLabel g) {
    SubjectGroup sg = m.subject(e.subject).group;
    switch (g) {
    case GroupLabel::control: return sg == SubjectGroup::control;
    case GroupLabel::patient: return sg == SubjectGroup::patient && !e.orthosis;
    case GroupLabel::patient_orthosis: return sg == SubjectGroup::patient && e.orthosis;
    }
    return false;
}

// --- result tables ---

void write_angles(const AngleSeries& series, std::ostream& out,
                  std::optional<Finger> only_finger) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < kChannelCount; ++c)
        if (!only_finger || channel_from_index(c).finger == *only_finger)
            cols.push_back(c);

    out << "frame";
    for (std::size_t c : cols)
        out << ',' << channel_name(channel_from_index(c));
    out << '\n';
    for (std::size_t i = 0; i < series.n_frames; ++i) {
        out << i;
        for (std::size_t c : cols) {
            out << ',';
            if (series.channels[c][i])
                out << render_double(*series.channels[c][i]);
        }
        out << '\n';
    }
    if (!out)
        throw IoError("write failure while emitting angle table");
}

void write_cycles(const std::vector<MovementCycle>& cycles, std::ostream& out) {
    out << "channel,start_frame,end_frame,peak_frame,source\n";
    for (const auto& c : cycles)
        out << channel_name(c.channel) << ',' << c.start_frame << ',' << c.end_frame
            << ',' << c.peak_frame << ','
            << (c.source == CycleSource::automatic ? "auto" : "landmark") << '\n';
    if (!out)
        throw IoError("write failure while emitting cycle table");
}

void write_rom(const RomSummary& rom, std::ostream& out) {
    out << "channel,min_deg,max_deg,range_deg\n";
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        out << channel_name(channel_from_index(c)) << ',';
        if (rom.entries[c]) {
            out << render_double(rom.entries[c]->min_deg) << ','
                << render_double(rom.entries[c]->max_deg) << ','
                << render_double(rom.entries[c]->range_deg());
        } else {
            out << ",,";
        }
        out << '\n';
    }
    if (!out)
        throw IoError("write failure while emitting rom table");
}

void write_validation(const ValidationReport& report, std::ostream& out) {
    out << "frame,code,message\n";
    for (const auto& f : report.findings) {
        if (f.frame)
            out << *f.frame;
        out << ',' << f.code << ',' << f.message << '\n';
    }
    if (!out)
        throw IoError("write failure while emitting validation report");
}

namespace {

void write_profile_rows(const LabeledProfile& lp, std::ostream& out) {
    for (std::size_t j = 0; j < lp.profile.n_samples; ++j)
        out << lp.label << ',' << channel_name(lp.profile.channel) << ',' << j << ','
            << render_double(lp.profile.mean_deg[j]) << ','
            << render_double(lp.profile.std_deg[j]) << '\n';
}

void write_cycle_count_comment(const LabeledProfile& lp, std::ostream& out) {
    out << "# cycles: " << lp.label << ',' << channel_name(lp.profile.channel) << ','
        << lp.profile.n_cycles << '\n';
}

} // namespace

void write_profiles(const std::vector<LabeledProfile>& profiles, std::ostream& out) {
    out << "# romkit-profile v1\n";
    for (const auto& lp : profiles)
        write_cycle_count_comment(lp, out);
    out << "label,channel,x,mean,std\n";
    for (const auto& lp : profiles)
        write_profile_rows(lp, out);
    if (!out)
        throw IoError("write failure while emitting profile table");
}

void write_comparison(const std::vector<ProfileComparison>& comparisons,
                      std::ostream& out) {
    out << "# romkit-profile v1\n";
    for (const auto& cmp : comparisons)
        for (const auto& lp : cmp.profiles)
            write_cycle_count_comment(lp, out);
    for (const auto& cmp : comparisons) {
        for (std::size_t i = 0; i < cmp.profiles.size(); ++i) {
            const auto& st = cmp.stats[i];
            out << "# summary: " << cmp.profiles[i].label << ','
                << channel_name(cmp.channel) << ",peak_mean="
                << render_double(st.peak_mean_deg)
                << ",mean_std=" << render_double(st.mean_std_deg)
                << ",mean_range=" << render_double(st.mean_range_deg) << '\n';
        }
    }
    out << "label,channel,x,mean,std\n";
    for (const auto& cmp : comparisons)
        for (const auto& lp : cmp.profiles)
            write_profile_rows(lp, out);
    if (!out)
        throw IoError("write failure while emitting comparison table");
}

std::vector<LabeledProfile> read_profiles(std::istream& in) {
    std::size_t line_no = 1;
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(ParseErrorKind::empty_file, 1, "empty profile table");
    if (line != "# romkit-profile v1")
        throw ParseError(ParseErrorKind::malformed_header, 1,
                         "expected '# romkit-profile v1'");
    ++line_no;

    std::map<std::pair<std::string, std::string>, std::size_t> cycle_counts;
    while (std::getline(in, line)) {
        if (line.rfind("# cycles: ", 0) == 0) {
            auto cells = split(line.substr(10), ',');
            if (cells.size() != 3)
                throw ParseError(ParseErrorKind::wrong_column_count, line_no,
                                 "'# cycles:' needs label,channel,count");
            cycle_counts[{cells[0], cells[1]}] = parse_cell_index(cells[2], line_no);
            ++line_no;
        } else if (line.rfind("#", 0) == 0) {
            ++line_no; // other comments (e.g. summaries) are informational
        } else {
            break;
        }
    }
    if (line != "label,channel,x,mean,std")
        throw ParseError(ParseErrorKind::malformed_header, line_no,
                         "expected column header 'label,channel,x,mean,std'");
    ++line_no;

    std::vector<LabeledProfile> out;
    while (std::getline(in, line)) {
        auto cells = split(line, ',');
        if (cells.size() != 5)
            throw ParseError(ParseErrorKind::wrong_column_count, line_no,
                             "expected 5 columns, got " + std::to_string(cells.size()));
        const std::string& label = cells[0];
        ChannelId channel = parse_channel(cells[1]);
        std::size_t x = parse_cell_index(cells[2], line_no);
        double mean = parse_cell_double(cells[3], line_no);
        double stdev = parse_cell_double(cells[4], line_no);

        bool same_group = !out.empty() && out.back().label == label &&
                          out.back().profile.channel == channel;
        if (!same_group) {
            if (x != 0)
                throw ParseError(ParseErrorKind::bad_frame_index, line_no,
                                 "profile samples must start at x=0");
            LabeledProfile lp;
            lp.label = label;
            lp.profile.channel = channel;
            lp.profile.n_samples = 0;
            auto it = cycle_counts.find({label, cells[1]});
            lp.profile.n_cycles = it == cycle_counts.end() ? 0 : it->second;
            out.push_back(std::move(lp));
        } else if (x != out.back().profile.mean_deg.size()) {
            throw ParseError(ParseErrorKind::bad_frame_index, line_no,
                             "profile sample index must increase by 1");
        }
        out.back().profile.mean_deg.push_back(mean);
        out.back().profile.std_deg.push_back(stdev);
        out.back().profile.n_samples = out.back().profile.mean_deg.size();
        ++line_no;
    }
    return out;
}

std::vector<LabeledProfile> read_profiles_file(const std::string& path) {
    auto in = open_input(path);
    try {
        return read_profiles(in);
    } catch (const ParseError& e) {
        throw ParseError(e.kind(), e.line(), path + ": " + e.what());
    }
}

std::vector<std::pair<std::size_t, std::size_t>> parse_landmarks(std::istream& in) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::string line;
    std::size_t line_no = 1;
    for (; std::getline(in, line); ++line_no) {
        std::string body = line.substr(0, line.find('#'));
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream cells(body);
        std::string a, b, extra;
        if (!(cells >> a))
            continue; // blank or comment-only line
        if (!(cells >> b) || (cells >> extra))
            throw ParseError(ParseErrorKind::wrong_column_count, line_no,
                             "expected two frame indices per line");
        out.emplace_back(parse_cell_index(a, line_no), parse_cell_index(b, line_no));
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_landmarks_file(
    const std::string& path) {
    auto in = open_input(path);
    try {
        return parse_landmarks(in);
    } catch (const ParseError& e) {
        throw ParseError(e.kind(), e.line(), path + ": " + e.what());
    }
}

} // namespace romkit
