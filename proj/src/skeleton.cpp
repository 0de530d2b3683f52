#include "romkit/skeleton.hpp"

#include "romkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace romkit {

JointId JointId::from_index(std::size_t i) {
    if (i >= kJointCount)
        throw std::out_of_range("joint index out of range: " + std::to_string(i));
    return JointId(i);
}

std::string JointId::name() const {
    if (is_wrist())
        return "W";
    static const char* generic[4] = {"MCP", "PIP", "DIP", "TIP"};
    static const char* thumb[4] = {"CMC", "MCP", "IP", "TIP"};
    const char* const* table = finger() == Finger::thumb ? thumb : generic;
    return std::string(table[static_cast<int>(slot())]) +
           std::to_string(static_cast<int>(finger()));
}

std::string finger_name(Finger f) {
    static const char* roman[5] = {"I", "II", "III", "IV", "V"};
    return roman[static_cast<int>(f) - 1];
}

Finger parse_finger(const std::string& text) {
    std::string t;
    for (char c : text)
        t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    static const std::pair<const char*, Finger> table[] = {
        {"I", Finger::thumb},  {"1", Finger::thumb},  {"THUMB", Finger::thumb},
        {"II", Finger::index}, {"2", Finger::index},  {"INDEX", Finger::index},
        {"III", Finger::middle}, {"3", Finger::middle}, {"MIDDLE", Finger::middle},
        {"IV", Finger::ring},  {"4", Finger::ring},   {"RING", Finger::ring},
        {"V", Finger::pinky},  {"5", Finger::pinky},  {"PINKY", Finger::pinky},
    };
    for (const auto& [key, f] : table)
        if (t == key)
            return f;
    throw InvalidArgumentError("unknown finger: '" + text + "' (use I-V, 1-5 or a name)");
}

std::array<Bone, 20> skeleton_bones() {
    std::array<Bone, 20> bones = {};
    std::size_t k = 0;
    for (Finger f : kFingers) {
        bones[k++] = {JointId::wrist(), JointId::of(f, Slot::mcp)};
        bones[k++] = {JointId::of(f, Slot::mcp), JointId::of(f, Slot::pip)};
        bones[k++] = {JointId::of(f, Slot::pip), JointId::of(f, Slot::dip)};
        bones[k++] = {JointId::of(f, Slot::dip), JointId::of(f, Slot::tip)};
    }
    return bones;
}

ValidationReport validate(const SkeletonSequence& seq) {
    ValidationReport rep;
    if (seq.frames.empty()) {
        rep.findings.push_back({std::nullopt, "empty-sequence", "sequence has no frames"});
        return rep;
    }
    if (!(seq.frame_rate > 0.0) || !std::isfinite(seq.frame_rate))
        rep.findings.push_back({std::nullopt, "bad-frame-rate",
                                "frame rate must be finite and positive"});

    const auto bones = skeleton_bones();
    std::size_t with_ts = 0;
    std::optional<double> prev_ts;
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const auto& fr = seq.frames[i];
        bool all_finite = true;
        for (const auto& p : fr.joints)
            if (!finite(p))
                all_finite = false;
        if (!all_finite) {
            rep.findings.push_back({i, "non-finite", "frame contains non-finite coordinates"});
        } else {
            // bone checks on garbage coordinates would only add noise
            for (const auto& b : bones) {
                if (norm(fr[b.distal] - fr[b.proximal]) <= 1e-9)
                    rep.findings.push_back(
                        {i, "zero-length-bone", "bone " + b.name() + " has zero length"});
            }
        }
        if (fr.timestamp) {
            ++with_ts;
            if (!std::isfinite(*fr.timestamp))
                rep.findings.push_back({i, "non-finite", "timestamp is not finite"});
            else if (prev_ts && *fr.timestamp <= *prev_ts)
                rep.findings.push_back({i, "non-monotone-timestamp",
                                        "timestamp does not increase strictly"});
            prev_ts = fr.timestamp;
        }
    }
    if (with_ts != 0 && with_ts != seq.frames.size())
        rep.findings.push_back({std::nullopt, "mixed-timestamps",
                                "timestamps must be present on all frames or none"});
    return rep;
}

} // namespace romkit
