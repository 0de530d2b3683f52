#include "romkit/skeleton.hpp"

#include "romkit/errors.hpp"

#include <doctest.h>

#include <set>

using namespace romkit;

TEST_CASE("canonical joint indexing is a bijection") {
    std::set<std::string> names;
    for (std::size_t i = 0; i < kJointCount; ++i) {
        JointId id = JointId::from_index(i);
        CHECK(id.index() == i);
        names.insert(id.name());
    }
    CHECK(names.size() == kJointCount);
    CHECK(JointId::from_index(0) == JointId::wrist());
    CHECK(JointId::from_index(9) == JointId::of(Finger::middle, Slot::mcp));
    CHECK(JointId::of(Finger::thumb, Slot::mcp).name() == "CMC1");
    CHECK(JointId::of(Finger::thumb, Slot::dip).name() == "IP1");
    CHECK(JointId::of(Finger::index, Slot::pip).name() == "PIP2");
    CHECK_THROWS(JointId::from_index(21));
}

TEST_CASE("joint lookup is the stored position") {
    HandSkeletonFrame f;
    f[JointId::wrist()] = {0, 0, 0};
    f[JointId::of(Finger::ring, Slot::tip)] = {1, 2, 3};
    CHECK(joint(f, JointId::wrist()).x == 0.0);
    CHECK(joint(f, JointId::of(Finger::ring, Slot::tip)).z == 3.0);
}

TEST_CASE("finger parsing") {
    CHECK(parse_finger("IV") == Finger::ring);
    CHECK(parse_finger("4") == Finger::ring);
    CHECK(parse_finger("thumb") == Finger::thumb);
    CHECK_THROWS_AS(parse_finger("VI"), InvalidArgumentError);
}

namespace {

SkeletonSequence small_sequence(std::size_t n) {
    SkeletonSequence seq;
    for (std::size_t i = 0; i < n; ++i) {
        HandSkeletonFrame f;
        for (std::size_t j = 0; j < kJointCount; ++j)
            f.joints[j] = {static_cast<double>(j), static_cast<double>(i), 1.0};
        f.timestamp = static_cast<double>(i) / 30.0;
        seq.frames.push_back(f);
    }
    return seq;
}

} // namespace

TEST_CASE("validate: clean sequence") {
    CHECK(validate(small_sequence(3)).clean());
}

TEST_CASE("validate: empty sequence") {
    SkeletonSequence seq;
    auto rep = validate(seq);
    REQUIRE(rep.findings.size() == 1);
    CHECK(rep.findings[0].code == "empty-sequence");
}

TEST_CASE("validate: NaN coordinate is flagged with its frame") {
    auto seq = small_sequence(4);
    seq.frames[2].joints[7].y = std::nan("");
    auto rep = validate(seq);
    REQUIRE(rep.findings.size() == 1);
    CHECK(rep.findings[0].code == "non-finite");
    CHECK(rep.findings[0].frame == 2);
}

TEST_CASE("validate: coincident adjacent joints") {
    auto seq = small_sequence(2);
    // MCP2 = PIP2 in frame 1
    seq.frames[1][JointId::of(Finger::index, Slot::pip)] =
        seq.frames[1][JointId::of(Finger::index, Slot::mcp)];
    auto rep = validate(seq);
    REQUIRE(rep.findings.size() == 1);
    CHECK(rep.findings[0].code == "zero-length-bone");
    CHECK(rep.findings[0].frame == 1);
    CHECK(rep.findings[0].message.find("MCP2-PIP2") != std::string::npos);
}

TEST_CASE("validate: non-monotone timestamps") {
    auto seq = small_sequence(3);
    seq.frames[2].timestamp = *seq.frames[1].timestamp;
    auto rep = validate(seq);
    REQUIRE(rep.findings.size() == 1);
    CHECK(rep.findings[0].code == "non-monotone-timestamp");
    CHECK(rep.findings[0].frame == 2);
}

TEST_CASE("validate: mixed timestamp presence") {
    auto seq = small_sequence(3);
    seq.frames[1].timestamp.reset();
    auto rep = validate(seq);
    REQUIRE(rep.findings.size() == 1);
    CHECK(rep.findings[0].code == "mixed-timestamps");
}
