#include "romkit/analysis.hpp"

#include "romkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace romkit {

AngleSeries angle_series(const SkeletonSequence& seq, std::string id) {
    AngleSeries out;
    out.id = std::move(id);
    out.frame_rate = seq.frame_rate;
    out.n_frames = seq.frames.size();
    for (auto& ch : out.channels)
        ch.resize(out.n_frames);
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        AngleFrame af = frame_angles(seq.frames[i], i);
        for (std::size_t c = 0; c < kChannelCount; ++c)
            out.channels[c][i] = af.channel(channel_from_index(c));
    }
    return out;
}

Channel smooth_channel(const Channel& ch, std::size_t window) {
    if (window % 2 == 0 || window == 0)
        throw InvalidArgumentError("smoothing window must be odd and >= 1");
    if (window > ch.size())
        throw InvalidArgumentError("smoothing window exceeds series length");
    if (window == 1)
        return ch;

    const std::size_t h = window / 2;
    const std::size_t n = ch.size();
    Channel out(n);
    std::vector<double> buf;
    buf.reserve(window);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i >= h ? i - h : 0;
        std::size_t hi = std::min(n - 1, i + h);
        buf.clear();
        for (std::size_t j = lo; j <= hi; ++j)
            if (ch[j])
                buf.push_back(*ch[j]);
        if (buf.empty())
            continue;
        std::sort(buf.begin(), buf.end());
        std::size_t m = buf.size();
        out[i] = m % 2 == 1 ? buf[m / 2] : 0.5 * (buf[m / 2 - 1] + buf[m / 2]);
    }
    return out;
}

AngleSeries smooth(const AngleSeries& series, std::size_t window) {
    AngleSeries out = series;
    for (auto& ch : out.channels)
        ch = smooth_channel(ch, window);
    return out;
}

namespace {

// Run of consecutive equal present values over the compressed channel.
struct Run {
    double value;
    std::size_t first; // indices into the compressed arrays
    std::size_t last;
};

struct Candidate {
    std::size_t run;
    ExtremumKind kind;
};

} // namespace

std::vector<Extremum> detect_extrema(const Channel& ch, double prominence_deg) {
    if (!(prominence_deg > 0.0))
        throw InvalidArgumentError("prominence must be positive");

    // compress absences out; extrema frames refer back to the original index
    std::vector<double> val;
    std::vector<std::size_t> frame;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (ch[i]) {
            val.push_back(*ch[i]);
            frame.push_back(i);
        }
    }
    if (val.size() < 2)
        return {};

    std::vector<Run> runs;
    for (std::size_t i = 0; i < val.size(); ++i) {
        if (!runs.empty() && runs.back().value == val[i])
            runs.back().last = i;
        else
            runs.push_back({val[i], i, i});
    }

    std::vector<Candidate> cand;
    for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
        double prev = runs[r - 1].value;
        double next = runs[r + 1].value;
        if (prev < runs[r].value && next < runs[r].value)
            cand.push_back({r, ExtremumKind::maximum});
        else if (prev > runs[r].value && next > runs[r].value)
            cand.push_back({r, ExtremumKind::minimum});
    }

    // topographic prominence: walk outwards until strictly higher (maxima)
    // or strictly lower (minima) ground, track the col level on each side,
    // take the higher col (lower for minima). One-sided at the series edges.
    auto prominence = [&](const Candidate& c) {
        double v = runs[c.run].value;
        bool is_max = c.kind == ExtremumKind::maximum;
        double best_base = std::numeric_limits<double>::quiet_NaN();
        for (int dir : {-1, +1}) {
            double base = v;
            bool any = false;
            for (std::ptrdiff_t r = static_cast<std::ptrdiff_t>(c.run) + dir;
                 r >= 0 && r < static_cast<std::ptrdiff_t>(runs.size()); r += dir) {
                double u = runs[static_cast<std::size_t>(r)].value;
                if (is_max ? u > v : u < v)
                    break;
                base = is_max ? std::min(base, u) : std::max(base, u);
                any = true;
            }
            if (!any)
                continue;
            if (std::isnan(best_base))
                best_base = base;
            else
                best_base = is_max ? std::max(best_base, base) : std::min(best_base, base);
        }
        if (std::isnan(best_base))
            return 0.0;
        return is_max ? v - best_base : best_base - v;
    };

    std::vector<Extremum> kept;
    for (const auto& c : cand) {
        double p = prominence(c);
        if (p < prominence_deg)
            continue;
        const Run& r = runs[c.run];
        std::size_t center = frame[(r.first + r.last) / 2];
        kept.push_back({center, c.kind, r.value, p});
    }

    // enforce alternation: of same-kind neighbours keep the more extreme one
    std::vector<Extremum> out;
    for (const auto& e : kept) {
        bool drop = false;
        while (!out.empty() && out.back().kind == e.kind) {
            bool replace = e.kind == ExtremumKind::maximum
                               ? e.value_deg > out.back().value_deg
                               : e.value_deg < out.back().value_deg;
            if (!replace) {
                drop = true;
                break;
            }
            out.pop_back();
        }
        if (!drop)
            out.push_back(e);
    }

    // boundary rule: a leading or trailing maximum is bracketed by the lowest
    // sample between it and the series edge. The edge sample may therefore
    // act as a minimum, but never as a peak. The bracket's one-sided
    // prominence is at least the maximum's own, so it respects the threshold.
    auto argmin_between = [&](std::size_t lo_idx, std::size_t hi_idx) {
        std::size_t best = lo_idx;
        double top = val[lo_idx];
        for (std::size_t i = lo_idx; i <= hi_idx; ++i) {
            if (val[i] < val[best])
                best = i;
            top = std::max(top, val[i]);
        }
        return Extremum{frame[best], ExtremumKind::minimum, val[best],
                        top - val[best]};
    };
    // compressed index of a frame (frames of extrema always map back)
    auto compressed_index = [&](std::size_t fr) {
        return static_cast<std::size_t>(
            std::lower_bound(frame.begin(), frame.end(), fr) - frame.begin());
    };
    if (!out.empty() && out.front().kind == ExtremumKind::maximum) {
        Extremum lead = argmin_between(0, compressed_index(out.front().frame));
        if (lead.frame != out.front().frame)
            out.insert(out.begin(), lead);
    }
    if (!out.empty() && out.back().kind == ExtremumKind::maximum) {
        Extremum tail = argmin_between(compressed_index(out.back().frame),
                                       val.size() - 1);
        if (tail.frame != out.back().frame)
            out.push_back(tail);
    }
    return out;
}

std::vector<MovementCycle> segment_cycles(const AngleSeries& series, ChannelId channel,
                                          const SegmentationParams& params) {
    const Channel& ch = series.channel(channel);
    std::size_t present = 0;
    for (const auto& v : ch)
        if (v)
            ++present;
    if (present == 0)
        throw GeometryError(GeometryErrorKind::degenerate_projection,
                            "channel " + channel_name(channel) +
                                " has no measurable samples");

    auto ext = detect_extrema(ch, params.prominence_deg);
    std::vector<MovementCycle> cycles;
    for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
        if (ext[i].kind != ExtremumKind::maximum)
            continue;
        if (i == 0 || ext[i - 1].kind != ExtremumKind::minimum ||
            ext[i + 1].kind != ExtremumKind::minimum)
            continue;
        cycles.push_back({channel, ext[i - 1].frame, ext[i + 1].frame, ext[i].frame,
                          CycleSource::automatic});
    }
    return cycles;
}

std::vector<MovementCycle> segment_cycles(
    const AngleSeries& series, ChannelId channel,
    const std::vector<std::pair<std::size_t, std::size_t>>& landmarks) {
    const Channel& ch = series.channel(channel);
    std::vector<MovementCycle> cycles;
    std::size_t prev_end = 0;
    for (std::size_t i = 0; i < landmarks.size(); ++i) {
        auto [s, e] = landmarks[i];
        if (e >= series.n_frames)
            throw ValidationError("landmark pair " + std::to_string(i) +
                                  " is out of range");
        if (s >= e)
            throw ValidationError("landmark pair " + std::to_string(i) +
                                  " is not ordered (start < end required)");
        if (i > 0 && s < prev_end)
            throw ValidationError("landmark pair " + std::to_string(i) +
                                  " overlaps the previous pair");
        prev_end = e;

        std::optional<std::size_t> peak;
        for (std::size_t j = s; j <= e; ++j)
            if (ch[j] && (!peak || *ch[j] > *ch[*peak]))
                peak = j;
        if (!peak)
            throw ValidationError("landmark pair " + std::to_string(i) +
                                  " contains no measurable samples");
        cycles.push_back({channel, s, e, *peak, CycleSource::landmark});
    }
    return cycles;
}

std::vector<double> resample_cycle(const AngleSeries& series, const MovementCycle& cycle,
                                   std::size_t n_samples) {
    if (n_samples < 2)
        throw InvalidArgumentError("n_samples must be >= 2");
    if (cycle.end_frame >= series.n_frames || cycle.start_frame >= cycle.end_frame)
        throw ValidationError("cycle does not fit the series");

    const Channel& ch = series.channel(cycle.channel);
    std::vector<double> xs;
    std::vector<double> vs;
    for (std::size_t j = cycle.start_frame; j <= cycle.end_frame; ++j) {
        if (ch[j]) {
            xs.push_back(static_cast<double>(j));
            vs.push_back(*ch[j]);
        }
    }
    if (xs.size() < 2)
        throw ValidationError("cycle too short: fewer than two measurable samples");

    std::vector<double> out(n_samples);
    double span = static_cast<double>(cycle.end_frame - cycle.start_frame);
    for (std::size_t k = 0; k < n_samples; ++k) {
        double x = static_cast<double>(cycle.start_frame) +
                   span * static_cast<double>(k) / static_cast<double>(n_samples - 1);
        if (x <= xs.front()) {
            out[k] = vs.front();
        } else if (x >= xs.back()) {
            out[k] = vs.back();
        } else {
            std::size_t hi = static_cast<std::size_t>(
                std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
            std::size_t lo = hi - 1;
            double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
            out[k] = vs[lo] + t * (vs[hi] - vs[lo]);
        }
    }
    return out;
}

CycleProfile aggregate(const std::vector<std::vector<double>>& cycles, ChannelId channel,
                       std::size_t n_samples) {
    if (cycles.empty())
        throw InvalidArgumentError("aggregate needs at least one cycle");
    for (const auto& c : cycles)
        if (c.size() != n_samples)
            throw InvalidArgumentError("aggregate: cycle length mismatch");

    CycleProfile p;
    p.channel = channel;
    p.n_samples = n_samples;
    p.n_cycles = cycles.size();
    p.mean_deg.assign(n_samples, 0.0);
    p.std_deg.assign(n_samples, 0.0);
    double k = static_cast<double>(cycles.size());
    for (std::size_t j = 0; j < n_samples; ++j) {
        double m = 0.0;
        for (const auto& c : cycles)
            m += c[j];
        m /= k;
        double ss = 0.0;
        for (const auto& c : cycles)
            ss += (c[j] - m) * (c[j] - m);
        p.mean_deg[j] = m;
        p.std_deg[j] = std::sqrt(ss / k);
    }
    return p;
}

RomSummary rom_summary(const AngleSeries& series) {
    RomSummary out;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        std::optional<RomEntry> entry;
        for (const auto& v : series.channels[c]) {
            if (!v)
                continue;
            if (!entry)
                entry = RomEntry{*v, *v};
            else {
                entry->min_deg = std::min(entry->min_deg, *v);
                entry->max_deg = std::max(entry->max_deg, *v);
            }
        }
        out.entries[c] = entry;
    }
    return out;
}

ProfileComparison compare_profiles(const std::vector<LabeledProfile>& profiles) {
    if (profiles.empty())
        throw InvalidArgumentError("compare needs at least one profile");
    const CycleProfile& ref = profiles.front().profile;
    for (const auto& lp : profiles) {
        if (lp.profile.n_samples != ref.n_samples ||
            !(lp.profile.channel == ref.channel))
            throw InvalidArgumentError(
                "profiles do not share channel and sample count");
    }

    ProfileComparison cmp;
    cmp.channel = ref.channel;
    cmp.n_samples = ref.n_samples;
    cmp.profiles = profiles;
    for (const auto& lp : profiles) {
        const auto& m = lp.profile.mean_deg;
        const auto& s = lp.profile.std_deg;
        double peak = *std::max_element(m.begin(), m.end());
        double lo = *std::min_element(m.begin(), m.end());
        double mean_std = 0.0;
        for (double v : s)
            mean_std += v;
        mean_std /= static_cast<double>(s.size());
        cmp.stats.push_back({peak, mean_std, peak - lo});
    }
    return cmp;
}

} // namespace romkit
