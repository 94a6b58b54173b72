#pragma once

#include <algorithm>
#include <cmath>

#include "viewcon/errors.hpp"

namespace viewcon {

/// Closed interval [start, end] in seconds on a video timeline.
///
/// A fully valid interval has 0 <= start <= end with both ends finite.
/// Raw parsed spans may violate the range bounds; clamp_to_timeline repairs
/// those. Reversed spans (start > end) are repaired by the response codec
/// and rejected here.
struct TimeInterval {
    double start = 0.0;
    double end = 0.0;

    double length() const { return end - start; }

    bool operator==(const TimeInterval&) const = default;
};

/// A video of positive duration; intervals evaluated against it are clamped
/// to [0, duration].
struct VideoTimeline {
    double duration = 0.0;
};

inline bool is_ordered_finite(const TimeInterval& i) {
    return std::isfinite(i.start) && std::isfinite(i.end) && i.start <= i.end;
}

inline bool is_valid(const TimeInterval& i) {
    return is_ordered_finite(i) && i.start >= 0.0;
}

inline void require_valid(const TimeInterval& i, const char* who) {
    if (!is_valid(i)) {
        throw ContractError(std::string(who) + ": invalid interval [" +
                            std::to_string(i.start) + ", " + std::to_string(i.end) + "]");
    }
}

inline void require_valid(const VideoTimeline& t, const char* who) {
    if (!(std::isfinite(t.duration) && t.duration > 0.0)) {
        throw ContractError(std::string(who) + ": timeline duration must be positive");
    }
}

inline double interval_length(const TimeInterval& i) {
    require_valid(i, "interval_length");
    return i.length();
}

/// Temporal intersection-over-union of two intervals.
///
/// |a ∩ b| / |a ∪ b| with |a ∪ b| = |a| + |b| - |a ∩ b|. A zero-length
/// union (two identical degenerate points) scores 0, not 1, so point
/// predictions are never rewarded.
inline double tiou(const TimeInterval& a, const TimeInterval& b) {
    require_valid(a, "tiou");
    require_valid(b, "tiou");
    const double inter = std::max(0.0, std::min(a.end, b.end) - std::max(a.start, b.start));
    const double uni = a.length() + b.length() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

/// Clamp both endpoints into [0, duration]. Accepts out-of-range endpoints
/// (raw model output) but not reversed ones.
inline TimeInterval clamp_to_timeline(const TimeInterval& i, const VideoTimeline& t) {
    require_valid(t, "clamp_to_timeline");
    if (!is_ordered_finite(i)) {
        throw ContractError("clamp_to_timeline: reversed or non-finite interval");
    }
    return TimeInterval{std::clamp(i.start, 0.0, t.duration),
                        std::clamp(i.end, 0.0, t.duration)};
}

}  // namespace viewcon
