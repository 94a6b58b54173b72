#include "viewcon/response.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace viewcon {

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string_view::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

// Matches an unsigned decimal ("12", "12.5") at `pos`; on success advances
// `pos` past it and stores the value.
bool scan_number(std::string_view text, std::size_t& pos, double& value) {
    std::size_t p = pos;
    if (p >= text.size() || !is_digit(text[p])) return false;
    while (p < text.size() && is_digit(text[p])) ++p;
    if (p < text.size() && text[p] == '.' && p + 1 < text.size() && is_digit(text[p + 1])) {
        ++p;
        while (p < text.size() && is_digit(text[p])) ++p;
    }
    const char* first = text.data() + pos;
    const char* last = text.data() + p;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return false;
    pos = p;
    value = v;
    return true;
}

void skip_spaces(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
}

// Case-insensitive whole-word match at `pos`; advances past the word.
bool scan_word_ci(std::string_view text, std::size_t& pos, std::string_view word) {
    if (pos > 0 && is_word_char(text[pos - 1])) return false;
    if (pos + word.size() > text.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) != word[i]) return false;
    }
    std::size_t after = pos + word.size();
    if (after < text.size() && is_word_char(text[after])) return false;
    pos = after;
    return true;
}

struct SpanMatch {
    double a = 0.0;
    double b = 0.0;
};

// "A - B" with optional surrounding spaces around the dash.
bool scan_dash_pair(std::string_view text, std::size_t pos, SpanMatch& m, std::size_t& end_pos) {
    double a = 0.0, b = 0.0;
    std::size_t p = pos;
    if (!scan_number(text, p, a)) return false;
    skip_spaces(text, p);
    if (p >= text.size() || text[p] != '-') return false;
    ++p;
    skip_spaces(text, p);
    if (!scan_number(text, p, b)) return false;
    m = {a, b};
    end_pos = p;
    return true;
}

bool followed_by_seconds(std::string_view text, std::size_t pos) {
    skip_spaces(text, pos);
    return scan_word_ci(text, pos, "seconds");
}

// Grammar pattern 1/4: first "A - B" in the region, optionally requiring a
// trailing "seconds".
std::optional<SpanMatch> find_dash_form(std::string_view text, bool require_seconds) {
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        if (!is_digit(text[pos])) continue;
        if (pos > 0 && (is_word_char(text[pos - 1]) || text[pos - 1] == '.')) continue;
        SpanMatch m;
        std::size_t end_pos = 0;
        if (scan_dash_pair(text, pos, m, end_pos)) {
            if (!require_seconds || followed_by_seconds(text, end_pos)) return m;
        }
    }
    return std::nullopt;
}

// Grammar pattern 2: "A to B seconds".
std::optional<SpanMatch> find_to_seconds_form(std::string_view text) {
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        if (!is_digit(text[pos])) continue;
        if (pos > 0 && (is_word_char(text[pos - 1]) || text[pos - 1] == '.')) continue;
        std::size_t p = pos;
        double a = 0.0, b = 0.0;
        if (!scan_number(text, p, a)) continue;
        skip_spaces(text, p);
        if (!scan_word_ci(text, p, "to")) continue;
        skip_spaces(text, p);
        if (!scan_number(text, p, b)) continue;
        if (followed_by_seconds(text, p)) return SpanMatch{a, b};
    }
    return std::nullopt;
}

// Grammar pattern 3: "from A to B".
std::optional<SpanMatch> find_from_to_form(std::string_view text) {
    for (std::size_t pos = 0; pos + 4 <= text.size(); ++pos) {
        std::size_t p = pos;
        if (!scan_word_ci(text, p, "from")) continue;
        skip_spaces(text, p);
        double a = 0.0, b = 0.0;
        if (!scan_number(text, p, a)) continue;
        skip_spaces(text, p);
        if (!scan_word_ci(text, p, "to")) continue;
        skip_spaces(text, p);
        if (!scan_number(text, p, b)) continue;
        return SpanMatch{a, b};
    }
    return std::nullopt;
}

std::optional<SpanMatch> extract_span(std::string_view region) {
    if (auto m = find_dash_form(region, /*require_seconds=*/true)) return m;
    if (auto m = find_to_seconds_form(region)) return m;
    if (auto m = find_from_to_form(region)) return m;
    return find_dash_form(region, /*require_seconds=*/false);
}

// Earliest whole-word "yes"/"no" win, case-insensitive.
std::optional<bool> extract_verdict(std::string_view region) {
    for (std::size_t pos = 0; pos < region.size(); ++pos) {
        std::size_t p = pos;
        if (scan_word_ci(region, p, "yes")) return true;
        p = pos;
        if (scan_word_ci(region, p, "no")) return false;
    }
    return std::nullopt;
}

struct BlockLayout {
    bool well_formed = false;
    std::string_view think;
    std::string_view answer;
    bool has_answer_block = false;
};

BlockLayout locate_blocks(std::string_view text) {
    BlockLayout out;
    const std::size_t to = text.find(kThinkOpen);
    const std::size_t tc = text.find(kThinkClose);
    const std::size_t ao = text.find(kAnswerOpen);
    const std::size_t ac = text.find(kAnswerClose);
    // No open tag is a substring of its close tag (they differ at the '/'),
    // so plain substring counting is unambiguous.
    const bool once_each = count_occurrences(text, kThinkOpen) == 1 &&
                           count_occurrences(text, kThinkClose) == 1 &&
                           count_occurrences(text, kAnswerOpen) == 1 &&
                           count_occurrences(text, kAnswerClose) == 1;
    if (once_each && to != std::string_view::npos && tc != std::string_view::npos &&
        ao != std::string_view::npos && ac != std::string_view::npos &&
        to < tc && tc + kThinkClose.size() <= ao && ao < ac) {
        out.well_formed = true;
        out.think = text.substr(to + kThinkOpen.size(), tc - (to + kThinkOpen.size()));
        out.answer = text.substr(ao + kAnswerOpen.size(), ac - (ao + kAnswerOpen.size()));
        out.has_answer_block = true;
        return out;
    }
    // Degraded: a lone, ordered answer block still narrows the verdict scan
    // region even when the think block is broken.
    if (ao != std::string_view::npos && ac != std::string_view::npos && ao < ac &&
        count_occurrences(text, kAnswerOpen) == 1 && count_occurrences(text, kAnswerClose) == 1) {
        out.answer = text.substr(ao + kAnswerOpen.size(), ac - (ao + kAnswerOpen.size()));
        out.has_answer_block = true;
    }
    return out;
}

}  // namespace

const char* to_string(TaskKind task) {
    return task == TaskKind::Verification ? "verification" : "grounding";
}

const char* to_string(ParseStatus status) {
    switch (status) {
        case ParseStatus::WellFormed: return "well_formed";
        case ParseStatus::AnswerOnly: return "answer_only";
        case ParseStatus::Malformed: return "malformed";
    }
    return "malformed";
}

ParsedResponse parse_response(std::string_view raw, TaskKind task) {
    ParsedResponse out;
    const BlockLayout blocks = locate_blocks(raw);
    if (blocks.well_formed) {
        out.think = std::string(blocks.think);
        out.answer = std::string(blocks.answer);
    } else if (blocks.has_answer_block) {
        out.answer = std::string(blocks.answer);
    }

    if (task == TaskKind::Grounding) {
        // Full text unless the block structure is intact.
        const std::string_view region = blocks.well_formed ? blocks.answer : raw;
        if (auto m = extract_span(region)) {
            double a = m->a, b = m->b;
            if (a > b) {
                std::swap(a, b);
                out.span_repaired = true;
            }
            out.grounding_span = TimeInterval{a, b};
        }
    } else {
        const std::string_view region = blocks.has_answer_block ? blocks.answer : raw;
        out.verification_answer = extract_verdict(region);
    }

    const bool has_answer = out.grounding_span.has_value() || out.verification_answer.has_value();
    out.parse_status = blocks.well_formed ? ParseStatus::WellFormed
                       : has_answer       ? ParseStatus::AnswerOnly
                                          : ParseStatus::Malformed;
    return out;
}

RawResponse render_response(std::string_view think, std::string_view answer) {
    static constexpr std::array<std::string_view, 4> kTags = {kThinkOpen, kThinkClose,
                                                              kAnswerOpen, kAnswerClose};
    for (const auto tag : kTags) {
        if (think.find(tag) != std::string_view::npos ||
            answer.find(tag) != std::string_view::npos) {
            throw ContractError("render_response: block contains a delimiter tag");
        }
    }
    std::string out;
    out.reserve(think.size() + answer.size() + kThinkOpen.size() + kThinkClose.size() +
                kAnswerOpen.size() + kAnswerClose.size());
    out.append(kThinkOpen).append(think).append(kThinkClose);
    out.append(kAnswerOpen).append(answer).append(kAnswerClose);
    return out;
}

}  // namespace viewcon
