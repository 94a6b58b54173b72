#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "viewcon/temporal.hpp"

namespace viewcon {

/// The two temporal understanding tasks.
enum class TaskKind {
    Verification,  // binary yes/no: does the event occur in the given moment
    Grounding,     // predict the [start, end] moment matching the query
};

const char* to_string(TaskKind task);

/// Raw model output; any text is accepted.
using RawResponse = std::string;

enum class ParseStatus {
    WellFormed,  // both <think> and <answer> blocks, in order, exactly once each
    AnswerOnly,  // blocks broken, but a task answer was still extractable
    Malformed,   // nothing extractable
};

const char* to_string(ParseStatus status);

/// Structured decomposition of a raw response.
///
/// parse_status describes the block structure only; the answer fields
/// describe extraction and may be empty even for a WellFormed response.
/// An unanswerable response is data, never an exception.
struct ParsedResponse {
    std::optional<std::string> think;
    std::optional<std::string> answer;
    std::optional<TimeInterval> grounding_span;
    std::optional<bool> verification_answer;
    ParseStatus parse_status = ParseStatus::Malformed;
    bool span_repaired = false;  // parsed span had start > end and was swapped
};

/// Parse a raw response for the given task.
///
/// Block structure: literal, case-sensitive tag pairs <think>...</think>
/// <answer>...</answer>. WellFormed iff both blocks are present, in order,
/// non-overlapping and appear exactly once each; surrounding text does not
/// affect the status.
///
/// Grounding answers follow a fixed grammar, tried in priority order, first
/// match wins:
///   1. "A - B seconds"
///   2. "A to B seconds"
///   3. "from A to B"
///   4. bare "A - B"
/// with A, B unsigned decimals in seconds. Reversed pairs are swapped and
/// flagged repaired. The span is taken from the answer block when WellFormed,
/// otherwise from the full text.
///
/// Verification answers are the earliest whole-word "yes"/"no"
/// (case-insensitive) in the answer block, or in the full text when there is
/// no answer block.
ParsedResponse parse_response(std::string_view raw, TaskKind task);

/// Eq.-style binary format reward: 1 iff the response is WellFormed.
inline double format_reward(const ParsedResponse& p) {
    return p.parse_status == ParseStatus::WellFormed ? 1.0 : 0.0;
}

/// Render the canonical <think>...</think><answer>...</answer> response.
/// Throws ContractError if either block contains one of the delimiter tags;
/// otherwise the result round-trips through parse_response to WellFormed
/// with both blocks recovered verbatim.
RawResponse render_response(std::string_view think, std::string_view answer);

}  // namespace viewcon
