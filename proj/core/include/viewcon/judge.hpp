#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "viewcon/errors.hpp"

namespace viewcon {

enum class JudgeKind {
    Remote,         // LLM judge over an HTTP chat-completions endpoint
    LexicalOracle,  // deterministic unigram-F1 stand-in, used as test oracle
};

/// Configuration for the reasoning-similarity judge.
///
/// Remote judges send one user message at temperature 0 and read the first
/// decimal score from the reply. The lexical oracle is dependency-free and
/// deterministic; it is NOT a faithful stand-in for LLM judgment quality,
/// only for plumbing and property tests.
struct ReasoningJudge {
    JudgeKind kind = JudgeKind::LexicalOracle;
    std::string endpoint;    // full URL, e.g. http://host:8000/v1/chat/completions
    std::string model_name;
    std::string api_key;     // sent as "Authorization: Bearer <key>" when set
    std::string prompt_template =
        "Rate how closely the candidate reasoning matches the reference "
        "reasoning for the same video moment. Reply with a single decimal "
        "similarity score between 0 and 1 and nothing else.\n"
        "Candidate: {candidate}\n"
        "Reference: {reference}";
    double timeout_seconds = 30.0;
    int max_retries = 2;      // retries after the first attempt
    int max_concurrency = 4;  // in-flight request budget for batches
    std::function<void(std::string_view)> debug_log;  // bodies, key redacted
};

/// Builds a Remote judge from JUDGE_ENDPOINT / JUDGE_MODEL / JUDGE_API_KEY,
/// with explicit arguments taking precedence over the environment.
ReasoningJudge remote_judge_from_env(std::string endpoint = {}, std::string model = {},
                                     std::string api_key = {});

struct JudgeScore {
    double value = 0.0;              // always in [0, 1]
    std::optional<std::string> raw_reply;
    JudgeKind source = JudgeKind::LexicalOracle;
    bool rescaled = false;           // reply looked like a 0-100 score and was divided by 100
};

/// Unigram-overlap F1 between whitespace-lowercased token multisets.
/// Either side empty scores 0.
double lexical_unigram_f1(std::string_view a, std::string_view b);

/// Score one (candidate, reference) pair. Reference must be non-empty.
///
/// Remote judges retry up to max_retries and throw JudgeError on exhaustion
/// or an unparseable reply (raw reply attached). Replies in (1, 100] are
/// treated as percentage scores, divided by 100 and flagged.
JudgeScore judge_similarity(const ReasoningJudge& judge, std::string_view candidate,
                            std::string_view reference);

struct JudgeFailure {
    std::size_t index = 0;
    std::string message;
};

/// Per-pair outcome for callers that want to skip failures instead of aborting.
struct BatchJudgeOutcome {
    std::vector<std::optional<JudgeScore>> scores;  // index-aligned with input
    std::vector<JudgeFailure> failures;
};

using JudgePair = std::pair<std::string, std::string>;  // (candidate, reference)

/// Order-preserving batch scoring. Remote judges issue requests with at most
/// judge.max_concurrency in flight; results are matched to inputs by index,
/// never by arrival order.
BatchJudgeOutcome try_batch_judge(const ReasoningJudge& judge,
                                  const std::vector<JudgePair>& pairs);

/// As try_batch_judge, but throws JudgeError naming the first failed index
/// if any pair failed.
std::vector<JudgeScore> batch_judge(const ReasoningJudge& judge,
                                    const std::vector<JudgePair>& pairs);

}  // namespace viewcon
