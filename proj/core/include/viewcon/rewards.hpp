#pragma once

#include <optional>
#include <string>
#include <vector>

#include "viewcon/judge.hpp"
#include "viewcon/response.hpp"
#include "viewcon/temporal.hpp"

namespace viewcon {

/// Ground truth one candidate is scored against. Exactly the task-matching
/// field must be present: gt_span for grounding, gt_answer for verification.
struct ReferenceTarget {
    TaskKind task = TaskKind::Grounding;
    std::optional<TimeInterval> gt_span;
    std::optional<bool> gt_answer;
    std::optional<std::string> reference_reasoning;  // absent -> r_sim skipped
};

void require_valid(const ReferenceTarget& ref, const char* who);

/// Per-component weights for the total reward. Defaults reproduce the plain
/// unweighted sum; nonzero overrides are ablation knobs.
struct RewardWeights {
    double form = 1.0;
    double acc = 1.0;
    double sim = 1.0;
};

/// Per-candidate reward components. With default weights,
/// total = r_form + r_acc + r_sim exactly and 0 <= total <= 3.
struct RewardBreakdown {
    double r_form = 0.0;  // {0, 1}
    double r_acc = 0.0;   // [0, 1]
    double r_sim = 0.0;   // [0, 1]
    double total = 0.0;
    bool judge_skipped = false;  // no reference reasoning; r_sim forced to 0
};

/// Task-unified accuracy reward: grounding -> tIoU against the ground-truth
/// span (0 when no span parsed), verification -> exact indicator against the
/// expected answer (0 when unparsed).
double accuracy_reward(const ParsedResponse& response, const ReferenceTarget& ref);

/// Assemble the full breakdown for one candidate. r_sim scores the think
/// block against the reference reasoning; when the reference is absent the
/// component is 0 and the breakdown is flagged judge-skipped. Judge failures
/// propagate as JudgeError, never as a silent 0.
RewardBreakdown total_reward(const ParsedResponse& response, const ReferenceTarget& ref,
                             const ReasoningJudge& judge,
                             const RewardWeights& weights = {});

/// Order-preserving element-wise total_reward over a candidate group. Judge
/// calls are batched; a judge failure carries the candidate index.
std::vector<RewardBreakdown> batch_rewards(const std::vector<ParsedResponse>& candidates,
                                           const ReferenceTarget& ref,
                                           const ReasoningJudge& judge,
                                           const RewardWeights& weights = {});

}  // namespace viewcon
