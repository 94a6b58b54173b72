#include "viewcon/rewards.hpp"

namespace viewcon {

void require_valid(const ReferenceTarget& ref, const char* who) {
    if (ref.task == TaskKind::Grounding) {
        if (!ref.gt_span || ref.gt_answer) {
            throw ContractError(std::string(who) +
                                ": grounding reference needs gt_span and no gt_answer");
        }
        require_valid(*ref.gt_span, who);
    } else {
        if (!ref.gt_answer || ref.gt_span) {
            throw ContractError(std::string(who) +
                                ": verification reference needs gt_answer and no gt_span");
        }
    }
}

double accuracy_reward(const ParsedResponse& response, const ReferenceTarget& ref) {
    require_valid(ref, "accuracy_reward");
    if (ref.task == TaskKind::Grounding) {
        if (!response.grounding_span) return 0.0;
        return tiou(*ref.gt_span, *response.grounding_span);
    }
    if (!response.verification_answer) return 0.0;
    return *response.verification_answer == *ref.gt_answer ? 1.0 : 0.0;
}

namespace {

RewardBreakdown assemble(const ParsedResponse& response, const ReferenceTarget& ref,
                         double r_sim, bool judge_skipped, const RewardWeights& w) {
    RewardBreakdown b;
    b.r_form = format_reward(response);
    b.r_acc = accuracy_reward(response, ref);
    b.r_sim = r_sim;
    b.judge_skipped = judge_skipped;
    b.total = w.form * b.r_form + w.acc * b.r_acc + w.sim * b.r_sim;
    return b;
}

}  // namespace

RewardBreakdown total_reward(const ParsedResponse& response, const ReferenceTarget& ref,
                             const ReasoningJudge& judge, const RewardWeights& weights) {
    require_valid(ref, "total_reward");
    if (!ref.reference_reasoning) {
        return assemble(response, ref, 0.0, /*judge_skipped=*/true, weights);
    }
    const JudgeScore score =
        judge_similarity(judge, response.think.value_or(""), *ref.reference_reasoning);
    return assemble(response, ref, score.value, /*judge_skipped=*/false, weights);
}

std::vector<RewardBreakdown> batch_rewards(const std::vector<ParsedResponse>& candidates,
                                           const ReferenceTarget& ref,
                                           const ReasoningJudge& judge,
                                           const RewardWeights& weights) {
    if (candidates.empty()) {
        throw ContractError("batch_rewards: empty candidate list");
    }
    require_valid(ref, "batch_rewards");

    std::vector<RewardBreakdown> out;
    out.reserve(candidates.size());
    if (!ref.reference_reasoning) {
        for (const auto& c : candidates) {
            out.push_back(assemble(c, ref, 0.0, /*judge_skipped=*/true, weights));
        }
        return out;
    }

    std::vector<JudgePair> pairs;
    pairs.reserve(candidates.size());
    for (const auto& c : candidates) {
        pairs.emplace_back(c.think.value_or(""), *ref.reference_reasoning);
    }
    const std::vector<JudgeScore> scores = batch_judge(judge, pairs);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        out.push_back(assemble(candidates[i], ref, scores[i].value,
                               /*judge_skipped=*/false, weights));
    }
    return out;
}

}  // namespace viewcon
