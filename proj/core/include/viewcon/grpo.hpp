#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "viewcon/errors.hpp"
#include "viewcon/rewards.hpp"

namespace viewcon {

/// Tabular softmax policy: one logit row per context, one column per action.
/// pi(a | c) = softmax(logits[c])[a]. Zero-initialized rows are uniform.
class TabularPolicy {
public:
    TabularPolicy(int contexts, int actions);

    int contexts() const noexcept { return contexts_; }
    int actions() const noexcept { return actions_; }
    long parameter_count() const noexcept {
        return static_cast<long>(contexts_) * actions_;
    }

    double logit(int context, int action) const {
        return logits_[index(context, action)];
    }
    void set_logit(int context, int action, double value) {
        logits_[index(context, action)] = value;
    }

    std::span<const double> raw_logits() const noexcept { return logits_; }
    std::span<double> mutable_logits() noexcept { return logits_; }

    /// Numerically stable softmax over the context's row; sums to 1.
    std::vector<double> probabilities(int context) const;

    /// log pi(action | context) without forming the full distribution.
    double log_prob(int context, int action) const;

    /// Inverse-CDF sample using a single 53-bit uniform draw, so sampling is
    /// reproducible across standard library implementations.
    int sample(int context, std::mt19937_64& rng) const;

    /// Argmax action (first maximum wins).
    int greedy(int context) const;

    void require_in_range(int context, int action, const char* who) const;

private:
    std::size_t index(int context, int action) const {
        return static_cast<std::size_t>(context) * actions_ + action;
    }

    int contexts_;
    int actions_;
    std::vector<double> logits_;
};

/// G sampled candidates for one prompt, with everything the surrogate needs.
struct CandidateGroup {
    std::string prompt_id;
    int context = 0;
    std::vector<int> outcomes;         // action index per candidate
    std::vector<double> rewards;
    std::vector<double> new_logprobs;  // log pi_theta(o_i), refreshed per step
    std::vector<double> old_logprobs;  // log pi_theta_old(o_i)
    std::vector<double> advantages;    // filled by standardization

    std::size_t size() const noexcept { return outcomes.size(); }
};

struct GrpoConfig {
    int group_size = 8;               // G
    double beta = 0.04;               // KL regularization strength
    double advantage_epsilon = 1e-8;  // std guard for standardization
    double learning_rate = 0.05;      // tabular-scale ascent step
    int iterations = 500;
    std::uint64_t seed = 0;
    std::optional<double> ratio_clip; // PPO-style clip range; off by default
};

void require_valid(const GrpoConfig& cfg, const char* who);

/// (r_i - mean) / std with the population (divide-by-G) standard deviation.
/// Groups with std below epsilon get all-zero advantages, which makes the
/// singleton group well-defined.
std::vector<double> standardize_group(const std::vector<double>& rewards, double epsilon);

/// Standardize group.rewards into group.advantages.
void fill_advantages(CandidateGroup& group, double epsilon);

/// sum_i exp(new_logprob_i - old_logprob_i) * advantage_i. Advantages are
/// constants with respect to theta.
double surrogate_objective(const CandidateGroup& group);

/// Exact KL(pi_policy(.|context) || pi_ref(.|context)) for tabular policies.
double kl_divergence(const TabularPolicy& policy, const TabularPolicy& ref, int context);

struct StepDiagnostics {
    double objective = 0.0;    // mean surrogate - beta * mean KL
    double mean_kl = 0.0;
    double mean_reward = 0.0;
    double grad_norm = 0.0;
};

/// One ascent step on mean over groups of [surrogate - beta * KL at the
/// group's context], using the analytic softmax gradient. Refreshes each
/// group's new_logprobs at the pre-step policy. Advantages must be filled.
StepDiagnostics grpo_step(TabularPolicy& policy, const TabularPolicy& old_policy,
                          const TabularPolicy& ref_policy,
                          std::vector<CandidateGroup>& groups, const GrpoConfig& cfg);

struct GradientCheckResult {
    double max_rel_error = 0.0;
    long worst_parameter = -1;
};

/// Central finite differences (h = 1e-6) on every logit of the step
/// objective versus the analytic gradient. Guarded to <= 10,000 parameters.
/// Relative error uses |analytic - numeric| / (|numeric| + 1e-8).
GradientCheckResult gradient_check(const TabularPolicy& policy,
                                   const TabularPolicy& old_policy,
                                   const TabularPolicy& ref_policy,
                                   const std::vector<CandidateGroup>& groups,
                                   const GrpoConfig& cfg);

/// One prompt the environment wants rolled out. `payload` is opaque to the
/// engine; environments use it to reconstruct the episode deterministically.
struct Prompt {
    std::string prompt_id;
    int context = 0;
    std::int64_t payload = 0;
};

/// Samples the prompts for one training iteration.
using PromptSampler = std::function<std::vector<Prompt>(std::mt19937_64&)>;

/// Scores the G sampled candidate actions for a prompt, in order.
using GroupRewardFn =
    std::function<std::vector<RewardBreakdown>(const Prompt&, const std::vector<int>&)>;

/// Per-iteration means for the reward-curve analyses.
struct TrainStepStats {
    int step = 0;
    double r_form_mean = 0.0;
    double r_acc_mean = 0.0;
    double r_sim_mean = 0.0;
    double total_mean = 0.0;
    double kl_mean = 0.0;
    double objective = 0.0;
};

using RewardCurves = std::vector<TrainStepStats>;

struct TrainResult {
    TabularPolicy policy;
    RewardCurves curves;
};

/// The training loop: snapshot theta_old each iteration, sample prompts,
/// roll out G candidates from theta_old, score, standardize, step.
/// Deterministic given cfg.seed, a deterministic sampler and reward fn.
TrainResult train(const PromptSampler& env, const GroupRewardFn& reward_fn,
                  TabularPolicy policy, const TabularPolicy& reference,
                  const GrpoConfig& cfg);

/// CSV export: step,r_form_mean,r_acc_mean,r_sim_mean,total_mean,kl_mean,objective
std::string reward_curves_csv(const RewardCurves& curves);

}  // namespace viewcon
