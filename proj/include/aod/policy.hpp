#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "aod/schema.hpp"

namespace aod {

struct EditAction {
  enum class Kind { template_edit, full_rewrite };
  Kind kind = Kind::template_edit;
  size_t template_index = 0;   // template_edit
  std::string rewrite_text;    // full_rewrite
  double log_prob = 0.0;       // defined only for template_edit

  static EditAction make_template(size_t index, double log_prob);
  static EditAction make_rewrite(std::string text);
};

struct EditTemplate {
  enum class Op { append, prepend, replace_line };
  std::string name;
  Op op = Op::append;
  std::string payload;        // append / prepend text ("" for the no-op)
  std::string match_prefix;   // replace_line: line selector
  std::string replacement;    // replace_line: new line (appended if no match)
};

// Discretized edit space for the verifiable RL path. Index 0 is always the
// no-op edit.
class EditCatalog {
 public:
  static constexpr size_t kNoOpIndex = 0;

  static EditCatalog defaults(const SchemaSpec& schema);
  static EditCatalog from_json(const json& doc);
  static EditCatalog load(const std::string& path);
  json to_json() const;

  size_t size() const { return templates_.size(); }
  const EditTemplate& at(size_t i) const { return templates_.at(i); }
  std::string apply(size_t i, const std::string& text) const;

 private:
  void check() const;
  std::vector<EditTemplate> templates_;
};

inline constexpr size_t kHistoryFeatureCount = 8;

struct HistoryEntry {
  std::string prompt_id;
  double reward = 0.0;
  std::array<double, 5> subrewards{};
  double pass_fraction = 0.0;
  std::string feedback;
  bool valid = false;
};

struct HistorySummary {
  std::vector<HistoryEntry> window;            // length <= W, oldest first
  std::array<double, kHistoryFeatureCount> features{};
};

// Deterministic feature extraction + truncation to the last W entries.
// Features: last reward, reward delta, the five last subrewards, validity.
HistorySummary summarize_history(const std::vector<HistoryEntry>& entries, size_t window_size);

struct PolicyParams {
  // catalog_size base logits followed by feature biases. The feature-bias
  // block shifts every non-no-op logit, steering edit-vs-no-op.
  std::vector<double> theta;
  size_t catalog_size = 0;
  double baseline = 0.0;
  double baseline_decay = 0.9;
  long long step = 0;

  static PolicyParams zeros(size_t catalog_size);
  json to_json() const;  // checkpoint {theta, baseline, step}
  static PolicyParams from_json(const json& doc, size_t catalog_size);
};

std::vector<double> policy_logits(const PolicyParams& params,
                                  const std::array<double, kHistoryFeatureCount>& features);
std::vector<double> softmax(const std::vector<double>& logits);
double policy_log_prob(const PolicyParams& params,
                       const std::array<double, kHistoryFeatureCount>& features,
                       size_t action);

EditAction sample_edit(const PolicyParams& params, const HistorySummary& history,
                       std::mt19937_64& rng);

// P_{t+1} = U(P_t, dP): deterministic, parent/iteration bookkeeping included.
Prompt apply_edit(const Prompt& prompt, const EditAction& action,
                  const EditCatalog& catalog,
                  std::optional<std::string> new_id = std::nullopt);

double compute_advantage(const std::array<double, 5>& subrewards,
                         const std::array<double, 5>& weights, double baseline);

double update_baseline(double baseline, double reward, double decay);

struct TrajectoryStep {
  EditAction action;  // full_rewrite steps are off-policy and skipped
  std::array<double, kHistoryFeatureCount> features{};
  double advantage = 0.0;
};

// Clipped-surrogate objective with KL penalty against old_params, averaged
// over the template steps of the trajectory.
double ppo_surrogate(const PolicyParams& params, const PolicyParams& old_params,
                     const std::vector<TrajectoryStep>& trajectory, double epsilon,
                     double kl_coeff);

std::vector<double> ppo_gradient(const PolicyParams& params,
                                 const PolicyParams& old_params,
                                 const std::vector<TrajectoryStep>& trajectory,
                                 double epsilon, double kl_coeff);

// One ascent step on the clipped surrogate. Throws DegenerateTrajectory when
// every step is a full rewrite.
PolicyParams ppo_update(const PolicyParams& params, const PolicyParams& old_params,
                        const std::vector<TrajectoryStep>& trajectory, double epsilon,
                        double kl_coeff, double step_size);

struct OptimizerReply {
  std::string optimized_prompt;
  std::string prediction_text;
};

std::string build_optimizer_prompt(const std::vector<json>& seed_examples,
                                   const SchemaSpec& schema,
                                   const std::string& last_feedback);

// Splits an optimizer-agent reply into the rewritten prompt block and the
// performance-prediction block (delimited by the Strengths heading).
OptimizerReply parse_optimizer_output(const std::string& text);

struct PolicyDefaults {
  double step_size = 0.05;   // eta
  double clip_epsilon = 0.2;
  double kl_coeff = 0.01;
  double baseline_decay = 0.9;
  size_t history_window = 5;
};

}  // namespace aod
