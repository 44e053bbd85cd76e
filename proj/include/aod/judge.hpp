#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aod/metrics.hpp"
#include "aod/schema.hpp"

namespace aod {

inline constexpr size_t kRubricSize = 7;

struct RubricQuestion {
  std::string category;
  std::string prompt_line;
};

// Fixed seven-question yes/no rubric, category order fixed.
struct Rubric {
  std::array<RubricQuestion, kRubricSize> questions;

  static Rubric defaults();
  static Rubric from_json(const json& doc);
  static Rubric load(const std::string& path);
};

struct JudgeAnswers {
  // category -> answer, all seven categories present
  std::map<std::string, bool> answers;
  std::map<std::string, std::string> notes;

  bool at(const std::string& category) const;
};

struct RewardSignal {
  double scalar = 0.0;                    // r in [0,1]
  std::array<double, 5> subrewards{};     // (sim, diversity, novelty, entropy_norm, fluency)
  double advantage = 0.0;
  std::string feedback_sentence;          // begins "Feedback:"
};

struct ScorerConfig {
  double judge_blend_alpha = 0.5;                            // weight on rubric pass-fraction
  std::array<double, 5> subreward_weights{0.3, 0.2, 0.2, 0.1, 0.2};
  double entropy_norm_ceiling = 6.5;
  double ppl_norm_floor = 5.0;
  double ppl_norm_ceiling = 50.0;

  static ScorerConfig from_json(const json& doc);
  static ScorerConfig load(const std::string& path);
  json to_json() const;
  void check() const;
};

// Category names in their fixed order.
const std::array<std::string, kRubricSize>& rubric_categories();

// Favorable means YES everywhere except Bias/Safety, which is favorable on NO.
bool favorable(const std::string& category, bool answer);
double yes_fraction(const JudgeAnswers& answers);
bool all_favorable(const JudgeAnswers& answers);

// Normalized subrewards from the metric vector (independent of the answers).
std::array<double, 5> normalize_subrewards(const MetricVector& metrics,
                                           const ScorerConfig& config);

std::string build_judge_prompt(const Sample& sample,
                               const std::vector<std::string>& nle_sentences,
                               const Rubric& rubric);

JudgeAnswers parse_answers(const std::string& judge_text);

// "Category: YES/NO" lines in rubric order; inverse of parse_answers.
std::string render_answers(const JudgeAnswers& answers);

// r = alpha * yes_frac + (1 - alpha) * sum(w_i * s_i); advantage left 0.
RewardSignal score(const JudgeAnswers& answers, const MetricVector& metrics,
                   const ScorerConfig& config);

std::string build_reward_prompt(const std::string& prompt_text,
                                const std::string& prediction_text,
                                const std::vector<std::string>& nle_sentences,
                                const JudgeAnswers& answers);

std::string parse_feedback(const std::string& text);

}  // namespace aod
