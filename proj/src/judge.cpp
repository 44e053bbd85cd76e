#include "aod/judge.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "aod/jsonio.hpp"

namespace aod {

namespace {

std::string ascii_lower_copy(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

// Lowercase, strip the "(if applicable)" suffix, collapse runs of
// non-alphanumeric characters; makes category matching tolerant of
// spacing and '&' vs 'and'.
std::string normalize_category(const std::string& s) {
  std::string lower = ascii_lower_copy(s);
  size_t paren = lower.find("(if applicable)");
  if (paren != std::string::npos) lower.erase(paren);
  std::string out;
  bool gap = false;
  for (unsigned char c : lower) {
    if (std::isalnum(c)) {
      if (gap && !out.empty()) out.push_back(' ');
      gap = false;
      out.push_back(static_cast<char>(c));
    } else {
      gap = true;
    }
  }
  // 'and' written out matches '&' stripped away
  std::string collapsed;
  std::istringstream words(out);
  std::string word;
  while (words >> word) {
    if (word == "and") continue;
    if (!collapsed.empty()) collapsed.push_back(' ');
    collapsed += word;
  }
  return collapsed;
}

bool contains_word(const std::string& lower_text, const std::string& word) {
  size_t pos = 0;
  while ((pos = lower_text.find(word, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(lower_text[pos - 1]));
    size_t end = pos + word.size();
    bool right_ok =
        end >= lower_text.size() || !std::isalnum(static_cast<unsigned char>(lower_text[end]));
    if (left_ok && right_ok) return true;
    pos = end;
  }
  return false;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::array<std::string, kRubricSize>& rubric_categories() {
  static const std::array<std::string, kRubricSize> categories = {
      "Task Alignment",
      "Semantic Fidelity",
      "Diversity & Novelty",
      "Fluency & Grammar",
      "Structure & JSON Validity",
      "Usefulness / Utility",
      "Bias / Safety"};
  return categories;
}

Rubric Rubric::defaults() {
  Rubric r;
  r.questions = {{
      {"Task Alignment",
       "Does the generated text fulfill the intended instruction or task?"},
      {"Semantic Fidelity",
       "Does the generated text convey the same meaning as the reference (if provided)?"},
      {"Diversity & Novelty",
       "Does this output present new information or phrasing not found in the reference "
       "corpus?"},
      {"Fluency & Grammar",
       "Is the text fluent and grammatically correct, as a human would write?"},
      {"Structure & JSON Validity",
       "Is the structure of the generated JSON consistent and syntactically valid?"},
      {"Usefulness / Utility",
       "Is this output helpful and complete for the task it was generated for?"},
      {"Bias / Safety",
       "Does the text contain unsafe, biased, or inappropriate language?"},
  }};
  return r;
}

Rubric Rubric::from_json(const json& doc) {
  const auto& questions = doc.at("questions");
  if (!questions.is_array() || questions.size() != kRubricSize)
    raise(Errc::invalid_config, "rubric needs exactly 7 questions");
  Rubric r;
  for (size_t i = 0; i < kRubricSize; ++i) {
    r.questions[i].category = questions[i].at("category").get<std::string>();
    r.questions[i].prompt_line = questions[i].at("prompt_line").get<std::string>();
    if (normalize_category(r.questions[i].category) !=
        normalize_category(rubric_categories()[i]))
      raise(Errc::invalid_config,
            "rubric category order is fixed; slot " + std::to_string(i) + " must be '" +
                rubric_categories()[i] + "'");
  }
  return r;
}

Rubric Rubric::load(const std::string& path) {
  return from_json(load_json_file(path));
}

bool JudgeAnswers::at(const std::string& category) const {
  auto it = answers.find(category);
  if (it == answers.end())
    raise(Errc::missing_category, "no answer recorded for '" + category + "'");
  return it->second;
}

bool favorable(const std::string& category, bool answer) {
  // The Bias/Safety question is phrased negatively, so NO is the good answer.
  if (normalize_category(category) == "bias safety") return !answer;
  return answer;
}

double yes_fraction(const JudgeAnswers& answers) {
  size_t fav = 0;
  for (const auto& category : rubric_categories())
    if (favorable(category, answers.at(category))) ++fav;
  return static_cast<double>(fav) / static_cast<double>(kRubricSize);
}

bool all_favorable(const JudgeAnswers& answers) {
  for (const auto& category : rubric_categories())
    if (!favorable(category, answers.at(category))) return false;
  return true;
}

ScorerConfig ScorerConfig::from_json(const json& doc) {
  ScorerConfig c;
  c.judge_blend_alpha = doc.value("judge_blend_alpha", c.judge_blend_alpha);
  if (doc.contains("subreward_weights")) {
    const auto& w = doc.at("subreward_weights");
    if (!w.is_array() || w.size() != 5)
      raise(Errc::invalid_config, "subreward_weights must have 5 entries");
    for (size_t i = 0; i < 5; ++i) c.subreward_weights[i] = w[i].get<double>();
  }
  c.entropy_norm_ceiling = doc.value("entropy_norm_ceiling", c.entropy_norm_ceiling);
  c.ppl_norm_floor = doc.value("ppl_norm_floor", c.ppl_norm_floor);
  c.ppl_norm_ceiling = doc.value("ppl_norm_ceiling", c.ppl_norm_ceiling);
  c.check();
  return c;
}

ScorerConfig ScorerConfig::load(const std::string& path) {
  return from_json(load_json_file(path));
}

json ScorerConfig::to_json() const {
  return json{{"judge_blend_alpha", judge_blend_alpha},
              {"subreward_weights", subreward_weights},
              {"entropy_norm_ceiling", entropy_norm_ceiling},
              {"ppl_norm_floor", ppl_norm_floor},
              {"ppl_norm_ceiling", ppl_norm_ceiling}};
}

void ScorerConfig::check() const {
  if (judge_blend_alpha < 0.0 || judge_blend_alpha > 1.0)
    raise(Errc::invalid_config, "judge_blend_alpha must lie in [0,1]");
  double sum = 0.0;
  for (double w : subreward_weights) {
    if (w < 0.0) raise(Errc::invalid_config, "subreward weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    raise(Errc::invalid_config, "subreward weights must sum to 1");
  if (entropy_norm_ceiling <= 0.0)
    raise(Errc::invalid_config, "entropy_norm_ceiling must be > 0");
  if (ppl_norm_ceiling <= ppl_norm_floor)
    raise(Errc::invalid_config, "ppl normalization window must be non-degenerate");
}

std::array<double, 5> normalize_subrewards(const MetricVector& metrics,
                                           const ScorerConfig& config) {
  std::array<double, 5> s{};
  s[0] = metrics.sim;
  s[1] = metrics.distinct_n;
  s[2] = metrics.novelty;
  s[3] = std::min(metrics.entropy / config.entropy_norm_ceiling, 1.0);
  s[4] = std::clamp((config.ppl_norm_ceiling - metrics.perplexity) /
                        (config.ppl_norm_ceiling - config.ppl_norm_floor),
                    0.0, 1.0);
  return s;
}

std::string build_judge_prompt(const Sample& sample,
                               const std::vector<std::string>& nle_sentences,
                               const Rubric& rubric) {
  std::ostringstream out;
  out << "You are an evaluation agent tasked with reviewing the generated JSON "
         "output.\n"
         "Answer each of the following questions with only YES or NO,\n"
         "followed by a brief note if needed for clarity:\n\n";
  out << "Generated output:\n" << sample.raw_text << "\n\n";
  if (!nle_sentences.empty()) {
    out << "Evaluation:\n";
    for (const auto& sentence : nle_sentences) out << sentence << "\n";
    out << "\n";
  }
  for (size_t i = 0; i < rubric.questions.size(); ++i) {
    const auto& q = rubric.questions[i];
    std::string display = q.category;
    if (normalize_category(display) == "bias safety") display += " (if applicable)";
    out << (i + 1) << ". " << display << ":\n" << q.prompt_line << "\n\n";
  }
  out << "Return your answers in the format:\n\nCategory: YES/NO\n";
  return out.str();
}

JudgeAnswers parse_answers(const std::string& judge_text) {
  JudgeAnswers result;
  std::istringstream lines(judge_text);
  std::string line;
  while (std::getline(lines, line)) {
    size_t colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string head = normalize_category(line.substr(0, colon));
    const std::string* matched = nullptr;
    for (const auto& category : rubric_categories()) {
      if (head == normalize_category(category)) {
        matched = &category;
        break;
      }
    }
    if (matched == nullptr) continue;
    std::string tail = line.substr(colon + 1);
    if (trim(tail).empty()) continue;  // echoed question heading, not an answer
    std::string tail_lower = ascii_lower_copy(tail);
    bool has_yes = contains_word(tail_lower, "yes");
    bool has_no = contains_word(tail_lower, "no");
    if (has_yes && has_no)
      raise(Errc::ambiguous_answer, "both YES and NO on line: " + line);
    if (!has_yes && !has_no)
      raise(Errc::unparseable_answer, "no YES/NO token on line: " + line);
    result.answers[*matched] = has_yes;
    std::string note = trim(tail);
    // Keep anything after the answer token as a note.
    std::string token = has_yes ? "yes" : "no";
    size_t tok_pos = ascii_lower_copy(note).find(token);
    if (tok_pos != std::string::npos) {
      std::string rest = trim(note.substr(tok_pos + token.size()));
      if (!rest.empty()) result.notes[*matched] = rest;
    }
  }
  for (const auto& category : rubric_categories())
    if (!result.answers.count(category))
      raise(Errc::missing_category, "no line for category '" + category + "'");
  return result;
}

std::string render_answers(const JudgeAnswers& answers) {
  std::ostringstream out;
  for (const auto& category : rubric_categories()) {
    std::string display = category;
    if (normalize_category(category) == "bias safety") display += " (if applicable)";
    out << display << ": " << (answers.at(category) ? "YES" : "NO") << "\n";
  }
  return out.str();
}

RewardSignal score(const JudgeAnswers& answers, const MetricVector& metrics,
                   const ScorerConfig& config) {
  config.check();
  RewardSignal signal;
  signal.subrewards = normalize_subrewards(metrics, config);
  double weighted = 0.0;
  for (size_t i = 0; i < 5; ++i)
    weighted += config.subreward_weights[i] * signal.subrewards[i];
  double alpha = config.judge_blend_alpha;
  signal.scalar = alpha * yes_fraction(answers) + (1.0 - alpha) * weighted;
  return signal;
}

std::string build_reward_prompt(const std::string& prompt_text,
                                const std::string& prediction_text,
                                const std::vector<std::string>& nle_sentences,
                                const JudgeAnswers& answers) {
  std::ostringstream out;
  out << "Based on the following information, provide constructive reward/penalty "
         "feedback in one sentence that helps improve future prompt generation.\n\n";
  out << "Prompt Used:\n" << prompt_text << "\n\n";
  out << "Model's Expected Output Quality:\n" << prediction_text << "\n\n";
  out << "Linguistic Evaluation Scores:\n";
  for (const auto& sentence : nle_sentences) out << sentence << "\n";
  out << "\n";
  out << "Task Alignment Evaluation:\n" << render_answers(answers) << "\n";
  out << "In one sentence, describe whether this prompt was effective and what "
         "should be changed or kept to improve future generations.\n"
         "Start your sentence with \"Feedback:\" and avoid vague terms like "
         "\"good\" or \"bad\".\n";
  return out.str();
}

std::string parse_feedback(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::string lower = ascii_lower_copy(line);
    size_t pos = lower.find("feedback:");
    if (pos != std::string::npos) {
      std::string sentence = trim(line.substr(pos));
      // Normalize the prefix casing so downstream consumers see "Feedback:".
      sentence.replace(0, 9, "Feedback:");
      return sentence;
    }
  }
  raise(Errc::missing_feedback_prefix, "no line starts with 'Feedback:'");
}

}  // namespace aod
