#include "aod/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aod {

namespace {
constexpr char kContextSep = '\x1f';
}

// ---- NgramLanguageModel ----

NgramLanguageModel::NgramLanguageModel(int order, double smoothing_alpha)
    : order_(order), alpha_(smoothing_alpha) {
  if (order < 1) raise(Errc::invalid_config, "n-gram order must be >= 1");
  if (smoothing_alpha <= 0) raise(Errc::invalid_config, "smoothing alpha must be > 0");
}

std::string NgramLanguageModel::context_key(
    const std::vector<std::string>& context) const {
  size_t keep = static_cast<size_t>(order_ - 1);
  size_t begin = context.size() > keep ? context.size() - keep : 0;
  std::string key;
  for (size_t i = begin; i < context.size(); ++i) {
    key += context[i];
    key += kContextSep;
  }
  return key;
}

void NgramLanguageModel::fit(const std::vector<std::vector<std::string>>& corpus) {
  std::set<std::string> vocab;
  for (const auto& doc : corpus)
    for (const auto& tok : doc) vocab.insert(tok);
  vocab_.assign(vocab.begin(), vocab.end());
  vocab_set_ = {vocab_.begin(), vocab_.end()};
  for (const auto& doc : corpus) {
    for (size_t i = 0; i < doc.size(); ++i) {
      std::vector<std::string> ctx(doc.begin(), doc.begin() + i);
      std::string key = context_key(ctx);
      ++counts_[key][doc[i]];
      ++context_totals_[key];
    }
  }
}

NgramLanguageModel NgramLanguageModel::uniform(int order,
                                               const std::vector<std::string>& vocab) {
  NgramLanguageModel lm(order, 1.0);
  std::set<std::string> unique(vocab.begin(), vocab.end());
  lm.vocab_.assign(unique.begin(), unique.end());
  lm.vocab_set_ = {lm.vocab_.begin(), lm.vocab_.end()};
  return lm;
}

double NgramLanguageModel::prob(const std::string& token,
                                const std::vector<std::string>& context) const {
  if (vocab_.empty()) raise(Errc::invalid_config, "language model has empty vocabulary");
  std::string key = context_key(context);
  long long numer_count = 0;
  long long total = 0;
  auto ctx_it = counts_.find(key);
  if (ctx_it != counts_.end()) {
    auto tok_it = ctx_it->second.find(token);
    if (tok_it != ctx_it->second.end()) numer_count = tok_it->second;
    total = context_totals_.at(key);
  }
  double v = static_cast<double>(vocab_.size());
  return (static_cast<double>(numer_count) + alpha_) /
         (static_cast<double>(total) + alpha_ * v);
}

double NgramLanguageModel::sequence_log_prob(
    const std::vector<std::string>& tokens) const {
  double log_prob = 0.0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::vector<std::string> ctx(tokens.begin(), tokens.begin() + i);
    log_prob += std::log(prob(tokens[i], ctx));
  }
  return log_prob;
}

double NgramLanguageModel::context_entropy(
    const std::vector<std::string>& context) const {
  double h = 0.0;
  for (const auto& w : vocab_) {
    double p = prob(w, context);
    if (p > 0) h -= p * std::log(p);
  }
  return h;
}

// ---- TfIdfEmbedder ----

void TfIdfEmbedder::fit(const std::vector<std::vector<std::string>>& reference_corpus) {
  std::map<std::string, int> df;
  for (const auto& doc : reference_corpus) {
    std::set<std::string> unique(doc.begin(), doc.end());
    for (const auto& tok : unique) ++df[tok];
  }
  vocabulary_.clear();
  idf_.clear();
  double n_docs = static_cast<double>(reference_corpus.size());
  for (const auto& [tok, count] : df) {
    int idx = static_cast<int>(vocabulary_.size());
    vocabulary_[tok] = idx;
    idf_.push_back(std::log((1.0 + n_docs) / (1.0 + count)) + 1.0);
  }
}

TfIdfEmbedder TfIdfEmbedder::with_unit_idf(const std::vector<std::string>& vocab) {
  TfIdfEmbedder e;
  std::set<std::string> unique(vocab.begin(), vocab.end());
  for (const auto& tok : unique) {
    e.vocabulary_[tok] = static_cast<int>(e.idf_.size());
    e.idf_.push_back(1.0);
  }
  return e;
}

std::map<int, double> TfIdfEmbedder::embed(const std::vector<std::string>& tokens) const {
  std::map<int, double> vec;
  for (const auto& tok : tokens) {
    auto it = vocabulary_.find(tok);
    if (it == vocabulary_.end()) continue;  // out-of-vocabulary tokens drop out
    vec[it->second] += idf_[it->second];
  }
  return vec;
}

double cosine(const std::map<int, double>& a, const std::map<int, double>& b) {
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  double na = 0.0, nb = 0.0;
  for (const auto& [_, v] : a) na += v * v;
  for (const auto& [_, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return 0.0;  // zero vector: defined as 0, not an error
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// ---- training metrics ----

double perplexity(const std::vector<std::string>& tokens, const NgramLanguageModel& lm) {
  if (tokens.empty()) raise(Errc::empty_sequence, "perplexity of empty token sequence");
  double mean_log = lm.sequence_log_prob(tokens) / static_cast<double>(tokens.size());
  return std::exp(-mean_log);
}

double perplexity_from_probs(const std::vector<double>& token_probs) {
  if (token_probs.empty())
    raise(Errc::empty_sequence, "perplexity of empty probability sequence");
  double sum_log = 0.0;
  for (double p : token_probs) sum_log += std::log(p);
  return std::exp(-sum_log / static_cast<double>(token_probs.size()));
}

double similarity(const std::vector<std::string>& sample_tokens,
                  const std::vector<std::vector<std::string>>& reference_samples,
                  const TfIdfEmbedder& embedder) {
  if (reference_samples.empty())
    raise(Errc::empty_reference_set, "similarity needs at least one reference");
  auto sample_vec = embedder.embed(sample_tokens);
  double best = 0.0;
  for (const auto& ref : reference_samples) {
    double c = cosine(sample_vec, embedder.embed(ref));
    best = std::max(best, c);
  }
  return std::clamp(best, 0.0, 1.0);
}

double distinct_n(const std::vector<std::string>& tokens, int n) {
  if (n < 1) raise(Errc::invalid_config, "distinct-n needs n >= 1");
  if (tokens.size() < static_cast<size_t>(n)) return 0.0;
  size_t total = tokens.size() - n + 1;
  NgramSet unique;
  for (size_t i = 0; i < total; ++i)
    unique.emplace(tokens.begin() + i, tokens.begin() + i + n);
  return static_cast<double>(unique.size()) / static_cast<double>(total);
}

double entropy(const std::vector<std::string>& tokens, const NgramLanguageModel* lm) {
  if (tokens.empty()) raise(Errc::empty_sequence, "entropy of empty token sequence");
  if (lm != nullptr) {
    double sum = 0.0;
    for (size_t i = 0; i < tokens.size(); ++i) {
      std::vector<std::string> ctx(tokens.begin(), tokens.begin() + i);
      sum += lm->context_entropy(ctx);
    }
    return sum / static_cast<double>(tokens.size());
  }
  // Empirical fallback: unigram entropy of the token multiset.
  std::map<std::string, long long> counts;
  for (const auto& tok : tokens) ++counts[tok];
  double total = static_cast<double>(tokens.size());
  double h = 0.0;
  for (const auto& [_, c] : counts) {
    double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

NgramSet collect_ngrams(const std::vector<std::string>& tokens, int n) {
  NgramSet out;
  if (n < 1 || tokens.size() < static_cast<size_t>(n)) return out;
  for (size_t i = 0; i + n <= tokens.size(); ++i)
    out.emplace(tokens.begin() + i, tokens.begin() + i + n);
  return out;
}

NgramSet collect_corpus_ngrams(const std::vector<std::vector<std::string>>& corpus,
                               int n) {
  NgramSet out;
  for (const auto& doc : corpus) {
    auto local = collect_ngrams(doc, n);
    out.insert(local.begin(), local.end());
  }
  return out;
}

double novelty(const std::vector<std::string>& tokens, const NgramSet& reference_ngrams,
               int n) {
  if (n < 1) raise(Errc::invalid_config, "novelty needs n >= 1");
  if (tokens.size() < static_cast<size_t>(n)) return 0.0;
  size_t total = tokens.size() - n + 1;
  size_t overlap = 0;
  std::vector<std::string> gram;
  for (size_t i = 0; i < total; ++i) {
    gram.assign(tokens.begin() + i, tokens.begin() + i + n);
    if (reference_ngrams.count(gram)) ++overlap;
  }
  return 1.0 - static_cast<double>(overlap) / static_cast<double>(total);
}

// ---- BLEU ----

namespace {

std::map<std::vector<std::string>, long long> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::map<std::vector<std::string>, long long> counts;
  if (tokens.size() < static_cast<size_t>(n)) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[{tokens.begin() + i, tokens.begin() + i + n}];
  return counts;
}

}  // namespace

double bleu(const std::vector<std::string>& hypothesis,
            const std::vector<std::vector<std::string>>& references,
            const BleuOptions& options) {
  if (hypothesis.empty()) raise(Errc::empty_hypothesis, "BLEU hypothesis is empty");
  if (references.empty() ||
      std::all_of(references.begin(), references.end(),
                  [](const auto& r) { return r.empty(); }))
    raise(Errc::empty_references, "BLEU needs at least one non-empty reference");

  int max_n = options.max_n;
  std::vector<double> weights = options.weights;
  if (weights.empty())
    weights.assign(max_n, 1.0 / static_cast<double>(max_n));
  if (static_cast<int>(weights.size()) != max_n)
    raise(Errc::invalid_config, "BLEU weights must have max_n entries");
  double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(wsum - 1.0) > 1e-9)
    raise(Errc::invalid_config, "BLEU weights must sum to 1");

  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    auto hyp_counts = ngram_counts(hypothesis, n);
    long long total = 0;
    for (const auto& [_, c] : hyp_counts) total += c;
    long long clipped = 0;
    for (const auto& [gram, count] : hyp_counts) {
      long long best_ref = 0;
      for (const auto& ref : references) {
        auto rc = ngram_counts(ref, n);
        auto it = rc.find(gram);
        if (it != rc.end()) best_ref = std::max(best_ref, it->second);
      }
      clipped += std::min(count, best_ref);
    }
    double p;
    if (total == 0) {
      // Hypothesis shorter than n: treat as zero precision at this order.
      p = 0.0;
    } else if (options.smooth && n > 1) {
      p = static_cast<double>(clipped + 1) / static_cast<double>(total + 1);
    } else {
      p = static_cast<double>(clipped) / static_cast<double>(total);
    }
    if (p == 0.0) return 0.0;  // unsmoothed BLEU is 0 when any precision is 0
    log_sum += weights[n - 1] * std::log(p);
  }

  // Brevity penalty against the closest-length reference (ties -> shorter).
  size_t hyp_len = hypothesis.size();
  size_t best_ref_len = references.front().size();
  for (const auto& ref : references) {
    size_t d_new = ref.size() > hyp_len ? ref.size() - hyp_len : hyp_len - ref.size();
    size_t d_old = best_ref_len > hyp_len ? best_ref_len - hyp_len : hyp_len - best_ref_len;
    if (d_new < d_old || (d_new == d_old && ref.size() < best_ref_len))
      best_ref_len = ref.size();
  }
  double bp = std::min(
      1.0, std::exp(1.0 - static_cast<double>(best_ref_len) / static_cast<double>(hyp_len)));
  return bp * std::exp(log_sum);
}

// ---- ROUGE-L ----

size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(const std::vector<std::string>& hypothesis,
               const std::vector<std::string>& reference, double beta) {
  if (hypothesis.empty() || reference.empty())
    raise(Errc::empty_input, "ROUGE-L needs non-empty hypothesis and reference");
  size_t lcs = lcs_length(hypothesis, reference);
  if (lcs == 0) return 0.0;
  double p = static_cast<double>(lcs) / static_cast<double>(hypothesis.size());
  double r = static_cast<double>(lcs) / static_cast<double>(reference.size());
  double b2 = beta * beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

// ---- METEOR ----

double meteor(const std::vector<std::string>& hypothesis,
              const std::vector<std::string>& reference) {
  if (hypothesis.empty() || reference.empty())
    raise(Errc::empty_input, "METEOR needs non-empty hypothesis and reference");

  // Greedy left-to-right exact alignment; each reference token used once.
  std::vector<bool> ref_used(reference.size(), false);
  std::vector<std::pair<size_t, size_t>> matches;  // (hyp index, ref index)
  for (size_t i = 0; i < hypothesis.size(); ++i) {
    for (size_t j = 0; j < reference.size(); ++j) {
      if (!ref_used[j] && reference[j] == hypothesis[i]) {
        ref_used[j] = true;
        matches.emplace_back(i, j);
        break;
      }
    }
  }
  size_t m = matches.size();
  if (m == 0) return 0.0;

  double p = static_cast<double>(m) / static_cast<double>(hypothesis.size());
  double r = static_cast<double>(m) / static_cast<double>(reference.size());
  double f_mean = 10.0 * p * r / (r + 9.0 * p);

  // Chunks: maximal runs contiguous in both sequences.
  size_t chunks = 1;
  for (size_t k = 1; k < m; ++k) {
    if (matches[k].first != matches[k - 1].first + 1 ||
        matches[k].second != matches[k - 1].second + 1)
      ++chunks;
  }
  double frag;
  if (chunks == 1 && m == hypothesis.size() && m == reference.size()) {
    frag = 0.0;  // full single-chunk match: identity scores exactly 1
  } else {
    double ratio = static_cast<double>(chunks) / static_cast<double>(m);
    frag = 0.5 * ratio * ratio * ratio;
  }
  return (1.0 - frag) * f_mean;
}

// ---- TSR / Field Overlap ----

double tsr(const std::vector<Sample>& samples, const SchemaSpec& schema,
           const TsrThresholds& thresholds, const TfIdfEmbedder& embedder,
           const std::vector<std::vector<std::string>>& reference_samples, int n) {
  if (samples.empty()) raise(Errc::empty_batch, "TSR of empty batch");
  size_t passing = 0;
  for (const auto& s : samples) {
    bool valid = s.json_value.has_value() && validate(*s.json_value, schema);
    if (!valid) continue;
    if (similarity(s.tokens, reference_samples, embedder) <= thresholds.tau_s) continue;
    if (distinct_n(s.tokens, n) <= thresholds.tau_d) continue;
    ++passing;
  }
  return static_cast<double>(passing) / static_cast<double>(samples.size());
}

double field_overlap(const std::vector<Sample>& samples, const FieldSet& reference_fields) {
  if (samples.empty()) raise(Errc::empty_batch, "field overlap of empty batch");
  double sum = 0.0;
  for (const auto& s : samples) {
    if (!s.json_value.has_value()) continue;  // unparseable: per-sample overlap 0
    FieldSet fields = extract_fields(*s.json_value);
    if (fields.empty()) continue;
    size_t inter = 0;
    for (const auto& f : fields)
      if (reference_fields.count(f)) ++inter;
    sum += static_cast<double>(inter) / static_cast<double>(fields.size());
  }
  return sum / static_cast<double>(samples.size());
}

FieldSet collect_reference_fields(const std::vector<json>& reference_entries) {
  FieldSet out;
  for (const auto& entry : reference_entries) {
    FieldSet fields = extract_fields(entry);
    out.insert(fields.begin(), fields.end());
  }
  return out;
}

}  // namespace aod
