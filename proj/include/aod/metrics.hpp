#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aod/schema.hpp"

namespace aod {

// The five training signals. All logarithms in this project are natural:
// entropy is in nats and perplexity is exp of a mean negative natural log.
struct MetricVector {
  double sim = 0.0;         // [0,1]
  double distinct_n = 0.0;  // [0,1]
  double entropy = 0.0;     // >= 0, nats
  double novelty = 0.0;     // [0,1]
  double perplexity = 1.0;  // >= 1
};

enum class EntropyMode { model, empirical };

// Add-alpha n-gram model: the default provider for the token probabilities
// behind perplexity and model-based entropy. Read-only after fit; shareable
// across threads.
class NgramLanguageModel {
 public:
  NgramLanguageModel(int order, double smoothing_alpha);

  void fit(const std::vector<std::vector<std::string>>& corpus);

  // Model with the given vocabulary and no counts: uniform 1/|V| everywhere.
  static NgramLanguageModel uniform(int order, const std::vector<std::string>& vocab);

  double prob(const std::string& token, const std::vector<std::string>& context) const;
  double sequence_log_prob(const std::vector<std::string>& tokens) const;

  // Distribution entropy (nats) of p(.|context) over the vocabulary.
  double context_entropy(const std::vector<std::string>& context) const;

  int order() const { return order_; }
  double smoothing_alpha() const { return alpha_; }
  size_t vocab_size() const { return vocab_.size(); }
  const std::vector<std::string>& vocab() const { return vocab_; }

 private:
  std::string context_key(const std::vector<std::string>& context) const;

  int order_;
  double alpha_;
  std::vector<std::string> vocab_;
  std::unordered_set<std::string> vocab_set_;
  std::unordered_map<std::string, std::unordered_map<std::string, long long>> counts_;
  std::unordered_map<std::string, long long> context_totals_;
};

// Sparse tf-idf encoder: the default E(.) behind the similarity metric.
// Fitted once on the reference corpus, then read-only.
class TfIdfEmbedder {
 public:
  void fit(const std::vector<std::vector<std::string>>& reference_corpus);

  // Every token of `vocab` gets idf weight 1; handy for hand-checked tests.
  static TfIdfEmbedder with_unit_idf(const std::vector<std::string>& vocab);

  // token index -> tf*idf weight; empty text embeds to the zero vector.
  std::map<int, double> embed(const std::vector<std::string>& tokens) const;

  size_t vocab_size() const { return vocabulary_.size(); }

 private:
  std::unordered_map<std::string, int> vocabulary_;
  std::vector<double> idf_;
};

double cosine(const std::map<int, double>& a, const std::map<int, double>& b);

struct TsrThresholds {
  double tau_s = 0.5;
  double tau_d = 0.3;
};

// ---- training metrics ----

double perplexity(const std::vector<std::string>& tokens, const NgramLanguageModel& lm);

// exp(-(1/T) sum(log p_i)) for externally supplied per-token probabilities.
double perplexity_from_probs(const std::vector<double>& token_probs);

double similarity(const std::vector<std::string>& sample_tokens,
                  const std::vector<std::vector<std::string>>& reference_samples,
                  const TfIdfEmbedder& embedder);

double distinct_n(const std::vector<std::string>& tokens, int n);

// Model-based when lm is given (mean per-position distribution entropy),
// empirical unigram entropy of the token multiset otherwise.
double entropy(const std::vector<std::string>& tokens, const NgramLanguageModel* lm);

using NgramSet = std::set<std::vector<std::string>>;

NgramSet collect_ngrams(const std::vector<std::string>& tokens, int n);
NgramSet collect_corpus_ngrams(const std::vector<std::vector<std::string>>& corpus, int n);

double novelty(const std::vector<std::string>& tokens, const NgramSet& reference_ngrams,
               int n);

// ---- independent metrics ----

struct BleuOptions {
  int max_n = 4;
  std::vector<double> weights;  // empty -> uniform 1/max_n
  bool smooth = false;          // add-one on higher-order precisions
};

double bleu(const std::vector<std::string>& hypothesis,
            const std::vector<std::vector<std::string>>& references,
            const BleuOptions& options = {});

double rouge_l(const std::vector<std::string>& hypothesis,
               const std::vector<std::string>& reference, double beta = 1.0);

double meteor(const std::vector<std::string>& hypothesis,
              const std::vector<std::string>& reference);

size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

double tsr(const std::vector<Sample>& samples, const SchemaSpec& schema,
           const TsrThresholds& thresholds, const TfIdfEmbedder& embedder,
           const std::vector<std::vector<std::string>>& reference_samples, int n);

double field_overlap(const std::vector<Sample>& samples, const FieldSet& reference_fields);

FieldSet collect_reference_fields(const std::vector<json>& reference_entries);

}  // namespace aod
