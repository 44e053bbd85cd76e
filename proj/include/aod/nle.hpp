#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aod/metrics.hpp"

namespace aod {

struct Band {
  double upper;          // inclusive upper bound; last band is +inf
  std::string label;
  std::string sentence;  // explanation text appended after the label
};

// Score -> sentence mapping the judge consumes. Bounds are strictly
// increasing per metric; lookup is a table scan, so band selection is
// monotone in the metric value by construction.
class BandTable {
 public:
  static BandTable defaults();
  static BandTable from_json(const json& doc);
  static BandTable load(const std::string& path);
  json to_json() const;

  const std::vector<Band>& bands_for(const std::string& metric) const;
  size_t band_index(const std::string& metric, double value) const;
  const Band& band_for(const std::string& metric, double value) const;

 private:
  void validate_table() const;

  // keys: similarity, diversity, novelty, perplexity, entropy
  std::map<std::string, std::vector<Band>> bands_;
};

// Emits the five evaluation sentences in fixed order (Similarity, Diversity,
// Novelty, Perplexity, Entropy), each "Name: value - label: explanation"
// with the value printed to 2 decimals.
std::vector<std::string> describe(const MetricVector& metrics, const BandTable& table);

}  // namespace aod
