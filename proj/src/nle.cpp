#include "aod/nle.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "aod/jsonio.hpp"

namespace aod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::string>& metric_keys() {
  static const std::vector<std::string> keys = {"similarity", "diversity", "novelty",
                                                "perplexity", "entropy"};
  return keys;
}

std::string render_template(const std::string& tmpl, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string out = tmpl;
  const std::string slot = "{value}";
  size_t pos = 0;
  while ((pos = out.find(slot, pos)) != std::string::npos) {
    out.replace(pos, slot.size(), buf);
    pos += std::string(buf).size();
  }
  return out;
}

}  // namespace

BandTable BandTable::defaults() {
  BandTable t;
  t.bands_["similarity"] = {
      {0.40, "Low similarity",
       "Semantic Similarity: {value} - Low similarity: the sample shares little "
       "meaning with the reference set."},
      {0.80, "Moderate similarity",
       "Semantic Similarity: {value} - Moderate similarity: the sample overlaps "
       "the reference set in part, with visible divergence."},
      {kInf, "High similarity",
       "Semantic Similarity: {value} - High similarity: the sample tracks the "
       "reference set closely."}};
  t.bands_["diversity"] = {
      {0.35, "Low diversity",
       "Diversity: {value} - Low diversity: phrasing repeats heavily within the "
       "sample."},
      {0.70, "Moderate diversity",
       "Diversity: {value} - Moderate diversity: the sample mixes repeated and "
       "fresh phrasing."},
      {kInf, "High diversity",
       "Diversity: {value} - High diversity: n-grams rarely repeat within the "
       "sample."}};
  t.bands_["novelty"] = {
      {0.50, "Modest novelty",
       "Novelty: {value} - Modest novelty: much of the sample already appears in "
       "the reference corpus."},
      {0.90, "Novel",
       "Novelty: {value} - Novel: a clear majority of the sample is absent from "
       "the reference corpus."},
      {kInf, "Highly novel",
       "Novelty: {value} - Highly novel: nearly all of the sample is unseen in "
       "the reference corpus."}};
  t.bands_["perplexity"] = {
      {15.0, "Very fluent",
       "Perplexity: {value} - Very fluent: the language model finds the text "
       "highly predictable."},
      {40.0, "Fluent",
       "Perplexity: {value} - Fluent: the text reads plausibly with occasional "
       "surprises for the language model."},
      {kInf, "Disfluent",
       "Perplexity: {value} - Disfluent: the language model struggles to predict "
       "this text."}};
  t.bands_["entropy"] = {
      {2.5, "Low entropy",
       "Entropy: {value} - Low entropy: token choices are concentrated on a "
       "narrow vocabulary."},
      {5.0, "Moderate entropy",
       "Entropy: {value} - Moderate entropy: the vocabulary shows some spread "
       "without being erratic."},
      {kInf, "High entropy",
       "Entropy: {value} - High entropy: token choices are spread widely across "
       "the vocabulary."}};
  t.validate_table();
  return t;
}

BandTable BandTable::from_json(const json& doc) {
  BandTable t;
  for (const auto& key : metric_keys()) {
    if (!doc.contains(key))
      raise(Errc::missing_metric, "band table missing metric '" + key + "'");
    std::vector<Band> bands;
    for (const auto& entry : doc.at(key)) {
      Band b;
      const auto& upper = entry.at("upper");
      if (upper.is_string()) {
        if (upper.get<std::string>() != "inf")
          raise(Errc::invalid_config, "band upper must be a number or \"inf\"");
        b.upper = kInf;
      } else {
        b.upper = upper.get<double>();
      }
      b.label = entry.at("label").get<std::string>();
      b.sentence = entry.at("template").get<std::string>();
      bands.push_back(std::move(b));
    }
    t.bands_[key] = std::move(bands);
  }
  t.validate_table();
  return t;
}

BandTable BandTable::load(const std::string& path) {
  return from_json(load_json_file(path));
}

json BandTable::to_json() const {
  json doc = json::object();
  for (const auto& [metric, bands] : bands_) {
    json list = json::array();
    for (const auto& b : bands) {
      json entry;
      if (std::isinf(b.upper))
        entry["upper"] = "inf";
      else
        entry["upper"] = b.upper;
      entry["label"] = b.label;
      entry["template"] = b.sentence;
      list.push_back(std::move(entry));
    }
    doc[metric] = std::move(list);
  }
  return doc;
}

void BandTable::validate_table() const {
  for (const auto& key : metric_keys()) {
    auto it = bands_.find(key);
    if (it == bands_.end() || it->second.empty())
      raise(Errc::missing_metric, "band table missing metric '" + key + "'");
    const auto& bands = it->second;
    for (size_t i = 1; i < bands.size(); ++i) {
      if (!(bands[i - 1].upper < bands[i].upper))
        raise(Errc::non_monotonic_bounds,
              "band bounds for '" + key + "' must strictly increase");
    }
    if (!std::isinf(bands.back().upper))
      raise(Errc::non_monotonic_bounds,
            "final band for '" + key + "' must have upper bound inf");
  }
}

const std::vector<Band>& BandTable::bands_for(const std::string& metric) const {
  auto it = bands_.find(metric);
  if (it == bands_.end())
    raise(Errc::missing_metric, "no bands for metric '" + metric + "'");
  return it->second;
}

size_t BandTable::band_index(const std::string& metric, double value) const {
  const auto& bands = bands_for(metric);
  for (size_t i = 0; i < bands.size(); ++i)
    if (value <= bands[i].upper) return i;
  return bands.size() - 1;
}

const Band& BandTable::band_for(const std::string& metric, double value) const {
  return bands_for(metric)[band_index(metric, value)];
}

std::vector<std::string> describe(const MetricVector& metrics, const BandTable& table) {
  std::vector<std::string> out;
  out.push_back(render_template(table.band_for("similarity", metrics.sim).sentence,
                                metrics.sim));
  out.push_back(render_template(table.band_for("diversity", metrics.distinct_n).sentence,
                                metrics.distinct_n));
  out.push_back(render_template(table.band_for("novelty", metrics.novelty).sentence,
                                metrics.novelty));
  out.push_back(render_template(
      table.band_for("perplexity", metrics.perplexity).sentence, metrics.perplexity));
  out.push_back(render_template(table.band_for("entropy", metrics.entropy).sentence,
                                metrics.entropy));
  return out;
}

}  // namespace aod
