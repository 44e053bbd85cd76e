#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aod/errors.hpp"

namespace aod {

using json = nlohmann::json;

enum class FieldKind { text, number, boolean, array_of_number, object, any };

FieldKind field_kind_from_string(const std::string& s);
const char* field_kind_name(FieldKind k);

struct FieldSpec {
  std::string path;                    // dot-separated key path
  FieldKind kind = FieldKind::any;
  bool required = false;
  std::optional<std::string> pattern;  // ECMAScript regex, validated on load
};

struct SchemaSpec {
  std::string name;
  std::vector<FieldSpec> fields;
  bool allow_unknown_marker = false;  // literal "?" passes any kind

  static SchemaSpec from_json(const json& doc);
  static SchemaSpec load(const std::string& path);
  json to_json() const;

  std::vector<std::string> field_paths() const;
  std::vector<std::string> required_paths() const;
};

struct Prompt {
  std::string id;
  std::string text;
  int iteration = 1;
  std::optional<std::string> parent_id;
};

struct Sample {
  std::string id;
  std::string prompt_id;
  std::string raw_text;
  std::optional<json> json_value;  // present iff extraction succeeded
  std::vector<std::string> tokens; // exactly tokenize(raw_text)

  static Sample from_raw(std::string id, std::string prompt_id, std::string raw_text);
};

// Lowercases, splits on whitespace, and emits { } [ ] , : " as single-character
// tokens. The fixed rule every n-gram metric in this project depends on.
std::vector<std::string> tokenize(const std::string& text);

std::string join_tokens(const std::vector<std::string>& tokens);

// First balanced top-level JSON object or array found by string-aware bracket
// matching; surrounding prose is ignored. Throws NoJsonFound / ParseError.
json extract_json(const std::string& raw_text);

// Binary validator V_S.
bool validate(const json& value, const SchemaSpec& schema);

// Flattened (path, canonical value text) pairs: nested objects become dot
// paths, arrays flatten with numeric indices, numbers print in minimal
// decimal form, strings lowercase. Set semantics.
using FieldSet = std::set<std::pair<std::string, std::string>>;
FieldSet extract_fields(const json& value);

std::string canonical_value_text(const json& value);

}  // namespace aod
