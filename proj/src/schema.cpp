#include "aod/schema.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>
#include <sstream>

#include "aod/jsonio.hpp"

namespace aod {

namespace {

bool is_split_punct(char c) {
  switch (c) {
    case '{': case '}': case '[': case ']': case ',': case ':': case '"':
      return true;
    default:
      return false;
  }
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Splits "a.b.c" into path segments.
std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> segments;
  std::string current;
  for (char c : path) {
    if (c == '.') {
      segments.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  segments.push_back(current);
  return segments;
}

// Looks a dot path up in a JSON value; numeric segments index arrays.
const json* lookup_path(const json& root, const std::vector<std::string>& segments) {
  const json* node = &root;
  for (const auto& seg : segments) {
    if (node->is_object()) {
      auto it = node->find(seg);
      if (it == node->end()) return nullptr;
      node = &*it;
    } else if (node->is_array()) {
      size_t idx = 0;
      auto [p, ec] = std::from_chars(seg.data(), seg.data() + seg.size(), idx);
      if (ec != std::errc() || p != seg.data() + seg.size()) return nullptr;
      if (idx >= node->size()) return nullptr;
      node = &(*node)[idx];
    } else {
      return nullptr;
    }
  }
  return node;
}

bool kind_matches(const json& v, FieldKind kind, bool allow_unknown_marker) {
  if (allow_unknown_marker && v.is_string() && v.get<std::string>() == "?") return true;
  switch (kind) {
    case FieldKind::text: return v.is_string();
    case FieldKind::number: return v.is_number();
    case FieldKind::boolean: return v.is_boolean();
    case FieldKind::array_of_number: {
      if (!v.is_array()) return false;
      return std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); });
    }
    case FieldKind::object: return v.is_object();
    case FieldKind::any: return true;
  }
  return false;
}

void flatten_into(const json& v, const std::string& prefix, FieldSet& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
      flatten_into(it.value(), path, out);
    }
  } else if (v.is_array()) {
    for (size_t i = 0; i < v.size(); ++i) {
      std::string path = prefix.empty() ? std::to_string(i)
                                        : prefix + "." + std::to_string(i);
      flatten_into(v[i], path, out);
    }
  } else {
    out.emplace(prefix, canonical_value_text(v));
  }
}

}  // namespace

FieldKind field_kind_from_string(const std::string& s) {
  if (s == "text") return FieldKind::text;
  if (s == "number") return FieldKind::number;
  if (s == "boolean") return FieldKind::boolean;
  if (s == "array-of-number") return FieldKind::array_of_number;
  if (s == "object") return FieldKind::object;
  if (s == "any") return FieldKind::any;
  raise(Errc::invalid_config, "unknown field kind '" + s + "'");
}

const char* field_kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::text: return "text";
    case FieldKind::number: return "number";
    case FieldKind::boolean: return "boolean";
    case FieldKind::array_of_number: return "array-of-number";
    case FieldKind::object: return "object";
    case FieldKind::any: return "any";
  }
  return "any";
}

SchemaSpec SchemaSpec::from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("name") || !doc.contains("fields"))
    raise(Errc::invalid_config, "schema document needs 'name' and 'fields'");
  SchemaSpec schema;
  schema.name = doc.at("name").get<std::string>();
  schema.allow_unknown_marker = doc.value("allow_unknown_marker", false);
  std::set<std::string> seen;
  for (const auto& f : doc.at("fields")) {
    FieldSpec spec;
    spec.path = f.at("path").get<std::string>();
    if (spec.path.empty()) raise(Errc::invalid_config, "field path must be non-empty");
    if (!seen.insert(spec.path).second)
      raise(Errc::invalid_config, "duplicate field path '" + spec.path + "'");
    spec.kind = field_kind_from_string(f.at("kind").get<std::string>());
    spec.required = f.value("required", false);
    if (f.contains("pattern")) {
      spec.pattern = f.at("pattern").get<std::string>();
      try {
        std::regex probe(*spec.pattern);
      } catch (const std::regex_error&) {
        raise(Errc::invalid_config,
              "pattern for '" + spec.path + "' does not compile");
      }
    }
    schema.fields.push_back(std::move(spec));
  }
  return schema;
}

SchemaSpec SchemaSpec::load(const std::string& path) {
  return from_json(load_json_file(path));
}

json SchemaSpec::to_json() const {
  json fields_doc = json::array();
  for (const auto& f : fields) {
    json fd{{"path", f.path},
            {"kind", field_kind_name(f.kind)},
            {"required", f.required}};
    if (f.pattern) fd["pattern"] = *f.pattern;
    fields_doc.push_back(std::move(fd));
  }
  return json{{"name", name},
              {"allow_unknown_marker", allow_unknown_marker},
              {"fields", std::move(fields_doc)}};
}

std::vector<std::string> SchemaSpec::field_paths() const {
  std::vector<std::string> out;
  out.reserve(fields.size());
  for (const auto& f : fields) out.push_back(f.path);
  return out;
}

std::vector<std::string> SchemaSpec::required_paths() const {
  std::vector<std::string> out;
  for (const auto& f : fields)
    if (f.required) out.push_back(f.path);
  return out;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  for (char raw : text) {
    if (ascii_space(raw)) {
      flush();
    } else if (is_split_punct(raw)) {
      flush();
      tokens.emplace_back(1, raw);
    } else {
      current.push_back(ascii_lower(raw));
    }
  }
  flush();
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

json extract_json(const std::string& raw_text) {
  const size_t n = raw_text.size();
  for (size_t start = 0; start < n; ++start) {
    char open = raw_text[start];
    if (open != '{' && open != '[') continue;
    std::vector<char> stack;
    bool in_string = false;
    bool escaped = false;
    bool broken = false;
    for (size_t i = start; i < n && !broken; ++i) {
      char c = raw_text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      switch (c) {
        case '"':
          in_string = true;
          break;
        case '{':
          stack.push_back('}');
          break;
        case '[':
          stack.push_back(']');
          break;
        case '}':
        case ']':
          if (stack.empty() || stack.back() != c) {
            broken = true;  // improperly nested; try the next start
            break;
          }
          stack.pop_back();
          if (stack.empty()) {
            std::string region = raw_text.substr(start, i - start + 1);
            json v = json::parse(region, nullptr, false);
            if (v.is_discarded())
              raise(Errc::json_parse_error, "balanced region is not valid JSON");
            return v;
          }
          break;
        default:
          break;
      }
    }
    // This start never balanced; scan on for a later one.
  }
  raise(Errc::no_json_found, "no balanced JSON object or array in text");
}

Sample Sample::from_raw(std::string id, std::string prompt_id, std::string raw_text) {
  Sample s;
  s.id = std::move(id);
  s.prompt_id = std::move(prompt_id);
  s.raw_text = std::move(raw_text);
  s.tokens = tokenize(s.raw_text);
  try {
    s.json_value = extract_json(s.raw_text);
  } catch (const Error&) {
    s.json_value.reset();
  }
  return s;
}

bool validate(const json& value, const SchemaSpec& schema) {
  for (const auto& field : schema.fields) {
    auto segments = split_path(field.path);
    const json* node = lookup_path(value, segments);
    if (node == nullptr) {
      if (field.required) return false;
      continue;
    }
    bool is_marker = schema.allow_unknown_marker && node->is_string() &&
                     node->get<std::string>() == "?";
    if (!kind_matches(*node, field.kind, schema.allow_unknown_marker)) return false;
    if (field.pattern && node->is_string() && !is_marker) {
      std::regex re(*field.pattern);
      if (!std::regex_search(node->get<std::string>(), re)) return false;
    }
  }
  return true;
}

std::string canonical_value_text(const json& value) {
  if (value.is_string()) {
    std::string s = value.get<std::string>();
    std::transform(s.begin(), s.end(), s.begin(), ascii_lower);
    return s;
  }
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number_unsigned()) return std::to_string(value.get<unsigned long long>());
  if (value.is_number_float()) {
    double d = value.get<double>();
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    (void)ec;
    return std::string(buf, p);
  }
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_null()) return "null";
  return value.dump();
}

FieldSet extract_fields(const json& value) {
  FieldSet out;
  flatten_into(value, "", out);
  return out;
}

}  // namespace aod
