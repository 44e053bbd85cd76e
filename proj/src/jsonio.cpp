#include "aod/jsonio.hpp"

#include <fstream>
#include <sstream>

namespace aod {

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path.string());
  json v = json::parse(in, nullptr, false);
  if (v.is_discarded())
    raise(Errc::json_parse_error, "invalid JSON in " + path.string());
  return v;
}

void save_json_file(const std::filesystem::path& path, const json& value, int indent) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot write " + path.string());
  out << value.dump(indent) << "\n";
}

std::vector<json> load_jsonl_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path.string());
  std::vector<json> rows;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json v = json::parse(line, nullptr, false);
    if (v.is_discarded())
      raise(Errc::json_parse_error,
            path.string() + ":" + std::to_string(lineno) + " is not valid JSON");
    rows.push_back(std::move(v));
  }
  return rows;
}

void save_jsonl_file(const std::filesystem::path& path, const std::vector<json>& rows) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot write " + path.string());
  for (const auto& row : rows) out << row.dump() << "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot write " + path.string());
  out << text;
}

}  // namespace aod
