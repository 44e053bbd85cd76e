#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "aod/errors.hpp"

namespace aod {

using json = nlohmann::json;

json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& value, int indent = 2);

// JSONL: one JSON value per non-empty line.
std::vector<json> load_jsonl_file(const std::filesystem::path& path);
void save_jsonl_file(const std::filesystem::path& path, const std::vector<json>& rows);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace aod
