#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace vorwave {

/// Format a double for text artifacts: shortest round-trip representation,
/// '.' decimal point, deterministic across runs.
std::string format_double(double v);

/// Write a CSV table: header row required, rows newline-terminated.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Write pretty-printed JSON with a trailing newline.
void write_json(const std::string& path, const nlohmann::json& j);

void ensure_directory(const std::string& path);

} // namespace vorwave
