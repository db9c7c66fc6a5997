#pragma once

#include <string>
#include <utility>
#include <vector>

#include "critline/errors.hpp"

namespace critline {

// 17-significant-digit decimal rendering; round-trips doubles exactly.
std::string fmt17(double v);

// Minimal flat JSON writer (all floats through fmt17).
class JsonWriter {
  public:
    JsonWriter& field(const std::string& key, const std::string& value);
    JsonWriter& field(const std::string& key, double value);
    JsonWriter& field(const std::string& key, std::int64_t value);
    JsonWriter& raw_field(const std::string& key, const std::string& raw_json);
    std::string str() const;

  private:
    std::string body_;
};

// Two-column numeric CSV (optional header line is skipped).
std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);

// Comma- or whitespace-separated list of decimals.
std::vector<double> parse_double_list(const std::string& text);

} // namespace critline
