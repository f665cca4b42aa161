#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charvar/count.hpp"
#include "charvar/oracle.hpp"

namespace charvar::cli {

inline constexpr int kSchemaVersion = 1;

struct OracleConfig {
  std::vector<unsigned> q;
  std::optional<std::map<std::string, long long>> specialization;
  std::uint64_t seed = 1;
  double budget = 1e9;
  std::vector<WitnessSpec> witnesses;
  // pairs of witness names that must not be simultaneously conjugate
  std::vector<std::pair<std::string, std::string>> distinct;
};

struct Config {
  std::string path;
  std::string group;  // descriptor or label of the explicit datum
  ProblemSpec spec;
  std::vector<std::string> class_text;
  OracleConfig oracle;
};

// Throws Error(Parse) with line/column for malformed JSON and with the
// field path for schema violations.
Config parse_config(const std::string& text, const std::string& path = "<string>");
Config load_config(const std::string& path);

}  // namespace charvar::cli
