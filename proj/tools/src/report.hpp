#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "charvar/count.hpp"
#include "charvar/oracle.hpp"
#include "config.hpp"

namespace charvar::cli {

using ordered_json = nlohmann::ordered_json;

struct OracleRun {
  std::vector<OracleResult> counts;
  std::vector<WitnessResult> witnesses;
  struct Pair {
    std::string first, second;
    unsigned q = 0;
    bool conjugate = false;
  };
  std::vector<Pair> pairs;
};

ordered_json polynomial_json(const Polynomial& p);
ordered_json header_json(const Config& c, const std::string& command);
ordered_json count_json(const Config& c, const CountReport& r);
ordered_json table_json(const std::vector<TableRow>& rows);
ordered_json poset_json(const Config& c, const SubsystemPoset& P);
ordered_json check_json(const Config& c, const Hypotheses& h, bool nonempty);
ordered_json oracle_json(const Config& c, const OracleRun& run);
ordered_json error_json(const std::string& code, const std::string& kind, const std::string& message,
                        const std::string& hypothesis);

// Column-aligned plain text.
std::string format_rows(const std::vector<std::vector<std::string>>& rows);

std::string count_text(const Config& c, const CountReport& r);
std::string table_text(const std::vector<TableRow>& rows);
std::string poset_text(const SubsystemPoset& P);
std::string check_text(const Hypotheses& h, bool nonempty);
std::string oracle_text(const OracleRun& run);

}  // namespace charvar::cli
