#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glen/checks.hpp"
#include "json.hpp"

namespace glen {

nlohmann::json record_to_json(const CheckReport& r);

/// "glen-report/1": the seed and every record, sorted by (group, check, prime).
/// Holds no timings, so equal inputs give byte-identical output.
nlohmann::json report_to_json(std::vector<CheckReport> records, std::uint64_t seed);
std::string render_report(const std::vector<CheckReport>& records, std::uint64_t seed);

/// One line per record: check, prime, status and the compared numbers.
std::string format_table(const std::vector<CheckReport>& records);
/// Pass/fail/skip counts per check id.
std::string format_summary(const std::vector<CheckReport>& records);

bool any_failure(const std::vector<CheckReport>& records);

}  // namespace glen
