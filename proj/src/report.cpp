#include "glen/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

namespace glen {

using nlohmann::json;

json record_to_json(const CheckReport& r) {
  json out;
  out["group"] = r.group;
  out["check"] = r.check;
  out["prime"] = r.prime == 0 ? json(nullptr) : json(r.prime);
  out["status"] = status_name(r.status);
  if (r.status == Status::Skipped) out["reason"] = reason_name(r.reason);
  out["data"] = r.data;
  out["witnesses"] = r.witnesses;
  return out;
}

json report_to_json(std::vector<CheckReport> records, std::uint64_t seed) {
  std::stable_sort(records.begin(), records.end(), report_less);
  json list = json::array();
  for (const auto& r : records) list.push_back(record_to_json(r));
  json out;
  out["format"] = "glen-report/1";
  out["seed"] = seed;
  out["lambda_series"] = "canonical series, minimality oracle-checked at small order only";
  out["records"] = list;
  return out;
}

std::string render_report(const std::vector<CheckReport>& records, std::uint64_t seed) {
  return report_to_json(records, seed).dump(2) + "\n";
}

std::string format_table(const std::vector<CheckReport>& records) {
  std::ostringstream out;
  for (const auto& r : records) {
    std::string status = status_name(r.status);
    if (r.status == Status::Skipped) status += "(" + reason_name(r.reason) + ")";
    out << std::left << std::setw(12) << r.group << " " << std::setw(9) << r.check << " "
        << std::setw(3) << (r.prime == 0 ? std::string("-") : std::to_string(r.prime)) << " "
        << std::setw(30) << status << " " << r.data.dump() << "\n";
  }
  return out.str();
}

std::string format_summary(const std::vector<CheckReport>& records) {
  struct Counts {
    std::size_t pass = 0, fail = 0, skipped = 0;
  };
  std::map<std::size_t, std::pair<std::string, Counts>> by_check;
  for (const auto& r : records) {
    auto& [id, c] = by_check[check_rank(r.check)];
    id = r.check;
    if (r.status == Status::Pass) ++c.pass;
    if (r.status == Status::Fail) ++c.fail;
    if (r.status == Status::Skipped) ++c.skipped;
  }
  std::ostringstream out;
  out << std::left << std::setw(9) << "check" << std::right << std::setw(6) << "PASS" << std::setw(6)
      << "FAIL" << std::setw(9) << "SKIPPED" << "\n";
  for (const auto& [rank, entry] : by_check) {
    const auto& [id, c] = entry;
    out << std::left << std::setw(9) << id << std::right << std::setw(6) << c.pass << std::setw(6)
        << c.fail << std::setw(9) << c.skipped << "\n";
  }
  return out.str();
}

bool any_failure(const std::vector<CheckReport>& records) {
  return std::any_of(records.begin(), records.end(),
                     [](const CheckReport& r) { return r.status == Status::Fail; });
}

}  // namespace glen
