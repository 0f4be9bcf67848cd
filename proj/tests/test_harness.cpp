#include <algorithm>
#include <map>

#include "doctest.h"
#include "glen/certificate.hpp"
#include "glen/checks.hpp"
#include "glen/corpus.hpp"
#include "glen/error.hpp"
#include "glen/report.hpp"
#include "groups.hpp"
#include "oracle.hpp"

using glen::Budget;
using glen::CheckReport;
using glen::Group;
using glen::Status;
using nlohmann::json;

namespace {

const std::filesystem::path kCorpus = GLEN_CORPUS_DIR;

glen::CorpusEntry entry(const std::string& file) { return glen::load_corpus_entry(kCorpus / file); }

json minimal() {
  return {{"format", "glen-corpus/1"},
          {"name", "S3"},
          {"degree", 3},
          {"generators", {"(0 1)", "(0 1 2)"}},
          {"tier", "FULL_SURVEY"}};
}

const CheckReport* find(const std::vector<CheckReport>& rs, const std::string& id, std::uint64_t p = 0) {
  for (const auto& r : rs) {
    if (r.check == id && r.prime == p) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("corpus entries parse and reject malformed fields") {
  auto e = glen::parse_corpus_entry(minimal().dump());
  CHECK(e.name == "S3");
  CHECK(e.group().order() == 6);
  CHECK(e.tier == glen::Tier::FullSurvey);

  auto broken = [](const std::string& field, const json& value) {
    json j = minimal();
    j[field] = value;
    return j.dump();
  };
  CHECK_THROWS_AS(glen::parse_corpus_entry(broken("format", "glen-corpus/2")), glen::ParseError);
  CHECK_THROWS_AS(glen::parse_corpus_entry(broken("degree", -1)), glen::ParseError);
  CHECK_THROWS_AS(glen::parse_corpus_entry(broken("generators", {"(0 7)"})), glen::ParseError);
  CHECK_THROWS_AS(glen::parse_corpus_entry(broken("tier", "SOMETIMES")), glen::ParseError);
  CHECK_THROWS_AS(glen::parse_corpus_entry(broken("varieties", json::array({{{"prime", 4}, {"pairs", {{1, 0}}}}}))),
                  glen::ParseError);
  CHECK_THROWS_AS(glen::parse_corpus_entry(broken("hints", {{"sylow", {{"6", {"(0 1)"}}}}})), glen::ParseError);
  CHECK_THROWS_AS(glen::parse_corpus_entry("{"), glen::ParseError);

  try {
    glen::parse_corpus_entry(broken("degree", "three"));
    FAIL("accepted a string degree");
  } catch (const glen::ParseError& err) {
    CHECK(std::string(err.what()).find("degree") != std::string::npos);
  }
}

TEST_CASE("the shipped corpus loads with consistent orders") {
  const auto all = glen::load_corpus(kCorpus);
  REQUIRE(all.size() >= 15);
  std::set<std::string> names;
  for (const auto& e : all) {
    CAPTURE(e.name);
    CHECK(names.insert(e.name).second);
    REQUIRE(e.expected.count("order"));
    CHECK(e.group().order() == static_cast<std::uint64_t>(e.expected.at("order")));
  }
}

TEST_CASE("certificates for S5 and S4 at p = 2") {
  auto s5 = entry("s5.json");
  const auto cert = glen::non_p_soluble_length(s5.group(), 2, s5.budget);
  const json j = glen::certificate_to_json(cert, s5.name);
  CHECK(j["format"] == "glen-cert/1");
  CHECK(j["lambda"] == 1);
  REQUIRE(j["layers"].size() == 2);
  CHECK(j["layers"][0]["kind"] == "SEMISIMPLE");
  CHECK(j["layers"][1]["kind"] == "P_SOLUBLE");
  CHECK(glen::verify_certificate(j, s5).pass);
  CHECK(glen::verify_certificate(j.dump(), s5).pass);

  auto s4 = entry("s4.json");
  const json k = glen::certificate_to_json(glen::non_p_soluble_length(s4.group(), 2, s4.budget), s4.name);
  CHECK(k["lambda"] == 0);
  REQUIRE(k["layers"].size() == 1);
  CHECK(k["layers"][0]["kind"] == "P_SOLUBLE");
  CHECK(glen::verify_certificate(k, s4).pass);

  auto wrong = glen::verify_certificate(j, s4);
  CHECK_FALSE(wrong.pass);
  CHECK_FALSE(wrong.reason.empty());
}

TEST_CASE("dropping a simple factor breaks the order product") {
  auto e = entry("a5xa5.json");
  json j = glen::certificate_to_json(glen::non_p_soluble_length(e.group(), 2, e.budget), e.name);
  REQUIRE(j["layers"][0]["factors"].size() == 2);
  j["layers"][0]["factors"].erase(1);
  const auto v = glen::verify_certificate(j, e);
  CHECK_FALSE(v.pass);
  CHECK(v.reason.find("order product") != std::string::npos);
}

TEST_CASE("the verifier rejects a non-normal layer and a wrong lambda") {
  auto e = entry("s5.json");
  json j = glen::certificate_to_json(glen::non_p_soluble_length(e.group(), 2, e.budget), e.name);
  json bad = j;
  bad["layers"][0]["generators"] = {"(0 1 2)"};
  CHECK_FALSE(glen::verify_certificate(bad, e).pass);
  bad = j;
  bad["lambda"] = 2;
  CHECK_FALSE(glen::verify_certificate(bad, e).pass);
  bad = j;
  bad["layers"][1]["kind"] = "SEMISIMPLE";
  CHECK_FALSE(glen::verify_certificate(bad, e).pass);
}

TEST_CASE("every tamper kind is detected") {
  glen::Rng rng(7);
  for (const char* file : {"s5.json", "a5xa5.json", "sl_2_5.json", "s4.json"}) {
    auto e = entry(file);
    for (auto p : glen::prime_divisors(e.group().order())) {
      const json j = glen::certificate_to_json(glen::non_p_soluble_length(e.group(), p, e.budget), e.name);
      for (auto kind : {glen::Tamper::DropLayer, glen::Tamper::DropFactor, glen::Tamper::CorruptGenerator}) {
        auto t = glen::tamper_certificate(j, kind, e.group(), rng);
        if (!t) continue;
        CAPTURE(file);
        CAPTURE(p);
        CAPTURE(glen::tamper_name(kind));
        CHECK_FALSE(glen::verify_certificate(*t, e).pass);
      }
    }
  }
}

TEST_CASE("mixed series lengths") {
  const Budget b;
  auto s4 = glen::build_mixed_series(fixtures::s4(), 3, b);
  CHECK(s4.length == 3);
  CHECK(s4.bound == 15);
  CHECK(s4.within_bound());
  auto a5 = glen::build_mixed_series(fixtures::a5(), 2, b);
  CHECK(a5.length == 1);
  CHECK(a5.bound == 8);
  auto w = glen::build_mixed_series(fixtures::a5_wr_c2(), 2, b);
  CHECK(w.length == 2);
  CHECK(w.terms.back().order() == 7200);
}

TEST_CASE("brute-force lambda agrees with the canonical series") {
  const Budget b;
  for (const auto& g : {fixtures::s3(), fixtures::s4(), fixtures::a5(), fixtures::s5(), fixtures::sl23(), fixtures::sl25(),
                        fixtures::psl27()}) {
    for (auto p : glen::prime_divisors(g.order())) {
      CAPTURE(g.order());
      CAPTURE(p);
      CHECK(glen::brute_force_lambda(g, p, b) == glen::non_p_soluble_length(g, p, b).lambda);
    }
  }
}

TEST_CASE("normal subgroup selection of small p-groups matches the oracle") {
  const Budget b;
  for (const auto& g : {fixtures::d8(), fixtures::q8(), fixtures::v4(), fixtures::make(8, {"(0 1)", "(2 3)", "(4 5)"})}) {
    const auto sel = glen::normal_subgroup_selection(g, b);
    CHECK(sel.exhaustive);
    const auto n = g.degree();
    CHECK(sel.subgroups.size() == oracle::normal_subgroups(n, oracle::closure(n, oracle::raw(g.generators()))).size());
  }
}

TEST_CASE("single-check examples") {
  glen::CheckOptions only;
  only.selection = {"C2"};
  auto rs = glen::run_checks(entry("a5.json"), only);
  const auto* c2 = find(rs, "C2");
  REQUIRE(c2);
  CHECK(c2->status == Status::Pass);
  CHECK(c2->data["lambda"] == 1);
  CHECK(c2->data["L2x2p"] == 2);

  only.selection = {"C1"};
  rs = glen::run_checks(entry("s4.json"), only);
  REQUIRE(find(rs, "C1"));
  CHECK(find(rs, "C1")->status == Status::Pass);

  only.selection = {"C5"};
  rs = glen::run_checks(entry("a5wra5.json"), only);
  for (auto p : {2, 3, 5}) {
    const auto* c5 = find(rs, "C5", p);
    REQUIRE(c5);
    CHECK(c5->status == Status::Pass);
  }

  only.selection = {"C14"};
  rs = glen::run_checks(entry("a5wra5.json"), only);
  REQUIRE(find(rs, "C14", 2));
  CHECK(find(rs, "C14", 2)->reason == glen::SkipReason::Tier);
}

TEST_CASE("budget overruns are skips, not failures") {
  auto e = entry("s5.json");
  e.budget.max_enumeration = 10;
  for (const auto& r : glen::run_checks(e, {})) {
    CAPTURE(r.check);
    CHECK(r.status != Status::Fail);
  }
}

TEST_CASE("reports are sorted and reproducible") {
  auto e = entry("s4.json");
  auto first = glen::run_checks(e, {});
  auto second = glen::run_checks(e, {});
  CHECK(glen::render_report(first, 42) == glen::render_report(second, 42));
  CHECK(std::is_sorted(first.begin(), first.end(), glen::report_less));
  CHECK_FALSE(glen::any_failure(first));

  std::reverse(first.begin(), first.end());
  const json j = glen::report_to_json(first, 42);
  CHECK(j["format"] == "glen-report/1");
  CHECK(j["records"][0]["check"] == "C1");
  CHECK(j["records"][0]["prime"].is_null());
  for (const auto& r : j["records"]) {
    CHECK(r.contains("reason") == (r["status"] == "SKIPPED"));
  }
}
