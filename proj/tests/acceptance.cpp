// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "glen/certificate.hpp"
#include "glen/checks.hpp"
#include "glen/corpus.hpp"
#include "glen/error.hpp"
#include "glen/quotient.hpp"
#include "glen/report.hpp"
#include "glen/survey.hpp"
#include "oracle.hpp"

using glen::Budget;
using glen::CheckReport;
using glen::CorpusEntry;
using glen::Group;
using glen::Status;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    problems.push_back(what);
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

const CorpusEntry& by_name(const std::vector<CorpusEntry>& corpus, const std::string& name) {
  for (const auto& e : corpus) {
    if (e.name == name) return e;
  }
  throw glen::Error("corpus has no entry named " + name);
}

std::size_t lambda(const CorpusEntry& e, std::uint64_t p) {
  return glen::non_p_soluble_length(e.group(), p, e.budget, e.hints).lambda;
}

struct RunOutput {
  std::vector<CheckReport> records;
  std::string report;
  std::string certificates;
  std::vector<std::pair<std::size_t, nlohmann::json>> certs;  // (entry index, certificate)
};

RunOutput full_run(const std::vector<CorpusEntry>& corpus) {
  RunOutput out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& e = corpus[i];
    auto rs = glen::run_checks(e, {});
    out.records.insert(out.records.end(), rs.begin(), rs.end());
    for (auto p : glen::prime_divisors(e.group().order())) {
      const auto cert = glen::non_p_soluble_length(e.group(), p, e.budget, e.hints);
      out.certificates += glen::emit_certificate(cert, e.name);
      out.certs.emplace_back(i, glen::certificate_to_json(cert, e.name));
    }
  }
  out.report = glen::render_report(out.records, 42);
  return out;
}

Outcome ground_truth(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  const auto start = Clock::now();
  struct Row {
    std::string group;
    std::string what;
    std::function<std::size_t(const CorpusEntry&)> value;
    std::size_t expected;
  };
  auto lam = [](std::uint64_t p) { return [p](const CorpusEntry& e) { return lambda(e, p); }; };
  auto plen = [](std::uint64_t p) { return [p](const CorpusEntry& e) { return glen::p_length(e.group(), p, e.budget); }; };
  auto maxq = [](glen::Quantity q) {
    return [q](const CorpusEntry& e) { return glen::max_invariant(e.group(), q, 2, e.budget).value; };
  };
  const std::vector<Row> rows{
      {"S5", "lambda_2", lam(2), 1},
      {"SL(2,5)", "lambda_2", lam(2), 1},
      {"A5xA5", "lambda_2", lam(2), 1},
      {"A5wrC2", "lambda_2", lam(2), 1},
      {"A5wrA5", "lambda_2", lam(2), 2},
      {"A5wrA5", "lambda_7", lam(7), 0},
      {"S4", "p_length_2", plen(2), 2},
      {"S4", "p_length_3", plen(3), 1},
      {"SL(2,3)", "p_length_2", plen(2), 1},
      {"S4", "fitting_height", [](const CorpusEntry& e) { return glen::fitting_height(e.group(), e.budget); }, 3},
      {"S3", "fitting_height", [](const CorpusEntry& e) { return glen::fitting_height(e.group(), e.budget); }, 2},
      {"S4", "l_2x2prime", [](const CorpusEntry& e) { return glen::l_2x2prime(e.group(), e.budget); }, 3},
      {"SL(2,3)", "l_2x2prime", [](const CorpusEntry& e) { return glen::l_2x2prime(e.group(), e.budget); }, 2},
      {"A5", "L2x2p", maxq(glen::Quantity::L2x2p), 2},
      {"A5", "L2", maxq(glen::Quantity::L2), 1},
      {"S4", "subgroups", [](const CorpusEntry& e) { return glen::enumerate_subgroups(e.group(), e.budget).total(); }, 30},
      {"S4", "subgroup_classes",
       [](const CorpusEntry& e) { return glen::enumerate_subgroups(e.group(), e.budget).class_representatives().size(); },
       11},
  };
  for (const auto& row : rows) {
    const auto& e = by_name(corpus, row.group);
    const std::size_t got = row.value(e);
    o.require(got == row.expected, row.group + " " + row.what + " = " + std::to_string(got) + ", expected " +
                                       std::to_string(row.expected));
  }
  // the same lambdas by shortest path through the normal subgroup lattice
  std::size_t cross = 0;
  for (const char* name : {"S5", "SL(2,5)", "A5", "S4"}) {
    const auto& e = by_name(corpus, name);
    for (auto p : glen::prime_divisors(e.group().order())) {
      ++cross;
      o.require(glen::brute_force_lambda(e.group(), p, e.budget) == lambda(e, p),
                std::string(name) + " brute-force lambda_" + std::to_string(p));
    }
  }
  const double t = seconds_since(start);
  o.require(t < 60, "ground truth took " + std::to_string(t) + " s");
  std::ostringstream d;
  d << rows.size() << " invariants, " << cross << " lattice cross-checks, " << static_cast<int>(t * 1000) << " ms";
  o.detail = d.str();
  return o;
}

Outcome battery(const RunOutput& run, double elapsed) {
  Outcome o;
  std::map<std::string, std::size_t> passes;
  std::size_t fails = 0;
  for (const auto& r : run.records) {
    if (r.status == Status::Pass) ++passes[r.check];
    if (r.status == Status::Fail) {
      ++fails;
      o.require(false, r.group + " " + r.check + " p=" + std::to_string(r.prime) + " " + r.data.dump());
    }
  }
  for (int i = 1; i <= 13; ++i) {
    const std::string id = "C" + std::to_string(i);
    const std::size_t need = i <= 5 ? 10 : 3;
    o.require(passes[id] >= need, id + " has " + std::to_string(passes[id]) + " PASS, needs " + std::to_string(need));
  }
  o.require(elapsed < 600, "battery took " + std::to_string(elapsed) + " s");
  std::ostringstream d;
  d << run.records.size() << " records, " << fails << " FAIL, min PASS C1-C5 ";
  std::size_t lo = SIZE_MAX;
  std::size_t hi = SIZE_MAX;
  for (int i = 1; i <= 13; ++i) {
    auto& m = i <= 5 ? lo : hi;
    m = std::min(m, passes["C" + std::to_string(i)]);
  }
  d << lo << ", C6-C13 " << hi << ", " << static_cast<int>(elapsed) << " s";
  o.detail = d.str();
  return o;
}

Outcome lattice_lambda(const std::vector<CorpusEntry>& corpus, const RunOutput& run) {
  Outcome o;
  std::size_t expected = 0;
  std::size_t passed = 0;
  for (const auto& e : corpus) {
    const auto order = e.group().order();
    if (e.tier != glen::Tier::FullSurvey || order > 200) continue;
    for (auto p : glen::prime_divisors(order)) {
      ++expected;
      bool found = false;
      for (const auto& r : run.records) {
        if (r.group != e.name || r.check != "C14" || r.prime != p) continue;
        found = true;
        if (r.status == Status::Pass) ++passed;
        o.require(r.status == Status::Pass, e.name + " C14 p=" + std::to_string(p) + " " + r.data.dump());
      }
      o.require(found, e.name + " has no C14 record for p=" + std::to_string(p));
    }
  }
  o.require(expected > 0, "no group of order <= 200 in the corpus");
  o.detail = std::to_string(passed) + "/" + std::to_string(expected) + " instances equal";
  return o;
}

bool same(const Group& g, const oracle::Set& s) {
  if (g.order() != s.size()) return false;
  for (const auto& x : g.generators()) {
    if (!s.count(oracle::raw(x))) return false;
  }
  return true;
}

Outcome residual_oracles(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t groups = 0;
  std::size_t comparisons = 0;
  for (const auto& e : corpus) {
    const Group g = e.group();
    if (g.order() > 2000) continue;
    ++groups;
    const auto n = g.degree();
    std::vector<std::pair<std::string, Group>> subjects{{"G", g}};
    for (auto p : glen::prime_divisors(g.order())) subjects.emplace_back("P" + std::to_string(p), glen::sylow(g, p, e.budget));
    for (const auto& [label, h] : subjects) {
      const auto set = oracle::closure(n, oracle::raw(h.generators()));
      for (auto p : glen::prime_divisors(g.order())) {
        ++comparisons;
        o.require(same(glen::p_residual(h, p), oracle::p_residual(n, set, p)),
                  e.name + " " + label + " O^" + std::to_string(p));
      }
      for (std::uint64_t k : {2, 3, 4, 5, 6, 8}) {
        ++comparisons;
        o.require(same(glen::power_subgroup(h, k, g, e.budget).group, oracle::powers(n, set, k)),
                  e.name + " " + label + " power " + std::to_string(k));
      }
    }
  }
  o.detail = std::to_string(comparisons) + " comparisons over " + std::to_string(groups) + " groups";
  return o;
}

Outcome certificates(const std::vector<CorpusEntry>& corpus, const RunOutput& run) {
  Outcome o;
  for (const auto& [i, cert] : run.certs) {
    const auto v = glen::verify_certificate(cert, corpus[i]);
    o.require(v.pass, corpus[i].name + " p=" + cert["prime"].dump() + ": " + v.reason);
  }
  glen::Rng rng(42);
  const std::vector<glen::Tamper> kinds{glen::Tamper::DropLayer, glen::Tamper::DropFactor,
                                        glen::Tamper::CorruptGenerator};
  std::size_t made = 0;
  std::size_t caught = 0;
  while (made < 50) {
    const auto& [i, cert] = run.certs[rng.below(run.certs.size())];
    const auto kind = kinds[rng.below(kinds.size())];
    const auto t = glen::tamper_certificate(cert, kind, corpus[i].group(), rng);
    if (!t) continue;
    ++made;
    const bool rejected = !glen::verify_certificate(*t, corpus[i]).pass;
    if (rejected) ++caught;
    o.require(rejected, corpus[i].name + " p=" + cert["prime"].dump() + " " + glen::tamper_name(kind) + " accepted");
  }
  o.detail = std::to_string(run.certs.size()) + " certificates verified, " + std::to_string(caught) + "/" +
             std::to_string(made) + " tamperings rejected";
  return o;
}

Outcome determinism(const RunOutput& first, const RunOutput& second) {
  Outcome o;
  o.require(first.report == second.report, "reports differ");
  o.require(first.certificates == second.certificates, "certificates differ");
  o.detail = std::to_string(first.report.size()) + " report bytes, " + std::to_string(first.certificates.size()) +
             " certificate bytes";
  return o;
}

Outcome monotonicity(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t instances = 0;
  for (const auto& e : corpus) {
    if (e.tier != glen::Tier::FullSurvey) continue;
    const Group g = e.group();
    const auto sel = glen::normal_subgroup_selection(g, e.budget);
    o.require(sel.exhaustive, e.name + " normal subgroups not exhausted");
    for (auto p : glen::prime_divisors(g.order())) {
      const std::size_t lg = lambda(e, p);
      for (const auto& n : sel.subgroups) {
        const std::size_t ln = glen::non_p_soluble_length(n, p, e.budget).lambda;
        const std::size_t lq = glen::non_p_soluble_length(glen::quotient(g, n, e.budget).image(), p, e.budget).lambda;
        ++instances;
        const std::string tag = e.name + " p=" + std::to_string(p) + " |N|=" + std::to_string(n.order());
        o.require(ln <= lg, tag + " lambda(N) > lambda(G)");
        o.require(lq <= lg, tag + " lambda(G/N) > lambda(G)");
        o.require(lg <= ln + lq, tag + " lambda(G) > lambda(N) + lambda(G/N)");
      }
    }
  }
  o.detail = std::to_string(instances) + " (group, prime, normal subgroup) instances";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : GLEN_CORPUS_DIR;
  const auto start = Clock::now();
  std::vector<CorpusEntry> corpus;
  try {
    corpus = glen::load_corpus(dir);
  } catch (const glen::Error& e) {
    std::cerr << "cannot load corpus: " << e.what() << "\n";
    return 2;
  }

  bool all = true;
  auto report = [&](int n, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")\n";
    for (std::size_t i = 0; i < o.problems.size() && i < 10; ++i) std::cout << "    " << o.problems[i] << "\n";
    std::cout.flush();
  };

  report(1, [&] { return ground_truth(corpus); });
  RunOutput first;
  double elapsed = 0;
  report(2, [&] {
    const auto t = Clock::now();
    first = full_run(corpus);
    elapsed = seconds_since(t);
    return battery(first, elapsed);
  });
  report(3, [&] { return lattice_lambda(corpus, first); });
  report(4, [&] { return residual_oracles(corpus); });
  report(5, [&] { return certificates(corpus, first); });
  report(6, [&] { return determinism(first, full_run(corpus)); });
  report(7, [&] { return monotonicity(corpus); });
  std::printf("total %.1f s\n", seconds_since(start));
  return all ? 0 : 1;
}
