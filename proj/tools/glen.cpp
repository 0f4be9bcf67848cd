#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "glen/certificate.hpp"
#include "glen/checks.hpp"
#include "glen/corpus.hpp"
#include "glen/error.hpp"
#include "glen/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsage = 2;

void apply_environment(glen::CorpusEntry& e) {
  if (std::getenv("GLEN_BUDGET_ELEMS")) e.budget.max_enumeration = glen::Budget::from_environment().max_enumeration;
}

std::set<std::string> parse_selection(const std::string& list) {
  std::set<std::string> out;
  if (list == "all") return out;
  std::stringstream in(list);
  std::string id;
  while (std::getline(in, id, ',')) {
    if (id.empty()) continue;
    if (glen::check_rank(id) == glen::check_ids().size()) throw glen::ParseError("unknown check id " + id);
    out.insert(id);
  }
  if (out.empty()) throw glen::ParseError("empty check list");
  return out;
}

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw glen::Error("cannot write " + path.string());
  out << text;
}

std::string certificate_text(const glen::CorpusEntry& e, std::uint64_t p) {
  const auto cert = glen::non_p_soluble_length(e.group(), p, e.budget, e.hints);
  return glen::emit_certificate(cert, e.name);
}

int analyze(const std::string& entry_path, std::uint64_t prime, const std::string& checks,
            const std::string& cert_path, std::uint64_t seed) {
  glen::CorpusEntry e;
  glen::CheckOptions opt;
  try {
    e = glen::load_corpus_entry(entry_path);
    opt.selection = parse_selection(checks);
  } catch (const glen::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
  if (prime != 0) {
    if (!glen::is_prime(prime)) {
      std::cerr << "error: --prime " << prime << " is not prime\n";
      return kUsage;
    }
    opt.prime = prime;
  }
  opt.seed = seed;
  apply_environment(e);
  const auto records = glen::run_checks(e, opt);
  std::cout << glen::format_table(records);
  if (!cert_path.empty()) {
    write_file(cert_path, certificate_text(e, prime == 0 ? 2 : prime));
    std::cout << "certificate written to " << cert_path << "\n";
  }
  return glen::any_failure(records) ? 1 : 0;
}

int corpus(const std::string& dir, const std::string& report_path, const std::string& cert_dir,
           unsigned jobs, std::uint64_t seed) {
  std::vector<glen::CorpusEntry> entries;
  try {
    entries = glen::load_corpus(dir);
  } catch (const glen::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
  if (entries.empty()) {
    std::cerr << "error: no corpus entries in " << dir << "\n";
    return kUsage;
  }
  for (auto& e : entries) apply_environment(e);
  if (!cert_dir.empty()) fs::create_directories(cert_dir);

  std::vector<std::vector<glen::CheckReport>> results(entries.size());
  std::vector<std::string> errors(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      glen::CheckOptions opt;
      opt.seed = seed;
      results[i] = glen::run_checks(entries[i], opt);
      if (cert_dir.empty()) continue;
      try {
        for (auto p : glen::prime_divisors(entries[i].group().order())) {
          const auto name = slug(entries[i].name) + "_p" + std::to_string(p) + ".json";
          write_file(fs::path(cert_dir) / name, certificate_text(entries[i], p));
        }
      } catch (const glen::Error& err) {
        errors[i] = err.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1U, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<glen::CheckReport> all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!errors[i].empty()) std::cerr << entries[i].name << ": certificate not written: " << errors[i] << "\n";
  }
  std::cout << glen::format_summary(all);
  for (const auto& r : all) {
    if (r.status == glen::Status::Fail) std::cout << "FAIL " << r.group << " " << r.check << " " << r.data.dump() << "\n";
  }
  if (!report_path.empty()) write_file(report_path, glen::render_report(all, seed));
  return glen::any_failure(all) ? 1 : 0;
}

int verify(const std::string& cert_path, const std::string& entry_path) {
  glen::CorpusEntry e;
  nlohmann::json cert;
  try {
    e = glen::load_corpus_entry(entry_path);
    cert = nlohmann::json::parse(glen::read_file(cert_path));
  } catch (const nlohmann::json::parse_error& err) {
    std::cerr << "error: " << cert_path << " is not valid JSON: " << err.what() << "\n";
    return kUsage;
  } catch (const glen::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
  apply_environment(e);
  const auto v = glen::verify_certificate(cert, e);
  if (v.pass) {
    std::cout << "PASS\n";
    return 0;
  }
  std::cout << "FAIL: " << v.reason << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glen: permutation group invariants and theorem checks"};
  app.require_subcommand(1);

  std::string entry_path, checks = "all", cert_path;
  std::uint64_t prime = 0, seed = 42;
  auto* a = app.add_subcommand("analyze", "Run the check battery on one corpus entry");
  a->add_option("entry", entry_path, "Corpus entry JSON")->required();
  a->add_option("--prime", prime, "Restrict prime-indexed checks and the certificate to one prime");
  a->add_option("--checks", checks, "Comma-separated check ids, or all")->capture_default_str();
  a->add_option("--emit-cert", cert_path, "Write the series certificate here");
  a->add_option("--seed", seed, "Seed for witness searches")->capture_default_str();

  std::string dir, report_path, cert_dir;
  unsigned jobs = 1;
  auto* c = app.add_subcommand("corpus", "Run every check on every entry in a directory");
  c->add_option("dir", dir, "Corpus directory")->required();
  c->add_option("--report", report_path, "Write the JSON report here");
  c->add_option("--certs", cert_dir, "Write one certificate per entry and prime into this directory");
  c->add_option("--jobs", jobs, "Entries processed in parallel")->capture_default_str();
  c->add_option("--seed", seed, "Seed for witness searches")->capture_default_str();

  std::string verify_cert, verify_entry;
  auto* v = app.add_subcommand("verify-cert", "Re-verify a certificate against its entry");
  v->add_option("cert", verify_cert, "Certificate JSON")->required();
  v->add_option("entry", verify_entry, "Corpus entry JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*a) return analyze(entry_path, prime, checks, cert_path, seed);
    if (*c) return corpus(dir, report_path, cert_dir, jobs, seed);
    if (*v) return verify(verify_cert, verify_entry);
  } catch (const glen::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
