#include "glen/certificate.hpp"

#include <unordered_set>

#include "glen/error.hpp"
#include "glen/quotient.hpp"

namespace glen {

using nlohmann::json;

namespace {

json cycles(const std::vector<Permutation>& gens) {
  json out = json::array();
  for (const auto& x : gens) out.push_back(x.to_cycles());
  return out;
}

struct Failure {
  std::string reason;
};

std::vector<Permutation> read_gens(std::size_t degree, const json& j, const std::string& where) {
  if (!j.is_array()) throw Failure{where + ": generators must be an array"};
  std::vector<Permutation> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw Failure{where + ": generator is not a string"};
    try {
      out.push_back(Permutation::from_cycles(degree, x.get<std::string>()));
    } catch (const Error& e) {
      throw Failure{where + ": malformed generator \"" + x.get<std::string>() + "\": " + e.what()};
    }
  }
  return out;
}

// Subgroup generated by the elements of p-power order, by enumeration.
Group p_elements(const Group& x, std::uint64_t p, const Budget& budget) {
  GroupBuilder b(x.degree());
  for_each_element(x, budget, [&](std::uint64_t, const Permutation& y) {
    if (!y.is_identity() && is_power_of(y.order(), p) && !b.contains(y)) b.add(y);
    return b.order() < x.order();
  });
  return b.build();
}

// Alternately strips O^{p'} and O^p; p-soluble iff this reaches 1.
bool lower_p_series_terminates(Group x, std::uint64_t p, const Budget& budget) {
  while (!x.is_trivial()) {
    Group y = p_elements(x, p, budget);
    Group z = p_residual(y, p);
    if (z.order() == x.order()) return false;
    x = z;
  }
  return true;
}

// Every nontrivial element has normal closure F; with F perfect this is
// nonabelian simplicity.
std::optional<Permutation> proper_normal_seed(const Group& f, const Budget& budget) {
  std::unordered_set<std::uint64_t> seen{f.rank(f.identity())};
  std::optional<Permutation> bad;
  for_each_element(f, budget, [&](std::uint64_t r, const Permutation& x) {
    if (seen.count(r)) return true;
    if (normal_closure(f, {x}).order() != f.order()) {
      bad = x;
      return false;
    }
    std::vector<Permutation> cls{x};
    seen.insert(r);
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (const auto& a : f.generators()) {
        Permutation y = cls[i].conjugate_by(a);
        if (seen.insert(f.rank(y)).second) cls.push_back(std::move(y));
      }
    }
    return true;
  });
  return bad;
}

std::string layer_name(std::size_t i) { return "layer " + std::to_string(i + 1); }

void verify(const json& cert, const CorpusEntry& entry) {
  if (!cert.is_object()) throw Failure{"certificate is not a JSON object"};
  if (cert.value("format", "") != "glen-cert/1") throw Failure{"format is not glen-cert/1"};
  if (cert.value("group", "") != entry.name) throw Failure{"certificate is for a different group"};
  if (!cert.contains("degree") || !cert["degree"].is_number_integer() ||
      cert["degree"].get<std::int64_t>() != static_cast<std::int64_t>(entry.degree)) {
    throw Failure{"degree does not match the entry"};
  }
  if (!cert.contains("prime") || !cert["prime"].is_number_integer()) throw Failure{"prime missing"};
  const auto p = cert["prime"].get<std::uint64_t>();
  if (!is_prime(p)) throw Failure{"prime " + std::to_string(p) + " is not prime"};
  if (!cert.contains("lambda") || !cert["lambda"].is_number_integer()) throw Failure{"lambda missing"};
  if (!cert.contains("layers") || !cert["layers"].is_array() || cert["layers"].empty()) {
    throw Failure{"certificate has no layers"};
  }

  const std::size_t n = entry.degree;
  const Group g = entry.group();
  const Budget& budget = entry.budget;
  Group below = Group::trivial(n);
  std::size_t semisimple = 0;
  const json& layers = cert["layers"];
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const json& layer = layers[i];
    const std::string where = layer_name(i);
    if (!layer.is_object()) throw Failure{where + " is not an object"};
    const std::string kind = layer.value("kind", "");
    if (kind != "P_SOLUBLE" && kind != "SEMISIMPLE") throw Failure{where + ": unknown kind"};
    auto gens = read_gens(n, layer.value("generators", json::array()), where);
    for (const auto& x : gens) {
      if (!g.contains(x)) throw Failure{where + ": generator " + x.to_cycles() + " is not in G"};
    }
    const Group gi(n, gens);
    if (!below.is_subgroup_of(gi)) throw Failure{where + ": does not contain the previous layer"};
    for (const auto& a : g.generators()) {
      for (const auto& x : gens) {
        if (!gi.contains(x.conjugate_by(a))) {
          throw Failure{where + ": not normal in G (" + x.to_cycles() + " conjugated by " +
                        a.to_cycles() + ")"};
        }
      }
    }
    const QuotientContext q = quotient(gi, below, budget);
    if (kind == "P_SOLUBLE") {
      if (!lower_p_series_terminates(q.image(), p, budget)) {
        throw Failure{where + ": quotient is not " + std::to_string(p) + "-soluble"};
      }
    } else {
      ++semisimple;
      const json& fs = layer.value("factors", json::array());
      if (!fs.is_array() || fs.empty()) throw Failure{where + ": semisimple layer without factors"};
      std::vector<Group> factors;
      std::uint64_t product = 1;
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const std::string fw = where + " factor " + std::to_string(k + 1);
        auto fg = read_gens(n, fs[k], fw);
        std::vector<Permutation> images;
        for (const auto& x : fg) {
          if (!gi.contains(x)) throw Failure{fw + ": generator " + x.to_cycles() + " is not in the layer"};
          images.push_back(q.push(x));
        }
        Group f(q.image().degree(), images);
        if (f.is_trivial()) throw Failure{fw + ": trivial modulo the previous layer"};
        if (f.order() % p != 0) throw Failure{fw + ": order " + std::to_string(f.order()) + " prime to p"};
        if (derived_subgroup(f).order() != f.order()) throw Failure{fw + ": not perfect"};
        if (auto seed = proper_normal_seed(f, budget)) {
          throw Failure{fw + ": not simple (proper normal closure of " + seed->to_cycles() + ")"};
        }
        for (const auto& other : factors) {
          for (const auto& x : f.generators()) {
            for (const auto& y : other.generators()) {
              if (x * y != y * x) throw Failure{fw + ": does not commute with an earlier factor"};
            }
          }
        }
        product *= f.order();
        factors.push_back(std::move(f));
      }
      if (product != q.index()) {
        throw Failure{where + ": order product mismatch (" + std::to_string(product) + " vs index " +
                      std::to_string(q.index()) + ")"};
      }
    }
    below = gi;
  }
  if (!below.same_as(g)) throw Failure{"top layer is not G"};
  if (cert["lambda"].get<std::uint64_t>() != semisimple) {
    throw Failure{"lambda " + cert["lambda"].dump() + " but " + std::to_string(semisimple) +
                  " semisimple layers"};
  }
}

}  // namespace

json certificate_to_json(const SeriesCertificate& cert, const std::string& group_name) {
  json layers = json::array();
  for (const auto& l : cert.layers) {
    json layer;
    layer["kind"] = l.kind == LayerKind::PSoluble ? "P_SOLUBLE" : "SEMISIMPLE";
    layer["generators"] = cycles(l.subgroup.generators());
    json factors = json::array();
    for (const auto& f : l.factors) factors.push_back(cycles(f));
    layer["factors"] = factors;
    layers.push_back(layer);
  }
  json out;
  out["format"] = "glen-cert/1";
  out["group"] = group_name;
  out["degree"] = cert.group.degree();
  out["prime"] = cert.prime;
  out["lambda"] = cert.lambda;
  out["layers"] = layers;
  return out;
}

std::string emit_certificate(const SeriesCertificate& cert, const std::string& group_name) {
  return certificate_to_json(cert, group_name).dump(2) + "\n";
}

Verdict verify_certificate(const json& cert, const CorpusEntry& entry) {
  try {
    verify(cert, entry);
  } catch (const Failure& f) {
    return {false, f.reason};
  } catch (const BudgetExceeded& e) {
    return {false, std::string("verification exceeded the budget: ") + e.what()};
  } catch (const NotNormal& e) {
    return {false, std::string("layer is not normal in the next: ") + e.what()};
  } catch (const json::exception& e) {
    return {false, std::string("malformed field: ") + e.what()};
  }
  return {true, ""};
}

Verdict verify_certificate(const std::string& text, const CorpusEntry& entry) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return {false, std::string("invalid JSON: ") + e.what()};
  }
  return verify_certificate(j, entry);
}

std::string tamper_name(Tamper t) {
  switch (t) {
    case Tamper::DropLayer: return "drop-layer";
    case Tamper::DropFactor: return "drop-factor";
    case Tamper::CorruptGenerator: return "corrupt-generator";
  }
  return "?";
}

std::optional<json> tamper_certificate(const json& cert, Tamper kind, const Group& g, Rng& rng) {
  json out = cert;
  json& layers = out["layers"];
  switch (kind) {
    case Tamper::DropLayer: {
      layers.erase(layers.begin() + static_cast<std::ptrdiff_t>(rng.below(layers.size())));
      return out;
    }
    case Tamper::DropFactor: {
      std::vector<std::size_t> semisimple;
      for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i]["kind"] == "SEMISIMPLE" && !layers[i]["factors"].empty()) semisimple.push_back(i);
      }
      if (semisimple.empty()) return std::nullopt;
      json& fs = layers[semisimple[rng.below(semisimple.size())]]["factors"];
      fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(rng.below(fs.size())));
      return out;
    }
    case Tamper::CorruptGenerator: {
      std::vector<std::size_t> with_gens;
      for (std::size_t i = 0; i < layers.size(); ++i) {
        if (!layers[i]["generators"].empty()) with_gens.push_back(i);
      }
      if (with_gens.empty()) return std::nullopt;
      json& gens = layers[with_gens[rng.below(with_gens.size())]]["generators"];
      const std::size_t k = rng.below(gens.size());
      const std::size_t n = g.degree();
      bool symmetric = false;
      if (n <= 20) {
        std::uint64_t factorial = 1;
        for (std::size_t i = 2; i <= n; ++i) factorial *= i;
        symmetric = g.order() == factorial;
      }
      if (symmetric) {
        // every permutation lies in S_n, so corrupt the text instead
        gens[k] = "(0 " + std::to_string(n) + ")";
        return out;
      }
      for (;;) {
        std::vector<Point> images(n);
        for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Point>(i);
        for (std::size_t i = n; i > 1; --i) std::swap(images[i - 1], images[rng.below(i)]);
        Permutation x(std::move(images));
        if (!g.contains(x)) {
          gens[k] = x.to_cycles();
          return out;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace glen
