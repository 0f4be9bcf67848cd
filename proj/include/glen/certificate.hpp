#pragma once

#include <optional>
#include <string>

#include "glen/corpus.hpp"
#include "glen/rng.hpp"
#include "glen/structure.hpp"
#include "json.hpp"

namespace glen {

/// "glen-cert/1": group name, degree, prime, lambda and the ordered layers,
/// each with its generators, kind and (for semisimple layers) factor generators.
nlohmann::json certificate_to_json(const SeriesCertificate& cert, const std::string& group_name);
std::string emit_certificate(const SeriesCertificate& cert, const std::string& group_name);

struct Verdict {
  bool pass = false;
  /// First violated property, empty on PASS.
  std::string reason;
};

/// Re-checks every layer from generators alone, using only group and
/// quotient primitives.
Verdict verify_certificate(const nlohmann::json& cert, const CorpusEntry& entry);
Verdict verify_certificate(const std::string& text, const CorpusEntry& entry);

enum class Tamper { DropLayer, DropFactor, CorruptGenerator };

std::string tamper_name(Tamper t);

/// A modified copy, or nullopt when the certificate has nothing to tamper with
/// for that kind (no semisimple layer for DropFactor).
std::optional<nlohmann::json> tamper_certificate(const nlohmann::json& cert, Tamper kind,
                                                 const Group& g, Rng& rng);

}  // namespace glen
