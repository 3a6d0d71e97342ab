#pragma once

// JSON documents for matrices, Jordan structures, canonical specs, reports and certificates.
// Scalars are written as ["re", "im"] with both parts as rational strings.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "spreal/canonical.hpp"
#include "spreal/jordan.hpp"
#include "spreal/reality.hpp"
#include "spreal/skew_hamiltonian.hpp"

namespace spreal::io {

using json = nlohmann::ordered_json;

struct MatrixMetadata {
  std::string label;
  std::optional<std::uint64_t> seed;
  std::string provenance;
};

struct MatrixDocument {
  Matrix matrix;
  std::optional<MatrixMetadata> metadata;
};

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned()) malformed(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

inline std::string string_of(const json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace detail

inline json to_json(const Scalar& s) { return json::array({s.re().str(), s.im().str()}); }

/// ["re", "im"], or a bare rational string for a real scalar.
inline Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar(Rational::parse(j.get<std::string>()));
  if (!j.is_array() || j.size() != 2) detail::malformed("scalar must be a [re, im] pair of strings");
  return {Rational::parse(detail::string_of(j[0], "real part")),
          Rational::parse(detail::string_of(j[1], "imaginary part"))};
}

inline json to_json(const Matrix& m, const std::optional<MatrixMetadata>& metadata = std::nullopt) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    entries.push_back(std::move(row));
  }
  json doc = {{"order", m.rows()}, {"entries", std::move(entries)}};
  if (metadata) {
    json meta = {{"label", metadata->label}};
    if (metadata->seed) meta["seed"] = *metadata->seed;
    meta["provenance"] = metadata->provenance;
    doc["metadata"] = std::move(meta);
  }
  return doc;
}

inline MatrixDocument matrix_from_json(const json& j) {
  const std::size_t n = detail::count_field(j, "order");
  const json& entries = detail::field(j, "entries");
  if (!entries.is_array() || entries.size() != n) detail::malformed("entries must have 'order' rows");
  MatrixDocument doc{Matrix(n, n), std::nullopt};
  for (std::size_t r = 0; r < n; ++r) {
    if (!entries[r].is_array() || entries[r].size() != n) detail::malformed("entries must be square");
    for (std::size_t c = 0; c < n; ++c) doc.matrix(r, c) = scalar_from_json(entries[r][c]);
  }
  if (j.contains("metadata")) {
    const json& meta = j.at("metadata");
    MatrixMetadata md;
    if (meta.contains("label")) md.label = detail::string_of(meta.at("label"), "label");
    if (meta.contains("seed")) md.seed = detail::count_field(meta, "seed");
    if (meta.contains("provenance")) md.provenance = detail::string_of(meta.at("provenance"), "provenance");
    doc.metadata = std::move(md);
  }
  return doc;
}

inline json to_json(const JordanStructure& js) {
  json out = json::array();
  for (const auto& [b, m] : js.blocks())
    out.push_back({{"lambda", to_json(b.lambda)}, {"size", b.size}, {"multiplicity", m}});
  return out;
}

inline json to_json(const StrongRealityReport& report) {
  json violations = json::array();
  for (const auto& [b, m] : report.violations)
    violations.push_back({{"lambda", to_json(b.lambda)}, {"size", b.size}, {"multiplicity", m}});
  return {{"verdict", report.verdict}, {"violations", std::move(violations)}};
}

inline std::string to_string(CanonicalPolicy p) {
  return p == CanonicalPolicy::Prop24 ? "prop24" : "reverser-friendly";
}

inline CanonicalPolicy policy_from_string(const std::string& s) {
  if (s == "prop24") return CanonicalPolicy::Prop24;
  if (s == "reverser-friendly") return CanonicalPolicy::ReverserFriendly;
  detail::malformed("unknown policy '" + s + "'");
}

inline json to_json(const CanonicalSpec& spec) {
  json blocks = json::array();
  for (const auto& b : spec.blocks) {
    if (const auto* p = std::get_if<PairBlock>(&b))
      blocks.push_back({{"type", "pair"}, {"lambda", to_json(p->lambda)}, {"k", p->k}});
    else
      blocks.push_back({{"type", "even-nil"}, {"l", std::get<EvenNilBlock>(b).l}});
  }
  return {{"family", "hamiltonian"}, {"policy", to_string(spec.policy)}, {"blocks", std::move(blocks)}};
}

inline json to_json(const SkewCanonicalSpec& spec) {
  json blocks = json::array();
  for (const auto& b : spec.blocks) blocks.push_back({{"lambda", to_json(b.lambda)}, {"k", b.k}});
  return {{"family", "skew-hamiltonian"}, {"blocks", std::move(blocks)}};
}

/// Block list in the given order; no sorting.
inline std::variant<CanonicalSpec, SkewCanonicalSpec> spec_from_json(const json& j) {
  const std::string family = j.contains("family") ? detail::string_of(j.at("family"), "family") : "hamiltonian";
  const json& blocks = detail::field(j, "blocks");
  if (!blocks.is_array() || blocks.empty()) detail::malformed("blocks must be a nonempty array");
  if (family == "skew-hamiltonian") {
    SkewCanonicalSpec spec;
    for (const auto& b : blocks) {
      const std::size_t k = detail::count_field(b, "k");
      if (k == 0) detail::malformed("block size must be positive");
      spec.blocks.push_back({scalar_from_json(detail::field(b, "lambda")), k});
    }
    return spec;
  }
  if (family != "hamiltonian") detail::malformed("unknown family '" + family + "'");
  CanonicalSpec spec;
  if (j.contains("policy")) spec.policy = policy_from_string(detail::string_of(j.at("policy"), "policy"));
  for (const auto& b : blocks) {
    const std::string type = detail::string_of(detail::field(b, "type"), "type");
    if (type == "pair") {
      const std::size_t k = detail::count_field(b, "k");
      if (k == 0) detail::malformed("block size must be positive");
      spec.blocks.push_back(PairBlock{scalar_from_json(detail::field(b, "lambda")), k});
    } else if (type == "even-nil") {
      const std::size_t l = detail::count_field(b, "l");
      if (l == 0) detail::malformed("block size must be positive");
      spec.blocks.push_back(EvenNilBlock{l});
    } else {
      detail::malformed("unknown block type '" + type + "'");
    }
  }
  return spec;
}

inline std::string to_string(ReverserKind k) {
  return k == ReverserKind::Involution ? "involution" : "skew-involution";
}

inline std::string to_string(SubjectClass c) {
  return c == SubjectClass::Hamiltonian ? "hamiltonian" : "skew-hamiltonian";
}

inline json to_json(const CertificateChecks& c) {
  return {{"symplectic", c.symplectic},
          {"order", c.order},
          {"reversal", c.reversal},
          {"subject_structure", c.subject_structure}};
}

inline json to_json(const ReverserCertificate& cert, const std::optional<StrongRealityReport>& classification = {}) {
  json doc = {{"subject", to_json(cert.subject)},
              {"reverser", to_json(cert.reverser)},
              {"kind", to_string(cert.kind)},
              {"subject_class", to_string(cert.subject_class)},
              {"checks", to_json(cert.checks)}};
  if (classification) doc["classification"] = to_json(*classification);
  return doc;
}

/// Subject, reverser, kind and subject class; stored checks are ignored.
inline ReverserCertificate certificate_from_json(const json& j) {
  ReverserCertificate cert;
  cert.subject = matrix_from_json(detail::field(j, "subject")).matrix;
  cert.reverser = matrix_from_json(detail::field(j, "reverser")).matrix;
  const std::string kind = detail::string_of(detail::field(j, "kind"), "kind");
  if (kind == "involution")
    cert.kind = ReverserKind::Involution;
  else if (kind == "skew-involution")
    cert.kind = ReverserKind::SkewInvolution;
  else
    detail::malformed("unknown certificate kind '" + kind + "'");
  if (j.contains("subject_class")) {
    const std::string cls = detail::string_of(j.at("subject_class"), "subject_class");
    if (cls == "hamiltonian")
      cert.subject_class = SubjectClass::Hamiltonian;
    else if (cls == "skew-hamiltonian")
      cert.subject_class = SubjectClass::SkewHamiltonian;
    else
      detail::malformed("unknown subject class '" + cls + "'");
  }
  return cert;
}

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    detail::malformed(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace spreal::io
