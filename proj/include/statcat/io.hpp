/**
 * @file io.hpp
 * @brief JSON documents for models, maps, topologies and certificates.
 *
 * Rationals travel as strings ("3/16", "-2", "0") and are written in
 * lowest terms. Objects are written with sorted keys, so serialization is
 * a deterministic function of the value. Parse failures carry a JSON
 * pointer to the offending field.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "statcat/inference.hpp"
#include "statcat/kernel.hpp"
#include "statcat/model.hpp"
#include "statcat/parametrisation.hpp"
#include "statcat/report.hpp"
#include "statcat/topology.hpp"

namespace statcat {

using Json = nlohmann::json;

inline constexpr const char* kModelSchema = "statcat/model/v1";
inline constexpr const char* kMapSchema = "statcat/map/v1";
inline constexpr const char* kTopologySchema = "statcat/topology/v1";
inline constexpr const char* kCertificateSchema = "statcat/certificate/v1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Whole file as bytes. Throws ParseError when unreadable.
std::string read_file(const std::string& path);

/// Throws ParseError with the byte offset on malformed JSON.
Json parse_json(const std::string& text);

/// Two-space indented, sorted keys, trailing newline.
std::string dump_canonical(const Json& j);

/// Lower-case hex SHA-256.
std::string sha256_hex(const std::string& bytes);

struct ModelDocument {
  FiniteModel model;
  std::optional<Parametrisation> parametrisation;
};

ModelDocument model_document_from_json(const Json& j);
Json model_document_to_json(const ModelDocument& doc);
/// Reads and validates a model file.
FiniteModel parse_model(const std::string& path);

/// Model σ-algebras, when given, take precedence over the document's; the
/// document's point lists must then agree with them, and a document σ that
/// differs is a ParseError.
MeasurableMap map_from_json(const Json& j, const std::optional<SigmaAlgebra>& domain = std::nullopt,
                            const std::optional<SigmaAlgebra>& codomain = std::nullopt);
Json map_to_json(const MeasurableMap& map);

FiniteTopology topology_from_json(const Json& j);
Json topology_to_json(const FiniteTopology& t);

Json rational_json(const Rational& q);
Json measure_json(const RationalMeasure& m);
Json kernel_json(const MarkovKernel& k);
/// Rebuilds a kernel written by kernel_json against the given σ-algebras.
MarkovKernel kernel_from_json(const Json& j, const SigmaAlgebra& domain,
                              const SigmaAlgebra& codomain);

/// Context used to turn witness indices into names and labels. Any pointer
/// may be null, in which case the raw index is written.
struct WitnessContext {
  const FiniteModel* members = nullptr;
  const FiniteModel* other_members = nullptr;
  const SigmaAlgebra* x_sigma = nullptr;
  const SigmaAlgebra* y_sigma = nullptr;
  const FiniteSpace* values_space = nullptr;
};

Json witness_json(const Witness& w, const WitnessContext& ctx);
Json report_json(const CheckReport& r, const WitnessContext& ctx);

/// Re-applies every forward/backward kernel pair found in an equivalence
/// certificate: the forward kernel must send each member of `a` to a
/// member of `b` and the backward kernel must send it back exactly.
/// Returns one message per failed check (empty when everything holds).
std::vector<std::string> verify_equivalence_certificate(const Json& certificate,
                                                        const FiniteModel& a,
                                                        const FiniteModel& b);

}  // namespace statcat
