#pragma once

// Structured text for map descriptions and analysis results, and DOT export
// of a window.

#include <json.hpp>
#include <string>
#include <string_view>

#include "neumaps/analysis.hpp"
#include "neumaps/crystal.hpp"
#include "neumaps/model.hpp"
#include "neumaps/primitivity.hpp"
#include "neumaps/subgroup.hpp"

namespace neumaps {

using Json = nlohmann::ordered_json;

inline constexpr int kCertificateSchemaVersion = 1;

/// Raised for malformed structured text; carries the 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses JSON text, reporting errors with line and column.
Json parse_json(std::string_view text);

Json to_json(const MapDescription& d);
/// Also accepts a report or certificate document carrying a "map" field.
MapDescription description_from_json(const Json& j);
std::string export_description(const MapDescription& d);
/// Accepts either a catalog expression or a JSON description document.
MapDescription load_description(std::string_view text);

Json to_json(const PointRef& p);
PointRef point_from_json(const Json& j);

Json to_json(const RelatorReport& r);
Json to_json(const CensusReport& r);
Json to_json(const Schema& s);
Schema schema_from_json(const Json& j);
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);
Json to_json(const PrimitivityVerdict& v);
Json to_json(const Presentation& p);
Json to_json(const FreeProductSignature& s);
Json to_json(const TorsionReport& r);
Json to_json(const OrbitReport& r);
Json to_json(const ShiftResult& r);
Json to_json(const AffineIsometry& g);
AffineIsometry isometry_from_json(const Json& j);
Json to_json(const IsometryClass& c);
Json to_json(const NonparabolicityCertificate& c);
NonparabolicityCertificate nonparabolicity_from_json(const Json& j);
Json to_json(const PetriePath& p, bool with_vertices = false);

/// Certificate document: {"schema_version", "kind", "map", "certificate"}.
Json certificate_document(const MapDescription& d, const Certificate& c);
Json certificate_document(const NonparabolicityCertificate& c);

/// Window subgraph: black vertices filled, free edges as half-edges, darts
/// labelled by their z-index and boundary darts dashed.
std::string to_dot(const CompiledModel& m, Label radius);

}  // namespace neumaps
