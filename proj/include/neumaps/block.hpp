#pragma once

// Block templates: the finite gadgets chained together to form an infinite
// map. A template owns its darts and every x-cycle is local. The single glue
// to the right neighbour is a y-cycle slot `kNextPort` that stands for the
// neighbour's left port dart.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace neumaps {

inline constexpr int kNextPort = -1;

struct MapType {
  int p = 3;  // black rotation order
  int q = 2;  // white rotation order; q == 2 uses the reduced dart model

  bool operator==(const MapType&) const = default;
};

enum class MapErrorCode {
  DanglingPort,
  DartInTwoCycles,
  AnchorOnLoop,
  CycleLength,
  UnknownBlock,
  BadTopology,
  OutOfModel,
  InvalidDescription,
  WrongTrackCount,
};

std::string_view to_string(MapErrorCode c);

class MapError : public std::runtime_error {
 public:
  MapError(MapErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  MapErrorCode code() const { return code_; }

 private:
  MapErrorCode code_;
};

struct BlockTemplate {
  std::string id;
  std::vector<std::string> darts;
  std::vector<std::vector<int>> x_cycles;  // counter-clockwise rotations
  std::vector<std::vector<int>> y_cycles;  // may reference kNextPort once
  std::optional<int> left_port;            // absent only for the head block
  std::map<std::string, int> marks;        // named darts (e.g. "principal")

  int dart(std::string_view name) const;
  bool operator==(const BlockTemplate&) const = default;
};

/// Incremental construction of templates by dart name.
class TemplateBuilder {
 public:
  explicit TemplateBuilder(std::string id) { t_.id = std::move(id); }

  int dart(const std::string& name);
  /// Adds darts as needed. Use "+" for the next block's left port in y().
  TemplateBuilder& x(std::initializer_list<std::string> ccw);
  TemplateBuilder& x(const std::vector<std::string>& ccw);
  TemplateBuilder& y(std::initializer_list<std::string> ccw);
  TemplateBuilder& y(const std::vector<std::string>& ccw);
  TemplateBuilder& left_port(const std::string& name);
  TemplateBuilder& mark(const std::string& mark, const std::string& name);

  BlockTemplate build() const { return t_; }

 private:
  std::vector<int> resolve(const std::vector<std::string>& names);
  BlockTemplate t_;
  std::map<std::string, int> index_;
};

/// Resolves a catalog block identifier such as "nh.b1" or "np.a(p=5,dec=01)".
/// Defined by the catalog; throws MapError(UnknownBlock).
BlockTemplate resolve_catalog_block(const std::string& id, const MapType& type);

}  // namespace neumaps
