#pragma once

// Point stabilizer structure: Schreier generators, free-product signature,
// torsion and orbit probes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neumaps/model.hpp"

namespace neumaps {

inline constexpr int kInfiniteOrder = 0;

struct SchreierGenerator {
  enum class Kind { BlackVertex, WhiteVertex, Face, Handle };

  Word word;
  int order = kInfiniteOrder;  // p/d, q/e, or kInfiniteOrder
  Kind kind = Kind::BlackVertex;
  PointRef origin;             // representative dart
  bool incomplete = false;     // its orbit leaves the window
};

std::string to_string(SchreierGenerator::Kind k);

struct Presentation {
  Label radius = 0;
  std::vector<SchreierGenerator> generators;
  std::size_t incomplete = 0;
  std::string note;
};

/// Generators T(b) X^d T(b)^-1 and T(b) Y^e T(b)^-1 for short vertices,
/// T(b) Z^k T(b)^-1 for finite faces, and cycle generators for the remaining
/// independent cycles of the vertex graph. T(i) = Z^i on the base track; other
/// darts are reached by X and Y steps.
Presentation schreier_presentation(const CompiledModel& m, Label radius);

/// Free factor name: "C3", "C2", "Cinf".
std::string factor_name(int order);

struct FreeProductSignature {
  std::map<std::string, Label> prefix;          // core blocks
  std::map<std::string, Label> per_period;      // one right tail period
  std::map<std::string, Label> per_left_period; // one left tail period (two-ended)
  Label period_blocks = 0;
  Label left_period_blocks = 0;

  /// Factors of the given kind per tail block, as a reduced fraction.
  std::pair<Label, Label> density(const std::string& factor) const;
};

FreeProductSignature signature(const CompiledModel& m);

/// Free factors contributed by one block.
std::map<std::string, Label> block_factors(const CompiledModel& m, BlockIndex l);

struct TorsionReport {
  bool torsion_free = true;
  std::optional<PointRef> witness;
  Gen gen = Gen::X;
  int cycle_length = 0;
};

/// Checks every block template in use, then the window, for x-cycles shorter
/// than p or y-cycles shorter than q.
TorsionReport torsion_free(const CompiledModel& m, Label radius);

struct OrbitReport {
  Label radius = 0;
  Label padded_radius = 0;
  std::size_t window_points = 0;  // window darts other than start
  std::size_t reached = 0;        // of those, reached from start
  std::vector<PointRef> missed;   // first few unreached window darts
  std::string caveat;

  bool all_reached() const { return reached == window_points; }
};

/// Orbit of the z-successor of start under the words and their inverses,
/// explored inside the padded window (default 4 * radius) and reported on the
/// radius window without start.
OrbitReport orbit_probe(const CompiledModel& m, const std::vector<Word>& generators, const PointRef& start, Label radius,
                        Label padded_radius = 0);

}  // namespace neumaps
