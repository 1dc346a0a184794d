#pragma once

// Window checks and structural summaries of a compiled model.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "neumaps/model.hpp"

namespace neumaps {

/// Length of the g-cycle through p, or 0 if it does not close within limit.
int cycle_length(const CompiledModel& m, Gen g, const PointRef& p, int limit);

struct CycleViolation {
  Gen gen = Gen::X;
  PointRef witness;
  int length = 0;  // 0: did not close
};

struct RelatorReport {
  bool pass = true;
  Label radius = 0;
  std::size_t points_checked = 0;
  std::set<int> x_lengths, y_lengths;
  std::vector<CycleViolation> violations;  // at most a few witnesses
};

/// Checks that every x- and y-cycle meeting the window has length dividing p
/// resp. q.
RelatorReport verify_relators(const CompiledModel& m, Label radius);

struct CensusReport {
  int track_count = 0;
  std::size_t loop_points_core = 0;        // z-fixed darts in the core blocks
  std::size_t loop_points_per_period = 0;  // z-fixed darts per tail period
  std::size_t finite_cycles_per_period = 0;
  std::set<int> x_lengths, y_lengths;       // over the window
  std::optional<std::vector<PointRef>> finite_z_cycle;
  bool is_nonparabolic = false;
  bool is_neumann = false;
  std::size_t terminal_edges = 0;  // over the window
  Label radius = 0;
};

CensusReport census(const CompiledModel& m, Label radius);

/// y on the labels [-radius, radius] of a single-track model.
struct YTable {
  Label radius = 0;
  std::vector<Label> y;  // y[i + radius]
  Label prefix_extent = 0;
  Label period_labels = 0;

  Label at(Label i) const { return y[static_cast<std::size_t>(i + radius)]; }
};

YTable tabulate_y(const CompiledModel& m, Label radius);

/// Prefix label extent of both models plus the lcm of their tail label
/// periods.
Label certified_shift_bound(const CompiledModel& a, const CompiledModel& b);

struct ShiftResult {
  std::optional<Label> shift;
  bool certified = false;  // shift_bound reached the certified bound
  Label certified_bound = 0;
};

/// Searches s with |s| <= shift_bound and y_b(i) = y_a(i + s) - s for all
/// |i| <= radius. Both models must be Neumann (one track, no loop points).
ShiftResult shift_equivalent(const CompiledModel& a, const CompiledModel& b, Label radius, Label shift_bound);
std::optional<Label> shift_equivalent(const YTable& a, const YTable& b, Label radius, Label shift_bound);

}  // namespace neumaps
