#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "neumaps/block.hpp"
#include "neumaps/word.hpp"

namespace neumaps {

using Label = std::int64_t;
using BlockIndex = std::int64_t;

struct BlockSource {
  enum class Kind { PrefixThenPeriodic, Periodic, BiInfinite };

  Kind kind = Kind::PrefixThenPeriodic;
  std::vector<std::string> prefix;  // core blocks; prefix[0] is the head when one-ended
  std::vector<std::string> period;  // right tail
  std::vector<std::string> left;    // left tail (BiInfinite), in left-to-right order

  bool one_ended() const { return kind == Kind::PrefixThenPeriodic; }
  bool operator==(const BlockSource&) const = default;
};

struct Anchor {
  BlockIndex block = 0;
  std::string dart;

  bool operator==(const Anchor&) const = default;
};

/// Finite description of an infinite map: a typed block chain with one anchor
/// per z-track (alpha, and alpha' for two-ended chains).
struct MapDescription {
  MapType type;
  BlockSource source;
  std::vector<Anchor> anchors;
  std::map<std::string, BlockTemplate> templates;  // inline overrides of catalog ids
  std::string catalog_name;                        // e.g. "np(3)"; informational

  bool operator==(const MapDescription&) const = default;
};

struct TrackPoint {
  int track = 0;
  Label index = 0;
  auto operator<=>(const TrackPoint&) const = default;
};

struct LoopPoint {
  BlockIndex block = 0;
  int dart = 0;
  auto operator<=>(const LoopPoint&) const = default;
};

/// A dart: a position on an infinite z-track, or a dart off every track
/// (z-fixed loop points, or members of a finite z-cycle).
using PointRef = std::variant<TrackPoint, LoopPoint>;

inline PointRef track_point(Label i, int track = 0) { return TrackPoint{track, i}; }
std::string to_string(const PointRef& p);

struct DartSite {
  BlockIndex block = 0;
  int dart = 0;
  auto operator<=>(const DartSite&) const = default;
};

enum class Pass { Upper, Lower, Head, Closed };

/// Derived per-template data: local permutations and the z-passes.
struct BlockShape {
  std::vector<int> x_next, x_prev;
  std::vector<int> y_next, y_prev;  // kNextPort / kPrevBlock for the glue
  int before_next = -1;             // y(before_next) = next block's left port
  int after_next = -1;              // y(next left port) = after_next
  std::vector<int> upper, lower, head;
  std::vector<std::pair<Pass, int>> role;  // pass and offset inside it
  std::vector<std::vector<int>> closed;    // local finite z-cycles
  std::vector<int> closed_z_next;
};

inline constexpr int kPrevBlock = -2;

/// Eventually periodic run of lengths with O(log) prefix sums and lookup.
class Ruler {
 public:
  Ruler() = default;
  Ruler(const std::vector<Label>& prefix, const std::vector<Label>& period);

  Label start(std::int64_t k) const;
  std::pair<std::int64_t, Label> locate(Label pos) const;
  Label period_total() const { return period_total_; }
  std::size_t prefix_count() const { return pre_cum_.size() - 1; }
  std::size_t period_count() const { return per_cum_.size() - 1; }

 private:
  std::vector<Label> pre_cum_{0}, per_cum_{0};
  Label period_total_ = 0;
};

struct CompileOptions {
  bool strict_cycle_lengths = true;  // reject x/y cycles not dividing p/q
};

class CompiledModel {
 public:
  const MapDescription& description() const { return desc_; }
  const MapType& type() const { return desc_.type; }
  bool one_ended() const { return desc_.source.one_ended(); }
  int track_count() const { return one_ended() ? 1 : 2; }

  PointRef act(Gen g, int power, const PointRef& p) const;
  PointRef act(const Letter& l, const PointRef& p) const { return act(l.gen, l.power, p); }
  PointRef act(const Word& w, PointRef p) const;

  DartSite locate(const PointRef& p) const;
  PointRef point_of(const DartSite& s) const;
  DartSite step(const DartSite& s, Gen g, int power) const;

  // Chain structure.
  int template_index(BlockIndex l) const;
  const BlockTemplate& block_template(BlockIndex l) const { return templates_[template_index(l)]; }
  const BlockShape& block_shape(BlockIndex l) const { return shapes_[template_index(l)]; }
  const std::vector<BlockTemplate>& templates() const { return templates_; }
  const std::vector<BlockShape>& shapes() const { return shapes_; }
  bool valid_block(BlockIndex l) const { return !one_ended() || l >= 0; }

  /// Core blocks are [0, core_size); the right tail repeats period_size blocks.
  std::size_t core_size() const { return core_.size(); }
  std::size_t period_size() const { return right_.size(); }
  std::size_t left_period_size() const { return left_.size(); }
  /// Template indices of blocks whose structure recurs forever (tails).
  std::vector<int> tail_templates() const;
  /// Template indices used anywhere.
  std::vector<int> used_templates() const;

  /// Label increase per right-tail period on the upper (rightward) pass and
  /// label decrease per period on the lower pass.
  Label upper_period_slope() const;
  Label lower_period_slope() const;
  /// Label of the first upper-pass dart of block l (rightward track).
  Label upper_start(BlockIndex l) const;
  Label lower_start(BlockIndex l) const;  // label of the first lower-pass dart

  /// Smallest block range covering every track label with |i| <= radius.
  std::pair<BlockIndex, BlockIndex> block_range(Label radius) const;
  /// Track points with |i| <= radius plus off-track darts of the covering blocks.
  std::vector<PointRef> window(Label radius) const;
  bool has_off_track_darts() const;

  Label anchor_position(int track) const { return anchor_pos_[track]; }

  /// Tail of one side of a track: labels beyond `start` (>= start on the
  /// positive side, <= start on the negative side) repeat their local
  /// structure with the returned label period.
  struct TrackTail {
    Label start = 0;
    Label period = 0;
  };
  TrackTail track_tail(int track, bool positive) const;

 private:
  friend CompiledModel compile(const MapDescription&, const CompileOptions&);

  Label position_of(int track, const DartSite& s) const;

  MapDescription desc_;
  std::vector<BlockTemplate> templates_;
  std::vector<BlockShape> shapes_;
  std::vector<int> core_, right_, left_;  // template indices
  // One-ended: head length, upper/lower rulers over blocks 1.. .
  // Two-ended: rulers over blocks 0.. (right) and -1, -2, .. (left).
  Label head_len_ = 0;
  Ruler up_right_, lo_right_, up_left_, lo_left_;
  std::vector<Label> anchor_pos_;
};

CompiledModel compile(const MapDescription& desc, const CompileOptions& opts = {});

}  // namespace neumaps
