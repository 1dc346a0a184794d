#include "neumaps/analysis.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace neumaps {

int cycle_length(const CompiledModel& m, Gen g, const PointRef& p, int limit) {
  PointRef cur = p;
  for (int k = 1; k <= limit; ++k) {
    cur = m.act(g, 1, cur);
    if (cur == p) return k;
  }
  return 0;
}

RelatorReport verify_relators(const CompiledModel& m, Label radius) {
  if (radius < 1) throw std::invalid_argument("verify_relators: radius must be >= 1");
  RelatorReport r;
  r.radius = radius;
  const int p = m.type().p, q = m.type().q;
  const int limit = 4 * std::max(p, q) + 64;
  for (const auto& pt : m.window(radius)) {
    ++r.points_checked;
    for (Gen g : {Gen::X, Gen::Y}) {
      const int len = cycle_length(m, g, pt, limit);
      const int order = g == Gen::X ? p : q;
      (g == Gen::X ? r.x_lengths : r.y_lengths).insert(len);
      if (len == 0 || order % len != 0) {
        r.pass = false;
        if (r.violations.size() < 8) r.violations.push_back({g, pt, len});
      }
    }
  }
  return r;
}

CensusReport census(const CompiledModel& m, Label radius) {
  if (radius < 1) throw std::invalid_argument("census: radius must be >= 1");
  CensusReport c;
  c.radius = radius;
  c.track_count = m.track_count();
  auto loops_in = [&](int t) {
    std::size_t n = 0;
    for (const auto& cyc : m.shapes()[t].closed) n += cyc.size() == 1;
    return n;
  };
  for (std::size_t l = 0; l < m.core_size(); ++l) c.loop_points_core += loops_in(m.template_index(static_cast<BlockIndex>(l)));
  const auto core = static_cast<BlockIndex>(m.core_size());
  for (std::size_t k = 0; k < m.period_size(); ++k) {
    const int t = m.template_index(core + static_cast<BlockIndex>(k));
    c.loop_points_per_period += loops_in(t);
    c.finite_cycles_per_period += m.shapes()[t].closed.size();
  }
  // Witness: the first finite z-cycle in chain order.
  const auto [lo, hi] = m.block_range(radius);
  const BlockIndex scan_hi = std::max<BlockIndex>(hi, core + static_cast<BlockIndex>(m.period_size()));
  for (BlockIndex l = lo; l <= scan_hi && !c.finite_z_cycle; ++l) {
    const auto& sh = m.block_shape(l);
    if (sh.closed.empty()) continue;
    std::vector<PointRef> cyc;
    for (int d : sh.closed.front()) cyc.push_back(LoopPoint{l, d});
    c.finite_z_cycle = cyc;
  }
  if (!m.one_ended() && !c.finite_z_cycle && m.has_off_track_darts()) {
    for (BlockIndex l = -static_cast<BlockIndex>(m.left_period_size()); l < 0 && !c.finite_z_cycle; ++l) {
      const auto& sh = m.block_shape(l);
      if (sh.closed.empty()) continue;
      std::vector<PointRef> cyc;
      for (int d : sh.closed.front()) cyc.push_back(LoopPoint{l, d});
      c.finite_z_cycle = cyc;
    }
  }
  c.is_nonparabolic = !m.has_off_track_darts();
  c.is_neumann = c.is_nonparabolic && c.track_count == 1;
  const int limit = 4 * std::max(m.type().p, m.type().q) + 64;
  for (const auto& pt : m.window(radius)) {
    const int xl = cycle_length(m, Gen::X, pt, limit);
    const int yl = cycle_length(m, Gen::Y, pt, limit);
    c.x_lengths.insert(xl);
    c.y_lengths.insert(yl);
    if (xl == 1 || yl == 1) ++c.terminal_edges;
  }
  return c;
}

namespace {

Label prefix_extent(const CompiledModel& m) {
  Label e = 0;
  for (std::size_t l = 0; l < std::max<std::size_t>(m.core_size(), 1); ++l) {
    const auto& t = m.block_template(static_cast<BlockIndex>(l));
    for (int d = 0; d < static_cast<int>(t.darts.size()); ++d) {
      const auto pt = m.point_of({static_cast<BlockIndex>(l), d});
      if (const auto* tp = std::get_if<TrackPoint>(&pt)) e = std::max(e, std::abs(tp->index));
    }
  }
  return e;
}

void require_neumann(const CompiledModel& m) {
  if (m.track_count() != 1 || m.has_off_track_darts())
    throw MapError(MapErrorCode::WrongTrackCount, "shift_equivalent needs single-track models without loop points");
}

}  // namespace

YTable tabulate_y(const CompiledModel& m, Label radius) {
  require_neumann(m);
  YTable t;
  t.radius = radius;
  t.prefix_extent = prefix_extent(m);
  t.period_labels = m.upper_period_slope() + m.lower_period_slope();
  t.y.reserve(static_cast<std::size_t>(2 * radius + 1));
  for (Label i = -radius; i <= radius; ++i) t.y.push_back(std::get<TrackPoint>(m.act(Gen::Y, 1, TrackPoint{0, i})).index);
  return t;
}

Label certified_shift_bound(const CompiledModel& a, const CompiledModel& b) {
  require_neumann(a);
  require_neumann(b);
  const Label pa = a.upper_period_slope() + a.lower_period_slope();
  const Label pb = b.upper_period_slope() + b.lower_period_slope();
  return prefix_extent(a) + prefix_extent(b) + std::lcm(pa, pb);
}

std::optional<Label> shift_equivalent(const YTable& a, const YTable& b, Label radius, Label shift_bound) {
  if (b.radius < radius || a.radius < radius + shift_bound)
    throw std::invalid_argument("shift_equivalent: tables do not cover the window");
  // Shifts are tried in order of increasing magnitude.
  for (Label k = 0; k <= 2 * shift_bound; ++k) {
    const Label s = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    bool ok = true;
    for (Label i = -radius; i <= radius && ok; ++i) ok = b.at(i) == a.at(i + s) - s;
    if (ok) return s;
  }
  return std::nullopt;
}

ShiftResult shift_equivalent(const CompiledModel& a, const CompiledModel& b, Label radius, Label shift_bound) {
  ShiftResult r;
  r.certified_bound = certified_shift_bound(a, b);
  r.certified = shift_bound >= r.certified_bound;
  // The comparison window must reach past both prefixes and a full common period.
  const Label window = std::max(radius, r.certified_bound + shift_bound);
  const YTable ta = tabulate_y(a, window + shift_bound);
  const YTable tb = tabulate_y(b, window);
  r.shift = shift_equivalent(ta, tb, window, shift_bound);
  return r;
}

}  // namespace neumaps
