#pragma once

// Independent reference models used by the tests.
//
// Unrolled: explicit finite x and y arrays for blocks lo..hi of a chain. z is
// derived from them as (xy)^-1 and darts are labelled by walking z from an
// anchor. It shares no offset arithmetic with CompiledModel.
//
// NhTable: y of the map for a 0/1 sequence h, tabulated straight from the
// block rules (fixed points and transpositions per block).

#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "neumaps/catalog.hpp"
#include "neumaps/model.hpp"

namespace oracle {

using neumaps::BlockIndex;
using neumaps::Label;

struct Unrolled {
  BlockIndex lo = 0, hi = 0;
  std::vector<std::pair<BlockIndex, int>> site;
  std::map<std::pair<BlockIndex, int>, int> id;
  std::vector<int> x, y, xi, yi;  // -1 where the glue leaves the range

  int z(int d) const {
    const int a = yi[static_cast<std::size_t>(d)];
    return a < 0 ? -1 : xi[static_cast<std::size_t>(a)];
  }
  int zinv(int d) const {
    const int a = x[static_cast<std::size_t>(d)];
    return a < 0 ? -1 : y[static_cast<std::size_t>(a)];
  }
  int dart(BlockIndex l, const std::string& name, const neumaps::CompiledModel& m) const {
    return id.at({l, m.block_template(l).dart(name)});
  }
};

inline Unrolled unroll(const neumaps::CompiledModel& m, BlockIndex lo, BlockIndex hi) {
  Unrolled u;
  u.lo = lo;
  u.hi = hi;
  for (BlockIndex l = lo; l <= hi; ++l) {
    const auto& t = m.block_template(l);
    for (int d = 0; d < static_cast<int>(t.darts.size()); ++d) {
      u.id[{l, d}] = static_cast<int>(u.site.size());
      u.site.push_back({l, d});
    }
  }
  const std::size_t n = u.site.size();
  u.x.assign(n, -1);
  u.y.assign(n, -1);
  for (BlockIndex l = lo; l <= hi; ++l) {
    const auto& t = m.block_template(l);
    for (const auto& c : t.x_cycles)
      for (std::size_t k = 0; k < c.size(); ++k) u.x[u.id[{l, c[k]}]] = u.id[{l, c[(k + 1) % c.size()]}];
    auto resolve = [&](int d) -> int {
      if (d != neumaps::kNextPort) return u.id[{l, d}];
      if (l + 1 > hi) return -1;
      return u.id[{l + 1, *m.block_template(l + 1).left_port}];
    };
    for (const auto& c : t.y_cycles)
      for (std::size_t k = 0; k < c.size(); ++k) {
        const int from = resolve(c[k]), to = resolve(c[(k + 1) % c.size()]);
        if (from >= 0 && to >= 0) u.y[static_cast<std::size_t>(from)] = to;
      }
  }
  u.xi.assign(n, -1);
  u.yi.assign(n, -1);
  for (std::size_t d = 0; d < n; ++d) {
    if (u.x[d] >= 0) u.xi[static_cast<std::size_t>(u.x[d])] = static_cast<int>(d);
    if (u.y[d] >= 0) u.yi[static_cast<std::size_t>(u.y[d])] = static_cast<int>(d);
  }
  return u;
}

/// Labels of the z-track through `anchor`, walked in both directions until
/// the walk leaves the unrolled range.
inline std::unordered_map<int, Label> walk_labels(const Unrolled& u, int anchor) {
  std::unordered_map<int, Label> lab{{anchor, 0}};
  Label i = 0;
  for (int d = u.z(anchor); d >= 0 && d != anchor; d = u.z(d)) lab[d] = ++i;
  i = 0;
  for (int d = u.zinv(anchor); d >= 0 && d != anchor && !lab.count(d); d = u.zinv(d)) lab[d] = --i;
  return lab;
}

/// y for the map of h, on labels [-radius, radius].
struct NhTable {
  std::unordered_map<Label, Label> y;
  std::vector<Label> g;            // g[l] for l >= 1
  std::vector<Label> x_fixed;      // -3l for h_l = 1
  std::vector<Label> y_fixed;      // 0, -1 and g_l, g_l + 2, g_l + 4 for h_l = 0
};

inline NhTable nh_table(const neumaps::BitSource& h, Label radius) {
  NhTable t;
  auto pair = [&](Label a, Label b) {
    t.y[a] = b;
    t.y[b] = a;
  };
  t.y[0] = 0;
  t.y[-1] = -1;
  t.y_fixed = {0, -1};
  pair(1, -2);
  t.g.push_back(0);
  Label g = 2, ones = 0;
  for (Label l = 1; 3 * l <= radius + 3 || g <= radius; ++l) {
    g = l == 1 ? 2 : 6 * l - 5 * ones - 4;
    t.g.push_back(g);
    const int bit = h.at(static_cast<std::size_t>(l - 1));
    if (bit == 0) {
      for (Label s : {0, 2, 4}) {
        t.y[g + s] = g + s;
        t.y_fixed.push_back(g + s);
      }
      pair(g + 1, -3 * l);
      pair(g + 3, -3 * l - 1);
      pair(g + 5, -3 * l - 2);
    } else {
      pair(-3 * l, -3 * l - 1);
      pair(g, -3 * l - 2);
      t.x_fixed.push_back(-3 * l);
    }
    ones += bit;
  }
  return t;
}

}  // namespace oracle
