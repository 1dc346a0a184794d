#include "neumaps/subgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace neumaps {

std::string to_string(SchreierGenerator::Kind k) {
  switch (k) {
    case SchreierGenerator::Kind::BlackVertex: return "black-vertex";
    case SchreierGenerator::Kind::WhiteVertex: return "white-vertex";
    case SchreierGenerator::Kind::Face: return "face";
    case SchreierGenerator::Kind::Handle: return "handle";
  }
  return "?";
}

std::string factor_name(int order) { return order == kInfiniteOrder ? "Cinf" : "C" + std::to_string(order); }

namespace {

/// Transversal word Z^base followed by a short tail of X/Y letters.
struct Trans {
  Label base = 0;
  std::vector<Letter> tail;

  Word word() const { return Word::gen(Gen::Z, static_cast<int>(base)) * Word(tail); }
};

struct Orbit {
  std::vector<DartSite> darts;  // in generator order starting at the key dart
  DartSite key;                 // smallest site
};

Orbit orbit_of(const CompiledModel& m, Gen g, const DartSite& s) {
  Orbit o;
  DartSite cur = s;
  do {
    o.darts.push_back(cur);
    cur = m.step(cur, g, 1);
  } while (cur != s);
  o.key = *std::min_element(o.darts.begin(), o.darts.end());
  return o;
}

struct UnionFind {
  std::map<DartSite, DartSite> parent;

  DartSite find(const DartSite& a) {
    auto it = parent.find(a);
    if (it == parent.end()) {
      parent[a] = a;
      return a;
    }
    if (it->second == a) return a;
    const DartSite r = find(it->second);
    parent[a] = r;
    return r;
  }
  bool unite(const DartSite& a, const DartSite& b) {
    const DartSite ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
    return true;
  }
};

class WindowTransversal {
 public:
  WindowTransversal(const CompiledModel& m, Label radius) : m_(m), radius_(radius) {
    std::tie(lo_, hi_) = m.block_range(radius);
    std::deque<DartSite> queue;
    for (BlockIndex l = lo_; l <= hi_; ++l) {
      const auto n = static_cast<int>(m.block_template(l).darts.size());
      for (int d = 0; d < n; ++d) {
        const DartSite s{l, d};
        const PointRef pt = m.point_of(s);
        const auto* tp = std::get_if<TrackPoint>(&pt);
        if (tp && tp->track == 0) {
          trans_[s] = Trans{tp->index, {}};
          queue.push_back(s);
        }
      }
    }
    std::sort(queue.begin(), queue.end(), [&](const DartSite& a, const DartSite& b) {
      return std::abs(trans_[a].base) < std::abs(trans_[b].base);
    });
    while (!queue.empty()) {
      const DartSite s = queue.front();
      queue.pop_front();
      for (Gen g : {Gen::X, Gen::Y})
        for (int pw : {1, -1}) {
          const DartSite t = m.step(s, g, pw);
          if (t.block < lo_ - 1 || t.block > hi_ + 1 || trans_.count(t)) continue;
          Trans tr = trans_[s];
          tr.tail.push_back({g, pw});
          trans_[t] = tr;
          queue.push_back(t);
        }
    }
  }

  bool in_window(const DartSite& s) const {
    if (s.block < lo_ || s.block > hi_) return false;
    const PointRef pt = m_.point_of(s);
    const auto* tp = std::get_if<TrackPoint>(&pt);
    return !tp || std::abs(tp->index) <= radius_;
  }

  const Trans& at(const DartSite& s) const {
    const auto it = trans_.find(s);
    if (it == trans_.end()) throw std::logic_error("dart not reached by the window transversal");
    return it->second;
  }
  bool has(const DartSite& s) const { return trans_.count(s) != 0; }

  /// Preferred representative: base-track darts nearest the anchor first.
  DartSite representative(const Orbit& o) const {
    auto key = [&](const DartSite& s) {
      const PointRef pt = m_.point_of(s);
      const auto* tp = std::get_if<TrackPoint>(&pt);
      const bool base = tp && tp->track == 0;
      const bool known = has(s);
      return std::tuple{!known, !base, base ? std::abs(tp->index) : Label{0}, base ? tp->index : Label{0},
                        known ? at(s).tail.size() : std::size_t{0}, s};
    };
    return *std::min_element(o.darts.begin(), o.darts.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
  }

  BlockIndex lo() const { return lo_; }
  BlockIndex hi() const { return hi_; }

 private:
  const CompiledModel& m_;
  Label radius_;
  BlockIndex lo_ = 0, hi_ = 0;
  std::map<DartSite, Trans> trans_;
};

}  // namespace

namespace {

struct OrbitIndex {
  const CompiledModel& m;
  std::map<DartSite, Orbit> orbits[2];  // by key; [0] black, [1] white
  std::map<DartSite, DartSite> keys[2];

  const Orbit& node(Gen g, const DartSite& s) {
    const int w = g == Gen::X ? 0 : 1;
    const auto it = keys[w].find(s);
    if (it != keys[w].end()) return orbits[w].at(it->second);
    Orbit o = orbit_of(m, g, s);
    for (const auto& d : o.darts) keys[w][d] = o.key;
    return orbits[w].emplace(o.key, o).first->second;
  }
};

DartSite node_id(const Orbit& o, Gen g) { return DartSite{o.key.block, g == Gen::Y ? -1 - o.key.dart : o.key.dart}; }

}  // namespace

Presentation schreier_presentation(const CompiledModel& m, Label radius) {
  if (radius < 1) throw std::invalid_argument("schreier_presentation: radius must be >= 1");
  Presentation pres;
  pres.radius = radius;
  const WindowTransversal tv(m, radius);
  const int p = m.type().p, q = m.type().q;
  OrbitIndex idx{m, {}, {}};

  std::vector<DartSite> window;
  for (BlockIndex l = tv.lo(); l <= tv.hi(); ++l) {
    const auto n = static_cast<int>(m.block_template(l).darts.size());
    for (int d = 0; d < n; ++d)
      if (tv.in_window({l, d})) window.push_back({l, d});
  }
  UnionFind uf;
  std::size_t cycle_rank = 0;
  for (const auto& s : window)
    cycle_rank += !uf.unite(node_id(idx.node(Gen::X, s), Gen::X), node_id(idx.node(Gen::Y, s), Gen::Y));

  auto vertex_generator = [&](const Orbit& o, Gen g, const DartSite& rep, const Word& t) {
    SchreierGenerator sg;
    const int len = static_cast<int>(o.darts.size());
    sg.word = (t * Word::gen(g, len) * t.inverse()).reduced();
    sg.order = (g == Gen::X ? p : q) / len;
    sg.kind = g == Gen::X ? SchreierGenerator::Kind::BlackVertex : SchreierGenerator::Kind::WhiteVertex;
    sg.origin = m.point_of(rep);
    sg.incomplete = std::any_of(o.darts.begin(), o.darts.end(), [&](const DartSite& d) { return !tv.in_window(d); });
    return sg;
  };

  const bool neumann = m.track_count() == 1 && !m.has_off_track_darts();
  if (neumann && cycle_rank == 0) {
    // The powers Z^i form a Schreier transversal of a Neumann map.
    std::set<DartSite> seen[2];
    for (const auto& s : window)
      for (Gen g : {Gen::X, Gen::Y}) {
        const Orbit& o = idx.node(g, s);
        if (static_cast<int>(o.darts.size()) >= (g == Gen::X ? p : q) || !seen[g == Gen::X ? 0 : 1].insert(o.key).second)
          continue;
        const DartSite rep = tv.representative(o);
        pres.generators.push_back(vertex_generator(o, g, rep, tv.at(rep).word()));
      }
  } else {
    // Spanning tree of the vertex graph (black and white vertices joined by
    // darts), grown breadth first from the vertex of the base dart.
    std::map<DartSite, Word> tw[2];  // transversal word of a dart seen from its black / white vertex
    std::set<DartSite> in_w(window.begin(), window.end());
    std::set<DartSite> visited;
    std::deque<std::pair<Gen, DartSite>> queue;
    std::map<BlockIndex, std::vector<DartSite>> non_tree;
    std::set<DartSite> tree_edges;
    const DartSite alpha = m.locate(TrackPoint{0, 0});
    auto enter = [&](Gen g, const DartSite& entry, const Word& t) {
      const Orbit& o = idx.node(g, entry);
      visited.insert(node_id(o, g));
      const int w = g == Gen::X ? 0 : 1;
      DartSite cur = entry;
      Word acc = t;
      for (std::size_t k = 0; k < o.darts.size(); ++k) {
        tw[w][cur] = acc;
        acc = acc * Word::gen(g, 1);
        cur = m.step(cur, g, 1);
      }
      if (static_cast<int>(o.darts.size()) < (g == Gen::X ? p : q)) pres.generators.push_back(vertex_generator(o, g, entry, t));
      queue.emplace_back(g, entry);
    };
    enter(Gen::X, alpha, Word());
    tree_edges.insert(alpha);
    while (!queue.empty()) {
      const auto [g, entry] = queue.front();
      queue.pop_front();
      const Gen other = g == Gen::X ? Gen::Y : Gen::X;
      const int w = g == Gen::X ? 0 : 1;
      for (const auto& d : idx.node(g, entry).darts) {
        if (!in_w.count(d)) continue;
        const Orbit& o = idx.node(other, d);
        if (!visited.count(node_id(o, other))) {
          tree_edges.insert(d);
          enter(other, d, tw[w][d]);
        }
      }
    }
    for (const auto& d : window)
      if (!tree_edges.count(d) && tw[0].count(d) && tw[1].count(d)) non_tree[d.block].push_back(d);
    for (const auto& [l, edges] : non_tree) {
      const auto& closed = m.block_shape(l).closed;
      if (edges.size() == closed.size()) {
        // Each finite face of a planar block closes one cycle of the vertex
        // graph; its boundary generates the corresponding free factor.
        for (const auto& cyc : closed) {
          const DartSite s{l, cyc.front()};
          const Word& t = tw[0].count(s) ? tw[0].at(s) : tw[1].at(s);
          SchreierGenerator sg;
          sg.word = (t * Word::gen(Gen::Z, static_cast<int>(cyc.size())) * t.inverse()).reduced();
          sg.kind = SchreierGenerator::Kind::Face;
          sg.origin = m.point_of(s);
          pres.generators.push_back(std::move(sg));
        }
        continue;
      }
      for (const auto& d : edges) {
        SchreierGenerator sg;
        sg.word = (tw[0].at(d) * tw[1].at(d).inverse()).reduced();
        sg.kind = SchreierGenerator::Kind::Handle;
        sg.origin = m.point_of(d);
        pres.generators.push_back(std::move(sg));
      }
    }
  }
  pres.incomplete = static_cast<std::size_t>(
      std::count_if(pres.generators.begin(), pres.generators.end(), [](const auto& g) { return g.incomplete; }));
  pres.note = "generators of the radius-" + std::to_string(radius) + " window; " + std::to_string(pres.incomplete) +
              " touch the window boundary";
  return pres;
}

std::map<std::string, Label> block_factors(const CompiledModel& m, BlockIndex l) {
  const auto& t = m.block_template(l);
  const int p = m.type().p, q = m.type().q;
  std::map<std::string, Label> out;
  for (const auto& c : t.x_cycles) {
    const int len = static_cast<int>(c.size());
    if (len < p) ++out[factor_name(p / len)];
  }
  for (const auto& c : t.y_cycles) {
    const int len = static_cast<int>(c.size());
    if (len < q) ++out[factor_name(q / len)];
  }
  const bool head = m.one_ended() && l == 0;
  const Label free_rank = static_cast<Label>(t.darts.size()) - static_cast<Label>(t.x_cycles.size()) -
                          static_cast<Label>(t.y_cycles.size()) + (head ? 1 : 0);
  if (free_rank < 0) throw std::logic_error("block " + t.id + " has negative cycle rank");
  if (free_rank > 0) out[factor_name(kInfiniteOrder)] += free_rank;
  return out;
}

namespace {

void add_into(std::map<std::string, Label>& acc, const std::map<std::string, Label>& more) {
  for (const auto& [k, v] : more) acc[k] += v;
}

}  // namespace

std::pair<Label, Label> FreeProductSignature::density(const std::string& factor) const {
  const auto it = per_period.find(factor);
  const Label num = it == per_period.end() ? 0 : it->second;
  if (period_blocks == 0) return {0, 1};
  const Label g = std::gcd(num, period_blocks);
  return {num / (g == 0 ? 1 : g), period_blocks / (g == 0 ? 1 : g)};
}

FreeProductSignature signature(const CompiledModel& m) {
  FreeProductSignature s;
  const auto core = static_cast<BlockIndex>(m.core_size());
  for (BlockIndex l = 0; l < core; ++l) add_into(s.prefix, block_factors(m, l));
  s.period_blocks = static_cast<Label>(m.period_size());
  for (BlockIndex l = core; l < core + s.period_blocks; ++l) add_into(s.per_period, block_factors(m, l));
  if (!m.one_ended()) {
    s.left_period_blocks = static_cast<Label>(m.left_period_size());
    for (BlockIndex l = -1; l >= -s.left_period_blocks; --l) add_into(s.per_left_period, block_factors(m, l));
  }
  return s;
}

TorsionReport torsion_free(const CompiledModel& m, Label radius) {
  TorsionReport r;
  const int p = m.type().p, q = m.type().q;
  std::vector<BlockIndex> blocks;
  const auto core = static_cast<BlockIndex>(m.core_size());
  for (BlockIndex l = 0; l < core + static_cast<BlockIndex>(m.period_size()); ++l) blocks.push_back(l);
  for (BlockIndex l = -1; l >= -static_cast<BlockIndex>(m.left_period_size()); --l) blocks.push_back(l);
  // Structural pass over every block shape in use, then the window.
  for (BlockIndex l : blocks) {
    const auto n = static_cast<int>(m.block_template(l).darts.size());
    for (int d = 0; d < n; ++d)
      for (Gen g : {Gen::X, Gen::Y}) {
        const auto len = static_cast<int>(orbit_of(m, g, {l, d}).darts.size());
        if (len < (g == Gen::X ? p : q)) return TorsionReport{false, m.point_of({l, d}), g, len};
      }
  }
  const auto [lo, hi] = m.block_range(radius);
  for (BlockIndex l = lo; l <= hi; ++l) {
    const auto n = static_cast<int>(m.block_template(l).darts.size());
    for (int d = 0; d < n; ++d)
      for (Gen g : {Gen::X, Gen::Y}) {
        const auto len = static_cast<int>(orbit_of(m, g, {l, d}).darts.size());
        if (len < (g == Gen::X ? p : q)) return TorsionReport{false, m.point_of({l, d}), g, len};
      }
  }
  return r;
}

OrbitReport orbit_probe(const CompiledModel& m, const std::vector<Word>& generators, const PointRef& start, Label radius,
                        Label padded_radius) {
  if (radius < 1) throw std::invalid_argument("orbit_probe: radius must be >= 1");
  for (const auto& w : generators)
    if (m.act(w, start) != start)
      throw std::invalid_argument("orbit_probe: " + to_string(w) + " does not fix " + to_string(start));
  OrbitReport r;
  r.radius = radius;
  r.padded_radius = padded_radius > 0 ? std::max(padded_radius, radius) : 4 * radius;
  const auto [plo, phi] = m.block_range(r.padded_radius);
  auto inside = [&](const PointRef& pt, Label rad, BlockIndex lo, BlockIndex hi) {
    if (const auto* tp = std::get_if<TrackPoint>(&pt)) return std::abs(tp->index) <= rad;
    const auto& lp = std::get<LoopPoint>(pt);
    return lp.block >= lo && lp.block <= hi;
  };
  std::vector<Word> moves;
  for (const auto& w : generators) {
    moves.push_back(w);
    moves.push_back(w.inverse());
  }
  // The closure is seeded at the z-successor of start.
  const PointRef seed = m.act(Gen::Z, 1, start);
  std::set<PointRef> reached{seed};
  std::deque<PointRef> frontier{seed};
  while (!frontier.empty()) {
    const PointRef cur = frontier.front();
    frontier.pop_front();
    for (const auto& w : moves) {
      const PointRef nxt = m.act(w, cur);
      if (inside(nxt, r.padded_radius, plo, phi) && reached.insert(nxt).second) frontier.push_back(nxt);
    }
  }
  for (const auto& pt : m.window(radius)) {
    if (pt == start) continue;
    ++r.window_points;
    if (reached.count(pt)) ++r.reached;
    else if (r.missed.size() < 8) r.missed.push_back(pt);
  }
  r.caveat = "closure explored inside radius " + std::to_string(r.padded_radius) +
             "; darts outside it may connect further window points";
  return r;
}

}  // namespace neumaps
