#include "neumaps/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace neumaps {

std::string_view to_string(MapErrorCode c) {
  switch (c) {
    case MapErrorCode::DanglingPort: return "DanglingPort";
    case MapErrorCode::DartInTwoCycles: return "DartInTwoCycles";
    case MapErrorCode::AnchorOnLoop: return "AnchorOnLoop";
    case MapErrorCode::CycleLength: return "CycleLength";
    case MapErrorCode::UnknownBlock: return "UnknownBlock";
    case MapErrorCode::BadTopology: return "BadTopology";
    case MapErrorCode::OutOfModel: return "OutOfModel";
    case MapErrorCode::InvalidDescription: return "InvalidDescription";
    case MapErrorCode::WrongTrackCount: return "WrongTrackCount";
  }
  return "?";
}

int BlockTemplate::dart(std::string_view name) const {
  for (std::size_t i = 0; i < darts.size(); ++i)
    if (darts[i] == name) return static_cast<int>(i);
  throw MapError(MapErrorCode::InvalidDescription, "block '" + id + "' has no dart '" + std::string(name) + "'");
}

int TemplateBuilder::dart(const std::string& name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  const int i = static_cast<int>(t_.darts.size());
  t_.darts.push_back(name);
  index_[name] = i;
  return i;
}

std::vector<int> TemplateBuilder::resolve(const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(n == "+" ? kNextPort : dart(n));
  return out;
}

TemplateBuilder& TemplateBuilder::x(std::initializer_list<std::string> ccw) {
  return x(std::vector<std::string>(ccw));
}
TemplateBuilder& TemplateBuilder::x(const std::vector<std::string>& ccw) {
  t_.x_cycles.push_back(resolve(ccw));
  return *this;
}
TemplateBuilder& TemplateBuilder::y(std::initializer_list<std::string> ccw) {
  return y(std::vector<std::string>(ccw));
}
TemplateBuilder& TemplateBuilder::y(const std::vector<std::string>& ccw) {
  t_.y_cycles.push_back(resolve(ccw));
  return *this;
}
TemplateBuilder& TemplateBuilder::left_port(const std::string& name) {
  t_.left_port = dart(name);
  return *this;
}
TemplateBuilder& TemplateBuilder::mark(const std::string& mark, const std::string& name) {
  t_.marks[mark] = dart(name);
  return *this;
}

std::string to_string(const PointRef& p) {
  std::ostringstream os;
  if (const auto* t = std::get_if<TrackPoint>(&p)) {
    os << t->index;
    if (t->track == 1) os << '\'';
    else if (t->track > 1) os << "@" << t->track;
  } else {
    const auto& l = std::get<LoopPoint>(p);
    os << "loop(" << l.block << ':' << l.dart << ')';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Ruler

Ruler::Ruler(const std::vector<Label>& prefix, const std::vector<Label>& period) {
  for (Label v : prefix) pre_cum_.push_back(pre_cum_.back() + v);
  for (Label v : period) per_cum_.push_back(per_cum_.back() + v);
  period_total_ = per_cum_.back();
}

Label Ruler::start(std::int64_t k) const {
  const auto p = static_cast<std::int64_t>(prefix_count());
  if (k <= p) return pre_cum_[k];
  const auto q = static_cast<std::int64_t>(period_count());
  const std::int64_t r = k - p;
  return pre_cum_.back() + (r / q) * period_total_ + per_cum_[r % q];
}

std::pair<std::int64_t, Label> Ruler::locate(Label pos) const {
  if (pos < pre_cum_.back()) {
    const auto it = std::upper_bound(pre_cum_.begin(), pre_cum_.end(), pos);
    const auto k = static_cast<std::int64_t>(it - pre_cum_.begin()) - 1;
    return {k, pos - pre_cum_[k]};
  }
  const Label r = pos - pre_cum_.back();
  const Label cycles = r / period_total_;
  const Label rem = r % period_total_;
  const auto it = std::upper_bound(per_cum_.begin(), per_cum_.end(), rem);
  const auto j = static_cast<std::int64_t>(it - per_cum_.begin()) - 1;
  return {static_cast<std::int64_t>(prefix_count()) + cycles * static_cast<std::int64_t>(period_count()) + j,
          rem - per_cum_[j]};
}

// ---------------------------------------------------------------------------
// Shape analysis

namespace {

BlockShape analyse(const BlockTemplate& t, const MapType& type, bool head, const CompileOptions& opts) {
  const int n = static_cast<int>(t.darts.size());
  auto fail = [&](MapErrorCode c, const std::string& what) { throw MapError(c, "block '" + t.id + "': " + what); };
  BlockShape s;
  s.x_next.assign(n, -1);
  s.x_prev.assign(n, -1);
  s.y_next.assign(n, -3);
  s.y_prev.assign(n, -3);

  for (const auto& cyc : t.x_cycles) {
    if (cyc.empty()) fail(MapErrorCode::InvalidDescription, "empty x-cycle");
    if (opts.strict_cycle_lengths && type.p % static_cast<int>(cyc.size()) != 0)
      fail(MapErrorCode::CycleLength, "x-cycle of length " + std::to_string(cyc.size()) + " does not divide p");
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const int d = cyc[i];
      if (d < 0 || d >= n) fail(MapErrorCode::InvalidDescription, "x-cycle references an unknown dart");
      if (s.x_next[d] != -1) fail(MapErrorCode::DartInTwoCycles, "dart '" + t.darts[d] + "' lies in two x-cycles");
      s.x_next[d] = cyc[(i + 1) % cyc.size()];
      s.x_prev[cyc[(i + 1) % cyc.size()]] = d;
    }
  }
  for (int d = 0; d < n; ++d)
    if (s.x_next[d] == -1) fail(MapErrorCode::InvalidDescription, "dart '" + t.darts[d] + "' lies in no x-cycle");

  int next_refs = 0;
  for (const auto& cyc : t.y_cycles) {
    if (cyc.empty()) fail(MapErrorCode::InvalidDescription, "empty y-cycle");
    if (opts.strict_cycle_lengths && type.q % static_cast<int>(cyc.size()) != 0)
      fail(MapErrorCode::CycleLength, "y-cycle of length " + std::to_string(cyc.size()) + " does not divide q");
    const auto m = cyc.size();
    for (std::size_t i = 0; i < m; ++i) {
      const int d = cyc[i];
      const int nx = cyc[(i + 1) % m];
      if (d == kNextPort) {
        ++next_refs;
        if (m == 1) fail(MapErrorCode::BadTopology, "glue y-cycle has no local dart");
        s.after_next = nx;
        s.before_next = cyc[(i + m - 1) % m];
        continue;
      }
      if (d < 0 || d >= n) fail(MapErrorCode::InvalidDescription, "y-cycle references an unknown dart");
      if (t.left_port && d == *t.left_port)
        fail(MapErrorCode::DartInTwoCycles, "left port '" + t.darts[d] + "' is owned by the previous block's y-cycle");
      if (s.y_next[d] != -3) fail(MapErrorCode::DartInTwoCycles, "dart '" + t.darts[d] + "' lies in two y-cycles");
      s.y_next[d] = nx;  // may be kNextPort
      if (nx != kNextPort) s.y_prev[nx] = d;
    }
  }
  if (next_refs != 1)
    fail(MapErrorCode::DanglingPort, next_refs == 0 ? "right port is not glued to a neighbour" : "right port glued twice");
  s.y_prev[s.after_next] = kNextPort;
  if (head && t.left_port) fail(MapErrorCode::DanglingPort, "head block has a left port with no neighbour");
  if (!head && !t.left_port) fail(MapErrorCode::DanglingPort, "left port missing on a non-head block");
  if (t.left_port) {
    s.y_next[*t.left_port] = kPrevBlock;
    s.y_prev[*t.left_port] = kPrevBlock;
  }
  for (int d = 0; d < n; ++d)
    if (s.y_next[d] == -3) fail(MapErrorCode::InvalidDescription, "dart '" + t.darts[d] + "' lies in no y-cycle");

  // z = x^-1 after y^-1, restricted to moves that stay inside the block.
  const int left = t.left_port ? *t.left_port : -1;
  auto z_local = [&](int d) { return s.x_prev[s.y_prev[d]]; };
  s.role.assign(n, {Pass::Closed, -1});
  auto walk = [&](int start, int want_exit, Pass pass, std::vector<int>& out) {
    int cur = start;
    for (int steps = 0; steps <= n; ++steps) {
      if (s.role[cur].second != -1) fail(MapErrorCode::BadTopology, "z-passes overlap");
      s.role[cur] = {pass, static_cast<int>(out.size())};
      out.push_back(cur);
      if (cur == want_exit) return;
      if (cur == s.after_next || cur == left)
        fail(MapErrorCode::BadTopology, "z-pass turns back instead of passing through the block");
      cur = z_local(cur);
    }
    fail(MapErrorCode::BadTopology, "z-pass does not leave the block");
  };
  const int lower_entry = s.x_prev[s.before_next];
  if (head) {
    walk(lower_entry, s.after_next, Pass::Head, s.head);
  } else {
    walk(s.x_prev[left], s.after_next, Pass::Upper, s.upper);
    walk(lower_entry, left, Pass::Lower, s.lower);
  }
  s.closed_z_next.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (s.role[d].second != -1) continue;
    std::vector<int> cyc;
    int cur = d;
    do {
      s.role[cur] = {Pass::Closed, static_cast<int>(s.closed.size())};
      cyc.push_back(cur);
      const int nx = z_local(cur);
      s.closed_z_next[cur] = nx;
      cur = nx;
    } while (cur != d && cyc.size() <= static_cast<std::size_t>(n));
    if (cur != d) fail(MapErrorCode::BadTopology, "closed z-walk does not return");
    s.closed.push_back(std::move(cyc));
  }
  return s;
}

std::vector<Label> lengths(const std::vector<BlockShape>& shapes, const std::vector<int>& idx, bool upper,
                           std::size_t from = 0) {
  std::vector<Label> out;
  for (std::size_t i = from; i < idx.size(); ++i)
    out.push_back(static_cast<Label>(upper ? shapes[idx[i]].upper.size() : shapes[idx[i]].lower.size()));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CompiledModel

int CompiledModel::template_index(BlockIndex l) const {
  const auto c = static_cast<BlockIndex>(core_.size());
  if (l >= 0 && l < c) return core_[l];
  if (l >= c) return right_[(l - c) % static_cast<BlockIndex>(right_.size())];
  if (one_ended()) throw MapError(MapErrorCode::OutOfModel, "block index " + std::to_string(l) + " precedes the head");
  const auto m = static_cast<BlockIndex>(left_.size());
  return left_[((l % m) + m) % m];
}

std::vector<int> CompiledModel::tail_templates() const {
  std::set<int> s(right_.begin(), right_.end());
  s.insert(left_.begin(), left_.end());
  return {s.begin(), s.end()};
}

std::vector<int> CompiledModel::used_templates() const {
  std::set<int> s(right_.begin(), right_.end());
  s.insert(left_.begin(), left_.end());
  s.insert(core_.begin(), core_.end());
  return {s.begin(), s.end()};
}

bool CompiledModel::has_off_track_darts() const {
  for (int t : used_templates())
    if (!shapes_[t].closed.empty()) return true;
  return false;
}

Label CompiledModel::upper_period_slope() const { return up_right_.period_total(); }
Label CompiledModel::lower_period_slope() const { return lo_right_.period_total(); }

Label CompiledModel::position_of(int track, const DartSite& s) const {
  const auto& sh = block_shape(s.block);
  const auto [pass, off] = sh.role[s.dart];
  const BlockIndex l = s.block;
  Label pos = 0;
  if (one_ended()) {
    switch (pass) {
      case Pass::Head: pos = off; break;
      case Pass::Upper: pos = head_len_ + up_right_.start(l - 1) + off; break;
      case Pass::Lower: pos = -lo_right_.start(l) + off; break;
      case Pass::Closed: throw MapError(MapErrorCode::OutOfModel, "dart is not on a track");
    }
  } else {
    switch (pass) {
      case Pass::Upper: pos = (l >= 0 ? up_right_.start(l) : -up_left_.start(-l)) + off; break;
      case Pass::Lower: pos = (l < 0 ? lo_left_.start(-l - 1) : -lo_right_.start(l + 1)) + off; break;
      default: throw MapError(MapErrorCode::OutOfModel, "dart is not on a track");
    }
  }
  (void)track;
  return pos;
}

PointRef CompiledModel::point_of(const DartSite& s) const {
  if (!valid_block(s.block)) throw MapError(MapErrorCode::OutOfModel, "block out of model");
  const auto& sh = block_shape(s.block);
  if (s.dart < 0 || s.dart >= static_cast<int>(sh.role.size()))
    throw MapError(MapErrorCode::OutOfModel, "dart out of block");
  const Pass pass = sh.role[s.dart].first;
  if (pass == Pass::Closed) return LoopPoint{s.block, s.dart};
  const int track = (!one_ended() && pass == Pass::Lower) ? 1 : 0;
  return TrackPoint{track, position_of(track, s) - anchor_pos_[track]};
}

DartSite CompiledModel::locate(const PointRef& p) const {
  if (const auto* lp = std::get_if<LoopPoint>(&p)) {
    if (!valid_block(lp->block)) throw MapError(MapErrorCode::OutOfModel, "block out of model");
    const auto& sh = block_shape(lp->block);
    if (lp->dart < 0 || lp->dart >= static_cast<int>(sh.role.size()) || sh.role[lp->dart].first != Pass::Closed)
      throw MapError(MapErrorCode::OutOfModel, "not an off-track dart: " + to_string(p));
    return {lp->block, lp->dart};
  }
  const auto& tp = std::get<TrackPoint>(p);
  if (tp.track < 0 || tp.track >= track_count())
    throw MapError(MapErrorCode::OutOfModel, "unknown track " + std::to_string(tp.track));
  const Label pos = tp.index + anchor_pos_[tp.track];
  if (one_ended()) {
    if (pos >= 0 && pos < head_len_) return {0, shapes_[core_[0]].head[pos]};
    if (pos >= head_len_) {
      const auto [k, off] = up_right_.locate(pos - head_len_);
      return {k + 1, block_shape(k + 1).upper[off]};
    }
    const auto [k, off] = lo_right_.locate(-pos - 1);
    const auto& sh = block_shape(k + 1);
    return {k + 1, sh.lower[sh.lower.size() - 1 - off]};
  }
  if (tp.track == 0) {
    if (pos >= 0) {
      const auto [l, off] = up_right_.locate(pos);
      return {l, block_shape(l).upper[off]};
    }
    const auto [k, off] = up_left_.locate(-pos - 1);
    const auto& sh = block_shape(-(k + 1));
    return {-(k + 1), sh.upper[sh.upper.size() - 1 - off]};
  }
  if (pos >= 0) {
    const auto [k, off] = lo_left_.locate(pos);
    return {-(k + 1), block_shape(-(k + 1)).lower[off]};
  }
  const auto [l, off] = lo_right_.locate(-pos - 1);
  const auto& sh = block_shape(l);
  return {l, sh.lower[sh.lower.size() - 1 - off]};
}

DartSite CompiledModel::step(const DartSite& s, Gen g, int power) const {
  const auto& sh = block_shape(s.block);
  const int d = s.dart;
  switch (g) {
    case Gen::X: return {s.block, power > 0 ? sh.x_next[d] : sh.x_prev[d]};
    case Gen::Y: {
      const int v = power > 0 ? sh.y_next[d] : sh.y_prev[d];
      if (v == kPrevBlock) {
        const auto& prev = block_shape(s.block - 1);
        return {s.block - 1, power > 0 ? prev.after_next : prev.before_next};
      }
      if (v == kNextPort) return {s.block + 1, *block_template(s.block + 1).left_port};
      return {s.block, v};
    }
    case Gen::Z:
      if (power > 0) return step(step(s, Gen::Y, -1), Gen::X, -1);
      return step(step(s, Gen::X, 1), Gen::Y, 1);
  }
  return s;
}

PointRef CompiledModel::act(Gen g, int power, const PointRef& p) const {
  if (power == 0) return p;
  if (g == Gen::Z) {
    if (const auto* tp = std::get_if<TrackPoint>(&p)) {
      if (tp->track < 0 || tp->track >= track_count())
        throw MapError(MapErrorCode::OutOfModel, "unknown track " + std::to_string(tp->track));
      return TrackPoint{tp->track, tp->index + power};
    }
  }
  if (power > 1 || power < -1) {
    PointRef cur = p;
    for (int k = 0; k < std::abs(power); ++k) cur = act(g, power > 0 ? 1 : -1, cur);
    return cur;
  }
  if (g == Gen::Z) {
    const auto site = locate(p);
    const auto& sh = block_shape(site.block);
    const auto& cyc = sh.closed[sh.role[site.dart].second];
    const auto it = std::find(cyc.begin(), cyc.end(), site.dart);
    const auto i = static_cast<std::size_t>(it - cyc.begin());
    const auto m = cyc.size();
    return LoopPoint{site.block, cyc[(i + (power > 0 ? 1 : m - 1)) % m]};
  }
  return point_of(step(locate(p), g, power));
}

PointRef CompiledModel::act(const Word& w, PointRef p) const {
  const auto& ls = w.letters();
  for (std::size_t k = 0; k < ls.size();) {
    const Gen g = ls[k].gen;
    int power = 0;
    for (; k < ls.size() && ls[k].gen == g; ++k) power += ls[k].power;
    p = act(g, power, p);
  }
  return p;
}

std::pair<BlockIndex, BlockIndex> CompiledModel::block_range(Label radius) const {
  BlockIndex lo = 0, hi = 0;
  bool first = true;
  for (int t = 0; t < track_count(); ++t)
    for (Label i : {-radius, radius}) {
      const auto b = locate(TrackPoint{t, i}).block;
      lo = first ? b : std::min(lo, b);
      hi = first ? b : std::max(hi, b);
      first = false;
    }
  if (one_ended()) lo = 0;
  else {
    // The two tracks of a two-ended chain pass every block between extremes.
    lo = std::min<BlockIndex>(lo, 0);
  }
  return {lo, hi};
}

std::vector<PointRef> CompiledModel::window(Label radius) const {
  std::vector<PointRef> out;
  for (int t = 0; t < track_count(); ++t)
    for (Label i = -radius; i <= radius; ++i) out.push_back(TrackPoint{t, i});
  const auto [lo, hi] = block_range(radius);
  for (BlockIndex l = lo; l <= hi; ++l) {
    const auto& sh = block_shape(l);
    for (const auto& cyc : sh.closed)
      for (int d : cyc) out.push_back(LoopPoint{l, d});
  }
  return out;
}

Label CompiledModel::upper_start(BlockIndex l) const {
  const auto& sh = block_shape(l);
  const auto& pass = (one_ended() && l == 0) ? sh.head : sh.upper;
  return std::get<TrackPoint>(point_of({l, pass.front()})).index;
}

Label CompiledModel::lower_start(BlockIndex l) const {
  const auto& sh = block_shape(l);
  const auto& pass = (one_ended() && l == 0) ? sh.head : sh.lower;
  return std::get<TrackPoint>(point_of({l, pass.front()})).index;
}

CompiledModel::TrackTail CompiledModel::track_tail(int track, bool positive) const {
  const Label a = anchor_pos_.at(track);
  auto tail_from = [](const Ruler& r) { return r.start(static_cast<std::int64_t>(r.prefix_count())); };
  if (one_ended()) {
    if (positive) return {head_len_ + tail_from(up_right_) - a, up_right_.period_total()};
    return {-tail_from(lo_right_) - 1 - a, lo_right_.period_total()};
  }
  if (track == 0) {
    if (positive) return {tail_from(up_right_) - a, up_right_.period_total()};
    return {-1 - a, up_left_.period_total()};
  }
  if (positive) return {-a, lo_left_.period_total()};
  return {-tail_from(lo_right_) - 1 - a, lo_right_.period_total()};
}

// ---------------------------------------------------------------------------

CompiledModel compile(const MapDescription& desc, const CompileOptions& opts) {
  if (desc.type.p < 3 || desc.type.q < 2)
    throw MapError(MapErrorCode::InvalidDescription, "map type needs p >= 3 and q >= 2");
  CompiledModel m;
  m.desc_ = desc;
  const auto& src = desc.source;
  std::map<std::string, int> index;
  auto intern = [&](const std::string& id) {
    if (auto it = index.find(id); it != index.end()) return it->second;
    BlockTemplate t;
    if (auto it = desc.templates.find(id); it != desc.templates.end()) t = it->second;
    else t = resolve_catalog_block(id, desc.type);
    const int i = static_cast<int>(m.templates_.size());
    m.templates_.push_back(std::move(t));
    index[id] = i;
    return i;
  };
  switch (src.kind) {
    case BlockSource::Kind::PrefixThenPeriodic:
      if (src.prefix.empty()) throw MapError(MapErrorCode::InvalidDescription, "one-ended chain needs a head block");
      if (src.period.empty()) throw MapError(MapErrorCode::DanglingPort, "chain ends: empty period");
      for (const auto& id : src.prefix) m.core_.push_back(intern(id));
      for (const auto& id : src.period) m.right_.push_back(intern(id));
      break;
    case BlockSource::Kind::Periodic:
      if (src.period.empty()) throw MapError(MapErrorCode::InvalidDescription, "empty period");
      for (const auto& id : src.period) m.right_.push_back(intern(id));
      m.left_ = m.right_;
      break;
    case BlockSource::Kind::BiInfinite:
      if (src.period.empty() || src.left.empty())
        throw MapError(MapErrorCode::DanglingPort, "two-ended chain needs both tails");
      for (const auto& id : src.prefix) m.core_.push_back(intern(id));
      for (const auto& id : src.period) m.right_.push_back(intern(id));
      for (const auto& id : src.left) m.left_.push_back(intern(id));
      break;
  }
  // Every template is analysed once; the head role is fixed per template.
  std::set<int> heads;
  if (src.one_ended()) heads.insert(m.core_[0]);
  for (std::size_t i = 0; i < m.templates_.size(); ++i) {
    const bool head = heads.count(static_cast<int>(i)) > 0;
    m.shapes_.push_back(analyse(m.templates_[i], desc.type, head, opts));
  }
  if (src.one_ended()) {
    for (std::size_t i = 1; i < m.core_.size(); ++i)
      if (m.core_[i] == m.core_[0]) throw MapError(MapErrorCode::DanglingPort, "head block repeated");
    for (int r : m.right_)
      if (r == m.core_[0]) throw MapError(MapErrorCode::DanglingPort, "head block repeated");
    m.head_len_ = static_cast<Label>(m.shapes_[m.core_[0]].head.size());
    m.up_right_ = Ruler(lengths(m.shapes_, m.core_, true, 1), lengths(m.shapes_, m.right_, true));
    m.lo_right_ = Ruler(lengths(m.shapes_, m.core_, false, 1), lengths(m.shapes_, m.right_, false));
  } else {
    std::vector<int> rev(m.left_.rbegin(), m.left_.rend());
    m.up_right_ = Ruler(lengths(m.shapes_, m.core_, true), lengths(m.shapes_, m.right_, true));
    m.lo_right_ = Ruler(lengths(m.shapes_, m.core_, false), lengths(m.shapes_, m.right_, false));
    m.up_left_ = Ruler({}, lengths(m.shapes_, rev, true));
    m.lo_left_ = Ruler({}, lengths(m.shapes_, rev, false));
  }

  if (static_cast<int>(desc.anchors.size()) != m.track_count())
    throw MapError(MapErrorCode::WrongTrackCount, "expected " + std::to_string(m.track_count()) + " anchor(s)");
  m.anchor_pos_.assign(m.track_count(), 0);
  for (int t = 0; t < m.track_count(); ++t) {
    const auto& a = desc.anchors[t];
    if (!m.valid_block(a.block)) throw MapError(MapErrorCode::InvalidDescription, "anchor block out of model");
    const int d = m.block_template(a.block).dart(a.dart);
    const Pass pass = m.block_shape(a.block).role[d].first;
    if (pass == Pass::Closed) throw MapError(MapErrorCode::AnchorOnLoop, "anchor '" + a.dart + "' is off every track");
    const int track = (!m.one_ended() && pass == Pass::Lower) ? 1 : 0;
    if (track != t) throw MapError(MapErrorCode::InvalidDescription, "anchor " + std::to_string(t) + " lies on another track");
    m.anchor_pos_[t] = m.position_of(t, {a.block, d});
  }
  return m;
}

}  // namespace neumaps
