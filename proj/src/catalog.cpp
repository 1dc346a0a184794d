#include "neumaps/catalog.hpp"

#include <numeric>
#include <sstream>

#include "params.hpp"

namespace neumaps {

namespace {

std::string n(const std::string& base, int i) { return base + std::to_string(i); }

// ---------------------------------------------------------------------------
// p-valent Neumann map. Fans are free edges below the axis; a set
// decoration bit attaches a 1-valent black vertex to that free edge.

void add_fan_edge(TemplateBuilder& b, const std::string& f, char bit) {
  if (bit == '1') {
    b.x({f + "v"});
    b.y({f, f + "v"});
  } else {
    b.y({f});
  }
}

BlockTemplate np_block(const std::string& kind, int p, const std::string& dec) {
  const int fans = kind == "np.b" ? p - 2 : p - 3;
  if (static_cast<int>(dec.size()) > fans) throw MapError(MapErrorCode::UnknownBlock, kind + ": too many decoration bits");
  const std::string bits = dec + std::string(fans - dec.size(), '0');
  TemplateBuilder b(kind);
  std::vector<std::string> rot{"R"};
  if (kind != "np.b") rot.push_back("U");
  rot.push_back("L");
  for (int i = 1; i <= fans; ++i) rot.push_back(n("f", i));
  if (kind == "np.head") {
    b.x({"a0"});
    b.y({"a0", "L"});
    b.mark("alpha", "a0");
  } else {
    b.left_port("L");
  }
  b.x(rot);
  if (kind != "np.b") b.y({"U"});
  for (int i = 1; i <= fans; ++i) add_fan_edge(b, n("f", i), bits[i - 1]);
  b.y({"R", "+"});
  return b.build();
}

// ---------------------------------------------------------------------------
// Bipartite map of type (p, q). Darts are edges; x rotates edges at
// black vertices and y at white vertices. A set decoration bit turns a
// 1-valent vertex below the axis into a full vertex with a fan of 1-valent
// vertices of the other colour.

void add_black_end(TemplateBuilder& b, const std::string& e, char bit, int p) {
  if (bit != '1') {
    b.x({e});
    return;
  }
  std::vector<std::string> rot{e};
  for (int j = 1; j < p; ++j) {
    rot.push_back(e + n("m", j));
    b.y({e + n("m", j)});
  }
  b.x(rot);
}

void add_white_end(TemplateBuilder& b, const std::string& e, char bit, int q) {
  if (bit != '1') {
    b.y({e});
    return;
  }
  std::vector<std::string> rot{e};
  for (int j = 1; j < q; ++j) {
    rot.push_back(e + n("k", j));
    b.x({e + n("k", j)});
  }
  b.y(rot);
}

BlockTemplate npq_block(const std::string& kind, int p, int q, const std::string& dec) {
  TemplateBuilder b(kind);
  if (kind == "npq.head") {
    const int fans = q - 3;
    if (static_cast<int>(dec.size()) > fans) throw MapError(MapErrorCode::UnknownBlock, kind + ": too many decoration bits");
    const std::string bits = dec + std::string(fans - dec.size(), '0');
    b.x({"e0"});
    b.x({"u1"});
    b.mark("alpha", "e0");
    std::vector<std::string> white{"+", "u1", "e0"};
    for (int i = 1; i <= fans; ++i) {
      white.push_back(n("f", i));
      add_black_end(b, n("f", i), bits[i - 1], p);
    }
    b.y(white);
    return b.build();
  }
  const int bfans = p - 3, wfans = q - 2;
  if (static_cast<int>(dec.size()) > bfans + wfans)
    throw MapError(MapErrorCode::UnknownBlock, kind + ": too many decoration bits");
  const std::string bits = dec + std::string(bfans + wfans - dec.size(), '0');
  b.left_port("L");
  std::vector<std::string> black{"e", "u", "L"};
  for (int i = 1; i <= bfans; ++i) black.push_back(n("g", i));
  b.x(black);
  b.y({"u"});
  for (int i = 1; i <= bfans; ++i) add_white_end(b, n("g", i), bits[i - 1], q);
  std::vector<std::string> white{"+", "e"};
  for (int i = 1; i <= wfans; ++i) {
    white.push_back(n("h", i));
    add_black_end(b, n("h", i), bits[bfans + i - 1], p);
  }
  b.y(white);
  return b.build();
}

// ---------------------------------------------------------------------------
// Blocks of N_h. The head is the leftmost vertex with two free edges; nh.b0
// has three axis vertices with free edges above; nh.b1 has one axis vertex
// with a pendant 1-valent vertex below.

void axis_vertex_up(TemplateBuilder& b, const std::string& v) {
  b.x({v + "R", v + "U", v + "L"});
}

BlockTemplate nh_block(const std::string& kind) {
  TemplateBuilder b(kind);
  if (kind == "nh.head") {
    b.x({"R", "U", "D"});
    b.y({"U"});
    b.y({"D"});
    b.y({"R", "+"});
    b.mark("alpha", "U");
  } else if (kind == "nh.b0") {
    for (const char* v : {"A", "B", "C"}) {
      axis_vertex_up(b, v);
      b.y({std::string(v) + "U"});
    }
    b.left_port("AL");
    b.y({"AR", "BL"});
    b.y({"BR", "CL"});
    b.y({"CR", "+"});
  } else if (kind == "nh.b1") {
    b.left_port("L");
    b.x({"R", "L", "Dn"});
    b.x({"P"});
    b.y({"Dn", "P"});
    b.y({"R", "+"});
  } else {
    throw MapError(MapErrorCode::UnknownBlock, "unknown block '" + kind + "'");
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Flowers and bulbs, p = 2l + 1. A loop is a y-pair of consecutive darts in
// one rotation; the first of the two is z-fixed.

void add_loops(TemplateBuilder& b, std::vector<std::string>& rot, const std::string& base, int count) {
  for (int i = 1; i <= count; ++i) {
    const std::string a = base + n("a", i), c = base + n("b", i);
    rot.push_back(a);
    rot.push_back(c);
    b.y({a, c});
  }
}

void off_axis_vertex(TemplateBuilder& b, const std::string& stem, const std::string& base, int l) {
  std::vector<std::string> rot{stem};
  add_loops(b, rot, base, l);
  b.x(rot);
}

BlockTemplate nprime_block(const std::string& kind, int p) {
  if (p < 3 || p % 2 == 0) throw MapError(MapErrorCode::UnknownBlock, kind + ": p must be odd and >= 3");
  const int l = (p - 1) / 2;
  TemplateBuilder b(kind);
  if (kind == "nprime.head") {
    std::vector<std::string> rot{"R", "U"};
    add_loops(b, rot, "L", l - 1);
    rot.push_back("D");
    b.x(rot);
    off_axis_vertex(b, "S", "T", l);
    off_axis_vertex(b, "Sm", "M", l);
    b.y({"U", "S"});
    b.y({"D", "Sm"});
    b.y({"R", "+"});
    b.mark("alpha", "U");
    b.mark("principal", "U");
  } else if (kind == "nprime.flower") {
    b.left_port("L");
    std::vector<std::string> rot{"R", "U", "L"};
    add_loops(b, rot, "L", l - 1);
    b.x(rot);
    off_axis_vertex(b, "S", "T", l);
    b.y({"U", "S"});
    b.y({"R", "+"});
    b.mark("principal", "U");
  } else if (kind == "nprime.bulb") {
    b.left_port("L");
    std::vector<std::string> rot{"R", "L"};
    add_loops(b, rot, "L", l - 1);
    rot.push_back("D");
    b.x(rot);
    off_axis_vertex(b, "Sm", "M", l);
    b.y({"D", "Sm"});
    b.y({"R", "+"});
  } else {
    throw MapError(MapErrorCode::UnknownBlock, "unknown block '" + kind + "'");
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Typed blocks. Type 1 carries a free edge above the axis, type 2 a pendant
// 1-valent vertex, type 3 three axis vertices joined to one trivalent vertex
// through a handle. In the handle the edges from the outer axis vertices
// cross: the vertex T meets A on its right slot and C on its left slot.

BlockTemplate tretkoff_block(const std::string& kind) {
  TemplateBuilder b(kind);
  if (kind == "tk.1") {
    b.left_port("L");
    b.x({"R", "U", "L"});
    b.y({"U"});
    b.y({"R", "+"});
  } else if (kind == "tk.2") {
    b.left_port("L");
    b.x({"R", "U", "L"});
    b.x({"Q"});
    b.y({"U", "Q"});
    b.y({"R", "+"});
  } else if (kind == "tk.3") {
    b.left_port("AL");
    for (const char* v : {"A", "B", "C"}) axis_vertex_up(b, v);
    b.x({"Tr", "Tl", "Ts"});
    b.y({"AR", "BL"});
    b.y({"BR", "CL"});
    b.y({"AU", "Tr"});
    b.y({"BU", "Ts"});
    b.y({"CU", "Tl"});
    b.y({"CR", "+"});
  } else {
    throw MapError(MapErrorCode::UnknownBlock, "unknown block '" + kind + "'");
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Two-face trivalent maps. Each cell holds an axis vertex with a pendant edge
// below (V1) and one with a pendant edge above (V2). The centre cell has
// 1-valent vertices on both pendants; right cells have a free edge above and a
// question mark below; left cells the reverse.

void down_vertex(TemplateBuilder& b, const std::string& v) { b.x({v + "R", v + "L", v + "P"}); }
void up_vertex(TemplateBuilder& b, const std::string& v) { b.x({v + "R", v + "P", v + "L"}); }

void pendant(TemplateBuilder& b, const std::string& v, bool vertex) {
  if (vertex) {
    b.x({v + "Q"});
    b.y({v + "P", v + "Q"});
  } else {
    b.y({v + "P"});
  }
}

BlockTemplate twoface_block(const std::string& kind, int bit) {
  TemplateBuilder b(kind);
  b.left_port("V1L");
  down_vertex(b, "V1");
  up_vertex(b, "V2");
  if (kind == "tf.center") {
    pendant(b, "V1", true);
    pendant(b, "V2", true);
    b.mark("alpha", "V2Q");
    b.mark("alpha'", "V1Q");
  } else if (kind == "tf.right") {
    pendant(b, "V1", bit == 1);
    pendant(b, "V2", false);
  } else if (kind == "tf.left") {
    pendant(b, "V1", false);
    pendant(b, "V2", bit == 1);
  } else {
    throw MapError(MapErrorCode::UnknownBlock, "unknown block '" + kind + "'");
  }
  b.y({"V1R", "V2L"});
  b.y({"V2R", "+"});
  return b.build();
}

int int_param(const Params& ps, const std::string& key, const std::string& id) {
  const auto it = ps.named.find(key);
  if (it == ps.named.end()) throw MapError(MapErrorCode::UnknownBlock, "block '" + id + "' needs parameter " + key);
  return std::stoi(it->second);
}

std::string str_param(const Params& ps, const std::string& key) {
  const auto it = ps.named.find(key);
  return it == ps.named.end() ? std::string() : it->second;
}

// ---------------------------------------------------------------------------
// Arranging decoration bits over a chain of blocks.

struct Kind {
  std::string name;
  int slots;  // decoration slots carried by one block of this kind
};

struct Arranged {
  std::vector<std::string> prefix, period;
};

std::string with_bits(const std::string& name, const std::string& params, const std::string& bits) {
  std::string id = name + "(" + params;
  if (bits.find('1') != std::string::npos) id += ";dec=" + bits;
  return id + ")";
}

/// Reads bits in chain order: head first, then the periodic kinds repeated.
/// The prefix grows until the bit prefix is consumed; the period then spans
/// enough kind periods to realign with the bit period.
Arranged arrange_bits(const Kind& head, const std::vector<Kind>& kinds, const std::string& params,
                      BitSource bits) {
  if (bits.period.empty()) bits.period = {0};
  std::size_t pos = 0;
  auto take = [&](int k) {
    std::string s;
    for (int i = 0; i < k; ++i) s.push_back(bits.at(pos++) ? '1' : '0');
    return s;
  };
  Arranged out;
  out.prefix.push_back(with_bits(head.name, params, take(head.slots)));
  int per_kinds = 0;
  for (const auto& k : kinds) per_kinds += k.slots;
  while (pos < bits.prefix.size())
    for (const auto& k : kinds) out.prefix.push_back(with_bits(k.name, params, take(k.slots)));
  const auto b = static_cast<int>(bits.period.size());
  const int reps = per_kinds == 0 ? 1 : b / std::gcd(per_kinds, b);
  for (int r = 0; r < reps; ++r)
    for (const auto& k : kinds) out.period.push_back(with_bits(k.name, params, take(k.slots)));
  return out;
}

std::string describe_bits(const BitSource& s) { return s.prefix.empty() && s.period.empty() ? "" : format_bits(s); }

}  // namespace

BlockTemplate resolve_catalog_block(const std::string& id, const MapType& type) {
  const Params ps = parse_params(id);
  const std::string& name = ps.name;
  try {
    if (name.rfind("np.", 0) == 0) {
      BlockTemplate t = np_block(name, int_param(ps, "p", id), str_param(ps, "dec"));
      t.id = id;
      return t;
    }
    if (name.rfind("npq.", 0) == 0) {
      BlockTemplate t = npq_block(name, int_param(ps, "p", id), int_param(ps, "q", id), str_param(ps, "dec"));
      t.id = id;
      return t;
    }
    if (name.rfind("nh.", 0) == 0) return nh_block(name);
    if (name.rfind("tk.", 0) == 0) return tretkoff_block(name);
    if (name.rfind("nprime.", 0) == 0) {
      BlockTemplate t = nprime_block(name, int_param(ps, "p", id));
      t.id = id;
      return t;
    }
    if (name.rfind("tf.", 0) == 0) {
      const int bit = name == "tf.center" ? 0 : int_param(ps, "q", id);
      BlockTemplate t = twoface_block(name, bit);
      t.id = id;
      return t;
    }
  } catch (const std::invalid_argument&) {
    throw MapError(MapErrorCode::UnknownBlock, "bad parameter in block '" + id + "'");
  }
  (void)type;
  throw MapError(MapErrorCode::UnknownBlock, "unknown block '" + id + "'");
}

std::int64_t g_sequence(const BitSource& h, std::int64_t l) {
  if (l < 1) throw std::invalid_argument("g_sequence: l must be >= 1");
  std::int64_t ones = 0;
  const auto pre = static_cast<std::int64_t>(h.prefix.size());
  const std::int64_t k = l - 1;  // number of summed terms
  for (std::int64_t i = 0; i < std::min(k, pre); ++i) ones += h.prefix[i];
  if (k > pre) {
    if (h.period.empty()) throw std::out_of_range("g_sequence: h has no periodic tail");
    const auto m = static_cast<std::int64_t>(h.period.size());
    const std::int64_t rest = k - pre;
    std::int64_t per = 0;
    for (int v : h.period) per += v;
    ones += (rest / m) * per;
    for (std::int64_t i = 0; i < rest % m; ++i) ones += h.period[i];
  }
  return 6 * l - 5 * ones - 4;
}

MapDescription build_np(int p, const BitSource& decoration) {
  if (p < 3) throw MapError(MapErrorCode::InvalidDescription, "np: p must be >= 3");
  const std::string params = "p=" + std::to_string(p);
  auto arranged = arrange_bits({"np.head", p - 3}, {{"np.a", p - 3}, {"np.b", p - 2}}, params, decoration);
  MapDescription d;
  d.type = {p, 2};
  d.source.kind = BlockSource::Kind::PrefixThenPeriodic;
  d.source.prefix = std::move(arranged.prefix);
  d.source.period = std::move(arranged.period);
  d.anchors = {{0, "a0"}};
  const std::string dec = describe_bits(decoration);
  d.catalog_name = "np(" + std::to_string(p) + (dec.empty() ? "" : ";dec=" + dec) + ")";
  return d;
}

MapDescription build_npq(int p, int q, const BitSource& decoration) {
  if (p < 3) throw MapError(MapErrorCode::InvalidDescription, "npq: p must be >= 3");
  if (q < 3) throw MapError(MapErrorCode::InvalidDescription, "npq: q must be >= 3 (use np for q = 2)");
  const std::string params = "p=" + std::to_string(p) + ";q=" + std::to_string(q);
  auto arranged = arrange_bits({"npq.head", q - 3}, {{"npq.bw", p - 3 + q - 2}}, params, decoration);
  MapDescription d;
  d.type = {p, q};
  d.source.kind = BlockSource::Kind::PrefixThenPeriodic;
  d.source.prefix = std::move(arranged.prefix);
  d.source.period = std::move(arranged.period);
  d.anchors = {{0, "e0"}};
  const std::string dec = describe_bits(decoration);
  d.catalog_name = "npq(" + std::to_string(p) + "," + std::to_string(q) + (dec.empty() ? "" : ";dec=" + dec) + ")";
  return d;
}

MapDescription build_nprime(const FlowerParams& params) {
  const int p = params.p;
  if (p < 3 || p % 2 == 0) throw MapError(MapErrorCode::InvalidDescription, "nprime: p must be odd and >= 3");
  IntSource bulbs = params.bulbs;
  if (bulbs.period.empty()) bulbs.period = {0};
  for (auto v : bulbs.prefix)
    if (v < 0) throw MapError(MapErrorCode::InvalidDescription, "nprime: negative bulb count");
  for (auto v : bulbs.period)
    if (v < 0) throw MapError(MapErrorCode::InvalidDescription, "nprime: negative bulb count");
  const std::string ps = "(p=" + std::to_string(p) + ")";
  auto gap = [&](std::vector<std::string>& out, std::int64_t count) {
    for (std::int64_t i = 0; i < count; ++i) out.push_back("nprime.bulb" + ps);
    out.push_back("nprime.flower" + ps);
  };
  MapDescription d;
  d.type = {p, 2};
  d.source.kind = BlockSource::Kind::PrefixThenPeriodic;
  d.source.prefix = {"nprime.head" + ps};
  for (auto v : bulbs.prefix) gap(d.source.prefix, v);
  for (auto v : bulbs.period) gap(d.source.period, v);
  d.anchors = {{0, "U"}};
  const bool none = params.bulbs.prefix.empty() && params.bulbs.period.empty();
  d.catalog_name = "nprime(" + std::to_string(p) + (none ? "" : ";bulbs=" + format_ints(params.bulbs)) + ")";
  return d;
}

IntSource residue_covering_bulbs(int p) {
  (void)p;
  // Two bulbs in gap 0 and one in every later gap: lambda(n) = (t+1) n + 1.
  return {{2}, {1}};
}

MapDescription build_neumann_h(const BitSource& h) {
  if (h.period.empty()) throw MapError(MapErrorCode::InvalidDescription, "nh: h needs a periodic tail");
  MapDescription d;
  d.type = {3, 2};
  d.source.kind = BlockSource::Kind::PrefixThenPeriodic;
  d.source.prefix = {"nh.head"};
  for (int v : h.prefix) d.source.prefix.push_back(v ? "nh.b1" : "nh.b0");
  for (int v : h.period) d.source.period.push_back(v ? "nh.b1" : "nh.b0");
  d.anchors = {{0, "U"}};
  d.catalog_name = "nh(h=" + format_bits(h) + ")";
  return d;
}

MapDescription build_tretkoff(const IntSource& types) {
  if (types.period.empty()) throw MapError(MapErrorCode::InvalidDescription, "tretkoff: sequence needs a periodic tail");
  auto id = [](std::int64_t v) {
    if (v < 1 || v > 3) throw MapError(MapErrorCode::InvalidDescription, "tretkoff: block types are 1, 2 and 3");
    return "tk." + std::to_string(v);
  };
  MapDescription d;
  d.type = {3, 2};
  d.source.kind = BlockSource::Kind::PrefixThenPeriodic;
  d.source.prefix = {"nh.head"};
  for (auto v : types.prefix) d.source.prefix.push_back(id(v));
  for (auto v : types.period) d.source.period.push_back(id(v));
  d.anchors = {{0, "U"}};
  d.catalog_name = "tretkoff(seq=" + format_ints(types) + ")";
  return d;
}

TwoFaceAllocation TwoFaceAllocation::asymmetric() { return {{{1}, {0}}, {{0}, {0}}}; }

TwoFaceAllocation TwoFaceAllocation::symmetric(const BitSource& bits) { return {bits, bits}; }

MapDescription build_twoface(const TwoFaceAllocation& alloc) {
  BitSource above = alloc.above, below = alloc.below;
  if (above.period.empty()) above.period = {0};
  if (below.period.empty()) below.period = {0};
  auto left = [](int bit) { return "tf.left(q=" + std::to_string(bit) + ")"; };
  auto right = [](int bit) { return "tf.right(q=" + std::to_string(bit) + ")"; };
  MapDescription d;
  d.type = {3, 2};
  d.source.kind = BlockSource::Kind::BiInfinite;
  for (auto it = above.prefix.rbegin(); it != above.prefix.rend(); ++it) d.source.prefix.push_back(left(*it));
  const auto centre = static_cast<BlockIndex>(d.source.prefix.size());
  d.source.prefix.push_back("tf.center");
  for (int v : below.prefix) d.source.prefix.push_back(right(v));
  for (auto it = above.period.rbegin(); it != above.period.rend(); ++it) d.source.left.push_back(left(*it));
  for (int v : below.period) d.source.period.push_back(right(v));
  d.anchors = {{centre, "V2Q"}, {centre, "V1Q"}};
  d.catalog_name = "twoface(above=" + format_bits(above) + ";below=" + format_bits(below) + ")";
  return d;
}

MapDescription parse_catalog(std::string_view expr) {
  const Params ps = parse_params(std::string(expr));
  auto need = [&](std::size_t count) {
    if (ps.positional.size() != count)
      throw MapError(MapErrorCode::InvalidDescription,
                     "'" + ps.name + "' expects " + std::to_string(count) + " positional argument(s)");
  };
  auto num = [&](std::size_t i) {
    try {
      return std::stoi(ps.positional[i]);
    } catch (const std::exception&) {
      throw MapError(MapErrorCode::InvalidDescription, "'" + ps.positional[i] + "' is not an integer");
    }
  };
  auto named = [&](const std::string& key) { return str_param(ps, key); };
  try {
    if (ps.name == "np") {
      need(1);
      return build_np(num(0), named("dec").empty() ? BitSource{} : parse_bits(named("dec")));
    }
    if (ps.name == "npq") {
      need(2);
      return build_npq(num(0), num(1), named("dec").empty() ? BitSource{} : parse_bits(named("dec")));
    }
    if (ps.name == "nprime") {
      need(1);
      FlowerParams fp{num(0), {}};
      const std::string bulbs = named("bulbs");
      if (bulbs == "covering") fp.bulbs = residue_covering_bulbs(fp.p);
      else if (!bulbs.empty()) fp.bulbs = parse_ints(bulbs);
      return build_nprime(fp);
    }
    if (ps.name == "nh") {
      need(0);
      return build_neumann_h(parse_bits(named("h")));
    }
    if (ps.name == "tretkoff") {
      need(0);
      return build_tretkoff(parse_ints(named("seq")));
    }
    if (ps.name == "twoface") {
      need(0);
      const std::string alloc = named("alloc");
      if (alloc == "asymmetric") return build_twoface(TwoFaceAllocation::asymmetric());
      if (alloc == "symmetric") return build_twoface(TwoFaceAllocation::symmetric());
      if (!alloc.empty()) throw MapError(MapErrorCode::InvalidDescription, "unknown allocation '" + alloc + "'");
      TwoFaceAllocation a;
      if (!named("above").empty()) a.above = parse_bits(named("above"));
      if (!named("below").empty()) a.below = parse_bits(named("below"));
      return build_twoface(a);
    }
  } catch (const std::invalid_argument& e) {
    throw MapError(MapErrorCode::InvalidDescription, e.what());
  }
  throw MapError(MapErrorCode::InvalidDescription, "unknown catalog map '" + ps.name + "'");
}

}  // namespace neumaps
