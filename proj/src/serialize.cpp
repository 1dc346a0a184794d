#include "neumaps/serialize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "neumaps/catalog.hpp"

namespace neumaps {

namespace {

std::string kind_name(BlockSource::Kind k) {
  switch (k) {
    case BlockSource::Kind::PrefixThenPeriodic: return "prefix_then_periodic";
    case BlockSource::Kind::Periodic: return "periodic";
    case BlockSource::Kind::BiInfinite: return "bi_infinite";
  }
  return "?";
}

BlockSource::Kind kind_from_name(const std::string& s) {
  if (s == "prefix_then_periodic") return BlockSource::Kind::PrefixThenPeriodic;
  if (s == "periodic") return BlockSource::Kind::Periodic;
  if (s == "bi_infinite") return BlockSource::Kind::BiInfinite;
  throw MapError(MapErrorCode::InvalidDescription, "unknown source kind '" + s + "'");
}

Json template_json(const BlockTemplate& t) {
  Json j;
  j["id"] = t.id;
  j["darts"] = t.darts;
  j["x_cycles"] = t.x_cycles;
  j["y_cycles"] = t.y_cycles;
  j["left_port"] = t.left_port ? Json(*t.left_port) : Json(nullptr);
  Json marks = Json::object();
  for (const auto& [k, v] : t.marks) marks[k] = v;
  j["marks"] = marks;
  return j;
}

BlockTemplate template_from_json(const Json& j) {
  BlockTemplate t;
  t.id = j.at("id").get<std::string>();
  t.darts = j.at("darts").get<std::vector<std::string>>();
  t.x_cycles = j.at("x_cycles").get<std::vector<std::vector<int>>>();
  t.y_cycles = j.at("y_cycles").get<std::vector<std::vector<int>>>();
  if (j.contains("left_port") && !j.at("left_port").is_null()) t.left_port = j.at("left_port").get<int>();
  if (j.contains("marks"))
    for (const auto& [k, v] : j.at("marks").items()) t.marks[k] = v.get<int>();
  return t;
}

Json pair_json(const LabelPair& p) { return Json::array({p.first, p.second}); }

LabelPair pair_from_json(const Json& j) { return {j.at(0).get<Label>(), j.at(1).get<Label>()}; }

Json vec_json(const Vec2& v) { return Json::array({v(0), v(1)}); }

Vec2 vec_from_json(const Json& j) { return Vec2(j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()); }

Json factors_json(const std::map<std::string, Label>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

Json violations_json(const std::vector<std::pair<int, LabelPair>>& v) {
  Json out = Json::array();
  for (const auto& [n, pr] : v) out.push_back({{"n", n}, {"i", pr.first}, {"j", pr.second}});
  return out;
}

std::string gen_string(Gen g) { return std::string(1, gen_name(g)); }

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(msg, line, column);
  }
}

Json to_json(const MapDescription& d) {
  Json j;
  j["type"] = {{"p", d.type.p}, {"q", d.type.q}};
  Json src;
  src["kind"] = kind_name(d.source.kind);
  src["prefix"] = d.source.prefix;
  src["period"] = d.source.period;
  if (!d.source.left.empty()) src["left"] = d.source.left;
  j["source"] = src;
  if (d.anchors.size() == 1) {
    j["anchor"] = {{"block", d.anchors[0].block}, {"dart", d.anchors[0].dart}};
  } else {
    Json a = Json::array();
    for (const auto& an : d.anchors) a.push_back({{"block", an.block}, {"dart", an.dart}});
    j["anchors"] = a;
  }
  if (!d.templates.empty()) {
    Json t = Json::array();
    for (const auto& [id, tpl] : d.templates) t.push_back(template_json(tpl));
    j["templates"] = t;
  }
  if (!d.catalog_name.empty()) j["catalog"] = d.catalog_name;
  return j;
}

MapDescription description_from_json(const Json& j) {
  if (j.is_object() && j.contains("map") && !j.contains("type")) return description_from_json(j.at("map"));
  try {
    MapDescription d;
    d.type.p = j.at("type").at("p").get<int>();
    d.type.q = j.at("type").at("q").get<int>();
    const Json& src = j.at("source");
    d.source.kind = kind_from_name(src.at("kind").get<std::string>());
    d.source.prefix = src.at("prefix").get<std::vector<std::string>>();
    d.source.period = src.at("period").get<std::vector<std::string>>();
    if (src.contains("left")) d.source.left = src.at("left").get<std::vector<std::string>>();
    auto anchor = [](const Json& a) { return Anchor{a.at("block").get<BlockIndex>(), a.at("dart").get<std::string>()}; };
    if (j.contains("anchor")) d.anchors.push_back(anchor(j.at("anchor")));
    if (j.contains("anchors"))
      for (const auto& a : j.at("anchors")) d.anchors.push_back(anchor(a));
    if (d.anchors.empty()) throw MapError(MapErrorCode::InvalidDescription, "description has no anchor");
    if (j.contains("templates"))
      for (const auto& t : j.at("templates")) {
        BlockTemplate tpl = template_from_json(t);
        d.templates[tpl.id] = std::move(tpl);
      }
    if (j.contains("catalog")) d.catalog_name = j.at("catalog").get<std::string>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw MapError(MapErrorCode::InvalidDescription, e.what());
  }
}

std::string export_description(const MapDescription& d) { return to_json(d).dump(2) + "\n"; }

MapDescription load_description(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw MapError(MapErrorCode::InvalidDescription, "empty map description");
  if (text[first] == '{') return description_from_json(parse_json(text));
  return parse_catalog(text.substr(first));
}

Json to_json(const PointRef& p) {
  if (const auto* t = std::get_if<TrackPoint>(&p)) return {{"track", t->track}, {"index", t->index}};
  const auto& l = std::get<LoopPoint>(p);
  return {{"block", l.block}, {"dart", l.dart}};
}

PointRef point_from_json(const Json& j) {
  if (j.contains("track")) return TrackPoint{j.at("track").get<int>(), j.at("index").get<Label>()};
  return LoopPoint{j.at("block").get<BlockIndex>(), j.at("dart").get<int>()};
}

Json to_json(const RelatorReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["radius"] = r.radius;
  j["points_checked"] = r.points_checked;
  j["x_lengths"] = r.x_lengths;
  j["y_lengths"] = r.y_lengths;
  Json v = Json::array();
  for (const auto& c : r.violations)
    v.push_back({{"gen", gen_string(c.gen)}, {"witness", to_string(c.witness)}, {"length", c.length}});
  j["violations"] = v;
  return j;
}

Json to_json(const CensusReport& r) {
  Json j;
  j["radius"] = r.radius;
  j["track_count"] = r.track_count;
  j["loop_points_core"] = r.loop_points_core;
  j["loop_points_per_period"] = r.loop_points_per_period;
  j["finite_cycles_per_period"] = r.finite_cycles_per_period;
  j["x_lengths"] = r.x_lengths;
  j["y_lengths"] = r.y_lengths;
  if (r.finite_z_cycle) {
    Json c = Json::array();
    for (const auto& p : *r.finite_z_cycle) c.push_back(to_string(p));
    j["finite_z_cycle"] = c;
  } else {
    j["finite_z_cycle"] = nullptr;
  }
  j["nonparabolic"] = r.is_nonparabolic;
  j["neumann"] = r.is_neumann;
  j["terminal_edges"] = r.terminal_edges;
  return j;
}

Json to_json(const Schema& s) {
  if (const auto* f = std::get_if<FixedPointSchema>(&s))
    return {{"kind", "fixed"}, {"x_fix", f->x_fix}, {"a", f->a}, {"b", f->b}};
  const auto& st = std::get<StabilizerSchema>(s);
  Json pairs = Json::array();
  for (const auto& pr : st.pairs) pairs.push_back(pair_json(pr));
  return {{"kind", "stabilizer"}, {"word", to_string(st.w)}, {"mark", st.mark}, {"pairs", pairs}};
}

Schema schema_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "fixed") return FixedPointSchema{j.at("x_fix").get<Label>(), j.at("a").get<Label>(), j.at("b").get<Label>()};
  if (kind != "stabilizer") throw MapError(MapErrorCode::InvalidDescription, "unknown schema kind '" + kind + "'");
  StabilizerSchema s;
  s.w = parse_word(j.at("word").get<std::string>());
  s.mark = j.at("mark").get<std::string>();
  for (const auto& pr : j.at("pairs")) s.pairs.push_back(pair_from_json(pr));
  return s;
}

Json to_json(const Certificate& c) {
  if (const auto* f = std::get_if<FixedPointCertificate>(&c)) {
    Json j;
    j["type"] = "fixed_point";
    j["schema"] = to_json(Schema{f->schema});
    j["n_sample"] = f->n_sample;
    j["tail_start"] = f->tail_start;
    j["tail_period"] = f->tail_period;
    j["n_structural"] = f->n_structural;
    return j;
  }
  if (const auto* s = std::get_if<StabilizerCertificate>(&c)) {
    Json j;
    j["type"] = "stabilizer";
    j["schema"] = to_json(Schema{s->schema});
    j["principal_core"] = s->principal_core;
    j["principal_tail"] = s->principal_tail;
    j["slope"] = s->slope;
    j["checked_periods"] = s->checked_periods;
    j["forced_moduli"] = s->forced_moduli;
    j["gcd"] = s->gcd;
    Json cov = Json::array();
    for (const auto& e : s->coverage)
      cov.push_back({{"divisor", e.divisor}, {"active_pairs", e.active_pairs}, {"residual_moduli", e.residual_moduli}});
    j["coverage"] = cov;
    Json res = Json::array();
    for (const auto& [n, pr] : s->residual_violations) res.push_back({{"n", n}, {"i", pr.first}, {"j", pr.second}});
    j["residual_violations"] = res;
    j["n_sample"] = s->n_sample;
    j["sampled_covered"] = s->sampled_covered;
    j["track_and_y_cover"] = s->track_and_y_cover;
    j["alpha_in_both"] = s->alpha_in_both;
    return j;
  }
  const auto& t = std::get<TwoTrackCertificate>(c);
  Json j;
  j["type"] = "two_track";
  Json fam = Json::array();
  for (const auto& f : t.families)
    fam.push_back({{"track", f.track}, {"x_fixed", f.x_fixed}, {"y_fixed", f.y_fixed}, {"period", f.period}});
  j["families"] = fam;
  Json cr = Json::array();
  for (const auto& [a, b] : t.crossings) cr.push_back(Json::array({to_json(a), to_json(b)}));
  j["crossings"] = cr;
  j["shift_bound"] = t.shift_bound;
  j["certified_bound"] = t.certified_bound;
  j["radius"] = t.radius;
  Json sw = Json::array();
  for (const auto& [c0, p] : t.swap_refutations) sw.push_back({{"shift", c0}, {"dart", to_json(p)}});
  j["swap_refutations"] = sw;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "fixed_point") {
      FixedPointCertificate f;
      f.schema = std::get<FixedPointSchema>(schema_from_json(j.at("schema")));
      f.n_sample = j.at("n_sample").get<Label>();
      f.tail_start = j.at("tail_start").get<Label>();
      f.tail_period = j.at("tail_period").get<Label>();
      f.n_structural = j.at("n_structural").get<Label>();
      return f;
    }
    if (type == "stabilizer") {
      StabilizerCertificate s;
      s.schema = std::get<StabilizerSchema>(schema_from_json(j.at("schema")));
      s.principal_core = j.at("principal_core").get<std::vector<Label>>();
      s.principal_tail = j.at("principal_tail").get<std::vector<Label>>();
      s.slope = j.at("slope").get<Label>();
      s.checked_periods = j.at("checked_periods").get<std::int64_t>();
      s.forced_moduli = j.at("forced_moduli").get<std::vector<Label>>();
      s.gcd = j.at("gcd").get<Label>();
      for (const auto& e : j.at("coverage"))
        s.coverage.push_back({e.at("divisor").get<Label>(), e.at("active_pairs").get<std::vector<int>>(),
                              e.at("residual_moduli").get<std::vector<Label>>()});
      for (const auto& r : j.at("residual_violations"))
        s.residual_violations.push_back({r.at("n").get<Label>(), {r.at("i").get<Label>(), r.at("j").get<Label>()}});
      s.n_sample = j.at("n_sample").get<Label>();
      s.sampled_covered = j.at("sampled_covered").get<Label>();
      s.track_and_y_cover = j.at("track_and_y_cover").get<bool>();
      s.alpha_in_both = j.at("alpha_in_both").get<bool>();
      return s;
    }
    if (type == "two_track") {
      TwoTrackCertificate t;
      for (const auto& f : j.at("families"))
        t.families.push_back({f.at("track").get<int>(), f.at("x_fixed").get<Label>(), f.at("y_fixed").get<Label>(),
                              f.at("period").get<Label>()});
      for (const auto& c : j.at("crossings")) t.crossings.push_back({point_from_json(c.at(0)), point_from_json(c.at(1))});
      t.shift_bound = j.at("shift_bound").get<Label>();
      t.certified_bound = j.at("certified_bound").get<Label>();
      t.radius = j.at("radius").get<Label>();
      for (const auto& r : j.at("swap_refutations"))
        t.swap_refutations.push_back({r.at("shift").get<Label>(), point_from_json(r.at("dart"))});
      return t;
    }
    throw MapError(MapErrorCode::InvalidDescription, "unknown certificate type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw MapError(MapErrorCode::InvalidDescription, e.what());
  }
}

Json to_json(const PrimitivityVerdict& v) {
  Json j;
  if (const auto* p = std::get_if<Primitive>(&v)) {
    j["verdict"] = "primitive";
    j["certificate"] = to_json(p->certificate);
  } else if (const auto* i = std::get_if<Imprimitive>(&v)) {
    j["verdict"] = "imprimitive";
    j["modulus"] = i->modulus ? Json(*i->modulus) : Json(nullptr);
    j["pair_shift"] = i->pair_shift ? Json(*i->pair_shift) : Json(nullptr);
  } else {
    const auto& u = std::get<Unknown>(v);
    j["verdict"] = "unknown";
    j["reason"] = u.reason;
    j["violations"] = violations_json(u.violations);
  }
  return j;
}

Json to_json(const Presentation& p) {
  Json j;
  j["radius"] = p.radius;
  Json gens = Json::array();
  for (const auto& g : p.generators) {
    Json e;
    e["word"] = to_string(g.word);
    e["order"] = g.order == kInfiniteOrder ? Json("inf") : Json(g.order);
    e["origin"] = to_string(g.origin);
    e["kind"] = to_string(g.kind);
    e["incomplete"] = g.incomplete;
    gens.push_back(e);
  }
  j["generators"] = gens;
  j["incomplete"] = p.incomplete;
  j["note"] = p.note;
  return j;
}

Json to_json(const FreeProductSignature& s) {
  Json j;
  j["prefix"] = factors_json(s.prefix);
  j["per_period"] = factors_json(s.per_period);
  j["period_blocks"] = s.period_blocks;
  if (s.left_period_blocks > 0) {
    j["per_left_period"] = factors_json(s.per_left_period);
    j["left_period_blocks"] = s.left_period_blocks;
  }
  Json dens = Json::object();
  for (const auto& [k, v] : s.per_period) {
    const auto [num, den] = s.density(k);
    dens[k] = std::to_string(num) + "/" + std::to_string(den);
  }
  j["density"] = dens;
  return j;
}

Json to_json(const TorsionReport& r) {
  Json j;
  j["torsion_free"] = r.torsion_free;
  if (r.witness) {
    j["witness"] = to_string(*r.witness);
    j["gen"] = gen_string(r.gen);
    j["cycle_length"] = r.cycle_length;
  }
  return j;
}

Json to_json(const OrbitReport& r) {
  Json j;
  j["radius"] = r.radius;
  j["padded_radius"] = r.padded_radius;
  j["window_points"] = r.window_points;
  j["reached"] = r.reached;
  j["all_reached"] = r.all_reached();
  Json missed = Json::array();
  for (const auto& p : r.missed) missed.push_back(to_string(p));
  j["missed"] = missed;
  j["caveat"] = r.caveat;
  return j;
}

Json to_json(const ShiftResult& r) {
  Json j;
  j["shift"] = r.shift ? Json(*r.shift) : Json(nullptr);
  j["certified"] = r.certified;
  j["certified_bound"] = r.certified_bound;
  return j;
}

Json to_json(const AffineIsometry& g) {
  return {{"matrix", Json::array({Json::array({g.linear(0, 0), g.linear(0, 1)}),
                                  Json::array({g.linear(1, 0), g.linear(1, 1)})})},
          {"vector", vec_json(g.translation)},
          {"denominator", kDen}};
}

AffineIsometry isometry_from_json(const Json& j) {
  if (j.at("denominator").get<std::int64_t>() != kDen)
    throw MapError(MapErrorCode::InvalidDescription, "isometry denominator must be " + std::to_string(kDen));
  AffineIsometry g;
  const Json& m = j.at("matrix");
  g.linear << m.at(0).at(0).get<std::int64_t>(), m.at(0).at(1).get<std::int64_t>(), m.at(1).at(0).get<std::int64_t>(),
      m.at(1).at(1).get<std::int64_t>();
  g.translation = vec_from_json(j.at("vector"));
  return g;
}

Json to_json(const IsometryClass& c) {
  return {{"kind", to_string(c.kind)}, {"order", c.order}, {"vector", vec_json(c.vector)}, {"denominator", c.denominator}};
}

Json to_json(const NonparabolicityCertificate& c) {
  return {{"type", "nonparabolicity"},
          {"k_max", c.k_max},
          {"z_image", to_json(c.z_image)},
          {"linear_order", c.linear_order},
          {"z_power", to_json(c.z_power)},
          {"first_trivial", c.first_trivial}};
}

NonparabolicityCertificate nonparabolicity_from_json(const Json& j) {
  try {
    NonparabolicityCertificate c;
    c.k_max = j.at("k_max").get<std::int64_t>();
    c.z_image = isometry_from_json(j.at("z_image"));
    c.linear_order = j.at("linear_order").get<int>();
    c.z_power = isometry_from_json(j.at("z_power"));
    c.first_trivial = j.at("first_trivial").get<std::int64_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw MapError(MapErrorCode::InvalidDescription, e.what());
  }
}

Json to_json(const PetriePath& p, bool with_vertices) {
  Json j;
  j["steps"] = p.vertices.empty() ? 0 : p.vertices.size() - 1;
  j["closed"] = p.closed;
  j["displacement"] = vec_json(p.displacement);
  j["direction_class"] = p.direction_class;
  if (with_vertices) {
    Json v = Json::array();
    for (const auto& x : p.vertices) v.push_back(vec_json(x));
    j["vertices"] = v;
  }
  return j;
}

Json certificate_document(const MapDescription& d, const Certificate& c) {
  Json j;
  j["schema_version"] = kCertificateSchemaVersion;
  j["kind"] = "primitivity";
  j["map"] = to_json(d);
  j["certificate"] = to_json(c);
  return j;
}

Json certificate_document(const NonparabolicityCertificate& c) {
  Json j;
  j["schema_version"] = kCertificateSchemaVersion;
  j["kind"] = "nonparabolicity";
  j["certificate"] = to_json(c);
  return j;
}

std::string to_dot(const CompiledModel& m, Label radius) {
  const auto window = m.window(radius);
  const std::set<PointRef> inside(window.begin(), window.end());
  auto cycle = [&](Gen g, const PointRef& p) {
    std::vector<PointRef> c{p};
    for (PointRef cur = m.act(g, 1, p); !(cur == p); cur = m.act(g, 1, cur)) c.push_back(cur);
    return c;
  };
  auto leaves = [&](const std::vector<PointRef>& c) {
    return std::any_of(c.begin(), c.end(), [&](const PointRef& p) { return !inside.count(p); });
  };
  std::map<PointRef, std::string> black, white;
  std::ostringstream nodes, edges;
  auto vertex = [&](std::map<PointRef, std::string>& ids, const std::vector<PointRef>& c, bool filled) {
    const PointRef rep = *std::min_element(c.begin(), c.end());
    auto [it, fresh] = ids.try_emplace(rep, (filled ? "b" : "w") + std::to_string(ids.size()));
    if (fresh) {
      nodes << "  " << it->second << " [shape=circle, label=\"\", "
            << (filled ? "style=filled, fillcolor=black" : "style=solid") << (leaves(c) ? ", color=gray" : "")
            << "];\n";
    }
    return it->second;
  };
  std::set<PointRef> drawn;
  int halves = 0;
  for (const auto& d : window) {
    const auto xc = cycle(Gen::X, d);
    const std::string b = vertex(black, xc, true);
    const auto yc = cycle(Gen::Y, d);
    const bool boundary = leaves(xc) || leaves(yc);
    const std::string style = boundary ? ", style=dashed" : "";
    if (m.type().q == 2) {
      if (drawn.count(d)) continue;
      drawn.insert(yc.begin(), yc.end());
      if (yc.size() == 1 || !inside.count(yc[1])) {
        const std::string h = "h" + std::to_string(halves++);
        nodes << "  " << h << " [shape=point, width=0.05];\n";
        edges << "  " << b << " -- " << h << " [label=\"" << to_string(d) << "\"" << style << "];\n";
      } else {
        const std::string b2 = vertex(black, cycle(Gen::X, yc[1]), true);
        edges << "  " << b << " -- " << b2 << " [label=\"" << to_string(d) << "|" << to_string(yc[1]) << "\"" << style
              << "];\n";
      }
    } else {
      const std::string w = vertex(white, yc, false);
      edges << "  " << b << " -- " << w << " [label=\"" << to_string(d) << "\"" << style << "];\n";
    }
  }
  std::ostringstream out;
  out << "graph window {\n  // radius " << radius << "\n" << nodes.str() << edges.str() << "}\n";
  return out.str();
}

}  // namespace neumaps
