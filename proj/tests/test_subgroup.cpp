#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "neumaps/analysis.hpp"
#include "neumaps/catalog.hpp"
#include "neumaps/subgroup.hpp"
#include "oracle.hpp"

using namespace neumaps;

namespace {

PointRef tp(Label i, int t = 0) { return TrackPoint{t, i}; }

std::vector<Word> parse_words(const std::vector<std::string>& texts) {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(parse_word(t));
  return out;
}

}  // namespace

TEST_CASE("Schreier generators of N_3 fix the base dart and have the stated order") {
  const auto m = compile(build_np(3));
  const Label radius = 1000;
  const auto pres = schreier_presentation(m, radius);
  REQUIRE_FALSE(pres.generators.empty());
  std::size_t x_fixed = 0, y_fixed = 0;
  for (Label i = -radius; i <= radius; ++i) {
    x_fixed += m.act(Gen::X, 1, tp(i)) == tp(i);
    y_fixed += m.act(Gen::Y, 1, tp(i)) == tp(i);
  }
  std::size_t black = 0, white = 0;
  for (const auto& g : pres.generators) {
    CHECK(m.act(g.word, tp(0)) == tp(0));
    REQUIRE(g.order > 0);
    const Word power = g.word.pow(g.order);
    for (Label i = -30; i <= 30; ++i) CHECK(m.act(power, tp(i)) == tp(i));
    CHECK(m.act(power, g.origin) == g.origin);
    black += g.kind == SchreierGenerator::Kind::BlackVertex;
    white += g.kind == SchreierGenerator::Kind::WhiteVertex;
  }
  CHECK(black == x_fixed);
  CHECK(white == y_fixed);
  CHECK(pres.incomplete == 0);
}

TEST_CASE("Schreier generators of loop-point and two-track maps fix the base dart") {
  for (const char* expr : {"nprime(3)", "nprime(5;bulbs=1(0))", "twoface(alloc=asymmetric)", "tretkoff(seq=(3))"}) {
    CAPTURE(expr);
    const auto m = compile(parse_catalog(expr));
    const auto pres = schreier_presentation(m, 60);
    CHECK_FALSE(pres.generators.empty());
    for (const auto& g : pres.generators) {
      CHECK(m.act(g.word, tp(0)) == tp(0));
      if (g.order > 0) CHECK(m.act(g.word.pow(g.order), tp(5)) == tp(5));
    }
  }
  CHECK_THROWS(schreier_presentation(compile(build_np(3)), 0));
}

TEST_CASE("signature densities follow the block rules") {
  for (int bit : {0, 1}) {
    BitSource h;
    h.period = {bit};
    const auto m = compile(build_neumann_h(h));
    const auto t = oracle::nh_table(h, 3000);
    Label xs = 0, ys = 0;
    for (Label f : t.x_fixed) xs += f >= -3000 && f < -3 ? 1 : 0;
    for (Label f : t.y_fixed) ys += f >= 2 ? 1 : 0;
    const auto s = signature(m);
    if (bit == 0) {
      CHECK(s.density("C2") == std::pair<Label, Label>{3, 1});
      CHECK(s.density("C3") == std::pair<Label, Label>{0, 1});
      CHECK(xs == 0);
      CHECK(ys > 0);
    } else {
      CHECK(s.density("C3") == std::pair<Label, Label>{1, 1});
      CHECK(s.density("C2") == std::pair<Label, Label>{0, 1});
      CHECK(ys == 0);
      CHECK(xs > 0);
    }
    CHECK(s.density("Cinf") == std::pair<Label, Label>{0, 1});
  }
  const auto mixed = signature(compile(build_neumann_h(parse_bits("(011)"))));
  CHECK(mixed.density("C2") == std::pair<Label, Label>{1, 1});
  CHECK(mixed.density("C3") == std::pair<Label, Label>{2, 3});
  const auto t3 = signature(compile(build_tretkoff(parse_ints("(3)"))));
  CHECK(t3.density("Cinf") == std::pair<Label, Label>{2, 1});
}

TEST_CASE("signature counts agree with short cycles in the window") {
  for (const char* expr : {"np(3)", "np(5)", "npq(3,4)", "nh(h=(01))", "tretkoff(seq=(12))"}) {
    CAPTURE(expr);
    const auto m = compile(parse_catalog(expr));
    const auto s = signature(m);
    const auto core = static_cast<BlockIndex>(m.core_size());
    const auto period = static_cast<BlockIndex>(m.period_size());
    // Short cycles of blocks [core + k * period, core + (k + 1) * period) for a
    // far period k, counted by walking the action.
    const BlockIndex lo = core + 50 * period, hi = lo + period;
    Label finite = 0;
    std::set<std::pair<int, DartSite>> seen;
    for (BlockIndex l = lo; l < hi; ++l)
      for (int d = 0; d < static_cast<int>(m.block_template(l).darts.size()); ++d)
        for (Gen g : {Gen::X, Gen::Y}) {
          const int full = g == Gen::X ? m.type().p : m.type().q;
          std::vector<DartSite> cyc{{l, d}};
          for (DartSite c = m.step({l, d}, g, 1); c != DartSite{l, d}; c = m.step(c, g, 1)) cyc.push_back(c);
          const DartSite key = *std::min_element(cyc.begin(), cyc.end());
          if (static_cast<int>(cyc.size()) < full && seen.insert({static_cast<int>(g), key}).second) ++finite;
        }
    Label from_signature = 0;
    for (const auto& [name, count] : s.per_period)
      if (name != "Cinf") from_signature += count;
    CHECK(finite == from_signature);
  }
}

TEST_CASE("torsion: flower maps are torsion free, Neumann maps are not") {
  for (int p : {3, 5, 7}) {
    CAPTURE(p);
    const auto prime = compile(build_nprime({p, {}}));
    CHECK(torsion_free(prime, 500).torsion_free);
    const auto covering = compile(build_nprime({p, residue_covering_bulbs(p)}));
    CHECK(torsion_free(covering, 500).torsion_free);
    for (Label i = -300; i <= 300; ++i) {
      CHECK(cycle_length(prime, Gen::X, tp(i), 2 * p) == p);
      CHECK(cycle_length(prime, Gen::Y, tp(i), 4) == 2);
    }
    const auto np = compile(build_np(p));
    const auto r = torsion_free(np, 500);
    CHECK_FALSE(r.torsion_free);
    REQUIRE(r.witness);
    const int full = r.gen == Gen::X ? p : 2;
    CHECK(cycle_length(np, r.gen, *r.witness, 2 * full) == r.cycle_length);
    CHECK(r.cycle_length < full);
  }
}

TEST_CASE("orbit probe: the stated generators reach the whole window") {
  const auto m = compile(build_neumann_h(parse_bits("(1)")));
  const auto gens = parse_words({"Y", "Z^-1 Y Z", "Z^-3 X Z^3"});
  for (const auto& w : gens) CHECK(m.act(w, tp(0)) == tp(0));
  const auto r = orbit_probe(m, gens, tp(0), 200);
  CHECK(r.window_points == 400);
  CHECK(r.all_reached());
  CHECK(r.missed.empty());
}

TEST_CASE("orbit probe: fewer generators reach a proper subset") {
  const auto m = compile(build_neumann_h(parse_bits("(1)")));
  const auto none = orbit_probe(m, {}, tp(0), 50);
  CHECK(none.reached == 1);
  CHECK_FALSE(none.all_reached());
  const auto y_only = orbit_probe(m, parse_words({"Y"}), tp(0), 50);
  CHECK(y_only.reached < y_only.window_points);
  CHECK_FALSE(y_only.missed.empty());
  CHECK_THROWS(orbit_probe(m, parse_words({"X"}), tp(1), 50));
  CHECK_THROWS(orbit_probe(m, {}, tp(0), 0));
}
