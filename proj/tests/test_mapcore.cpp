#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "neumaps/analysis.hpp"
#include "neumaps/catalog.hpp"
#include "neumaps/model.hpp"
#include "neumaps/sequence.hpp"
#include "neumaps/word.hpp"
#include "oracle.hpp"

using namespace neumaps;

namespace {

PointRef tp(Label i, int t = 0) { return TrackPoint{t, i}; }

std::vector<MapDescription> sample_maps() {
  return {
      build_np(3),
      build_np(5, parse_bits("01(1)")),
      build_npq(3, 4),
      build_npq(4, 3, parse_bits("1(0)")),
      build_nprime({3, parse_ints("1,0(2)")}),
      build_nprime({5, {}}),
      build_neumann_h(parse_bits("0110(01)")),
      build_tretkoff(parse_ints("12(3)")),
      build_twoface(TwoFaceAllocation::asymmetric()),
      build_twoface(TwoFaceAllocation::symmetric(parse_bits("(10)"))),
  };
}

}  // namespace

TEST_CASE("sequence grammar parses prefixes, periods and ellipses") {
  const auto a = parse_bits("0110(01)");
  CHECK(a.prefix == std::vector<int>{0, 1, 1, 0});
  CHECK(a.period == std::vector<int>{0, 1});
  CHECK(a.at(4) == 0);
  CHECK(a.at(5) == 1);
  CHECK(a.at(100) == 0);
  const auto b = parse_bits("0111...");
  CHECK(b.prefix == std::vector<int>{0, 1, 1});
  CHECK(b.period == std::vector<int>{1});
  const auto c = parse_ints("2,0,1(3,1)");
  CHECK(c.prefix == std::vector<std::int64_t>{2, 0, 1});
  CHECK(c.period == std::vector<std::int64_t>{3, 1});
  CHECK(parse_ints("(12)").period == std::vector<std::int64_t>{1, 2});
  CHECK(parse_ints("(12,3)").period == std::vector<std::int64_t>{12, 3});
  for (const char* s : {"0110(01)", "(1)", "1(0)", "0(01)"}) CHECK(parse_bits(format_bits(parse_bits(s))) == parse_bits(s));
  CHECK_THROWS(parse_bits("01(2)"));
  CHECK_THROWS(parse_bits("0(1"));
  CHECK_THROWS(BitSource{{0, 1}, {}}.at(5));
}

TEST_CASE("words parse, print, invert and reduce") {
  const Word w = parse_word("Y X^-1 Y X");
  CHECK(w.size() == 4);
  CHECK(to_string(w) == "Y X^-1 Y X");
  CHECK(parse_word("(Y X^-1 Y X)^3").size() == 12);
  CHECK(parse_word("Z^-3 X Z^3") == Word::gen(Gen::Z, -3) * Word::gen(Gen::X) * Word::gen(Gen::Z, 3));
  CHECK(parse_word("1").empty());
  CHECK(parse_word("").empty());
  CHECK((w * w.inverse()).reduced().empty());
  CHECK(parse_word("Z^2 Y Y^-1 Z^-1").reduced() == parse_word("Z"));
  CHECK(conjugate(parse_word("Z"), parse_word("Y")) == parse_word("Z Y Z^-1"));
  CHECK(parse_word(to_string(parse_word("Z^-3 X Z^3"))) == parse_word("Z^-3 X Z^3"));
  CHECK_THROWS(parse_word("Q"));
  CHECK_THROWS(parse_word("(X Y"));
}

TEST_CASE("compile reports the documented errors") {
  SUBCASE("bad type") {
    auto d = build_np(3);
    d.type.p = 2;
    CHECK_THROWS_AS(compile(d), MapError);
  }
  SUBCASE("dangling port: empty period") {
    auto d = build_np(3);
    d.source.period.clear();
    try {
      compile(d);
      FAIL("expected an error");
    } catch (const MapError& e) {
      CHECK(e.code() == MapErrorCode::DanglingPort);
    }
  }
  SUBCASE("dangling port: unglued right port") {
    auto d = build_np(3);
    BlockTemplate t = TemplateBuilder("loose").left_port("L").x({"L", "U", "R"}).y({"U"}).y({"R"}).build();
    d.templates["np.b(p=3)"] = t;
    d.templates["np.b(p=3)"].id = "np.b(p=3)";
    try {
      compile(d);
      FAIL("expected an error");
    } catch (const MapError& e) {
      CHECK(e.code() == MapErrorCode::DanglingPort);
    }
  }
  SUBCASE("dart in two x-cycles") {
    auto d = build_np(3);
    BlockTemplate t = TemplateBuilder("np.b(p=3)").left_port("L").x({"L", "U", "R"}).y({"U"}).y({"R", "+"}).build();
    t.x_cycles.push_back({t.dart("U")});
    d.templates[t.id] = t;
    try {
      compile(d);
      FAIL("expected an error");
    } catch (const MapError& e) {
      CHECK(e.code() == MapErrorCode::DartInTwoCycles);
    }
  }
  SUBCASE("anchor on a loop point") {
    auto d = build_nprime({3, {}});
    d.anchors = {{0, "Ta1"}};
    try {
      compile(d);
      FAIL("expected an error");
    } catch (const MapError& e) {
      CHECK(e.code() == MapErrorCode::AnchorOnLoop);
    }
  }
  SUBCASE("cycle length not dividing p") {
    auto d = build_np(3);
    d.templates["np.b(p=3)"] = TemplateBuilder("np.b(p=3)").left_port("L").x({"L", "R"}).y({"R", "+"}).build();
    try {
      compile(d);
      FAIL("expected an error");
    } catch (const MapError& e) {
      CHECK(e.code() == MapErrorCode::CycleLength);
    }
  }
  SUBCASE("wrong anchor count") {
    auto d = build_twoface(TwoFaceAllocation::asymmetric());
    d.anchors.pop_back();
    CHECK_THROWS_AS(compile(d), MapError);
  }
}

TEST_CASE("corrupted block compiles non-strictly and fails the relator check with a witness") {
  auto d = build_np(3);
  d.templates["np.b(p=3)"] = TemplateBuilder("np.b(p=3)").left_port("L").x({"L", "R"}).y({"R", "+"}).build();
  const auto m = compile(d, {.strict_cycle_lengths = false});
  const auto r = verify_relators(m, 100);
  CHECK_FALSE(r.pass);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations.front().gen == Gen::X);
  CHECK(r.violations.front().length == 2);
  CHECK(r.x_lengths.count(2) == 1);
}

TEST_CASE("compiled labels agree with an unrolled explicit z-walk") {
  for (const auto& d : sample_maps()) {
    CAPTURE(d.catalog_name);
    const auto m = compile(d);
    const BlockIndex lo = m.one_ended() ? 0 : -40, hi = 60;
    const auto u = oracle::unroll(m, lo, hi);
    std::map<int, std::pair<int, Label>> label;  // dart -> (track, label)
    for (int t = 0; t < m.track_count(); ++t) {
      const auto& a = d.anchors[static_cast<std::size_t>(t)];
      for (const auto& [dart, i] : oracle::walk_labels(u, u.dart(a.block, a.dart, m))) label[dart] = {t, i};
    }
    REQUIRE(label.size() > 100);
    std::size_t checked = 0;
    for (const auto& [dart, ti] : label) {
      const auto [t, i] = ti;
      const auto [block, local] = u.site[static_cast<std::size_t>(dart)];
      const DartSite s = m.locate(tp(i, t));
      CHECK(s.block == block);
      CHECK(s.dart == local);
      for (Gen g : {Gen::X, Gen::Y}) {
        const int img = g == Gen::X ? u.x[static_cast<std::size_t>(dart)] : u.y[static_cast<std::size_t>(dart)];
        if (img < 0) continue;
        const PointRef got = m.act(g, 1, tp(i, t));
        if (auto it = label.find(img); it != label.end()) {
          CHECK(got == tp(it->second.second, it->second.first));
        } else {
          const auto [b2, l2] = u.site[static_cast<std::size_t>(img)];
          CHECK(got == PointRef{LoopPoint{b2, l2}});
        }
        ++checked;
      }
    }
    CHECK(checked > 200);
    for (std::size_t dart = 0; dart < u.site.size(); ++dart) {
      if (u.z(static_cast<int>(dart)) != static_cast<int>(dart)) continue;
      const auto [block, local] = u.site[dart];
      const PointRef p = LoopPoint{block, local};
      CHECK(m.act(Gen::Z, 1, p) == p);
      CHECK(m.locate(p).block == block);
    }
  }
}

TEST_CASE("tail block offsets are affine in the block index") {
  for (const auto& d : sample_maps()) {
    const auto m = compile(d);
    if (!m.one_ended()) continue;
    CAPTURE(d.catalog_name);
    const auto u = oracle::unroll(m, 0, 60);
    const auto lab = oracle::walk_labels(u, u.dart(0, d.anchors[0].dart, m));
    const auto core = static_cast<BlockIndex>(m.core_size());
    const auto per = static_cast<BlockIndex>(m.period_size());
    for (BlockIndex l = core; l + per <= 50; ++l) {
      CHECK(m.upper_start(l + per) - m.upper_start(l) == m.upper_period_slope());
      CHECK(m.lower_start(l) - m.lower_start(l + per) == m.lower_period_slope());
      // The first upper dart of block l, found by walking.
      Label best = std::numeric_limits<Label>::max();
      for (const auto& [dart, i] : lab)
        if (u.site[static_cast<std::size_t>(dart)].first == l && i >= 0) best = std::min(best, i);
      CHECK(m.upper_start(l) == best);
    }
  }
}

TEST_CASE("z translates tracks exactly at large indices") {
  const auto m = compile(build_neumann_h(parse_bits("01(011)")));
  for (Label i : {Label{5}, Label{-7}, Label{999'999'999}, Label{-1'000'000'000}, Label{123'456'789}}) {
    CHECK(m.act(Gen::Z, 1, tp(i)) == tp(i + 1));
    CHECK(m.act(Gen::Z, -1, tp(i)) == tp(i - 1));
    for (Gen g : {Gen::X, Gen::Y}) CHECK(m.act(g, -1, m.act(g, 1, tp(i))) == tp(i));
    CHECK(m.act(parse_word("X Y Z"), tp(i)) == tp(i));
  }
  const auto tf = compile(build_twoface(TwoFaceAllocation::asymmetric()));
  CHECK(tf.act(Gen::Z, 1, tp(5, 1)) == tp(6, 1));
  CHECK(tf.act(Gen::Z, 1, tp(-1'000'000'000, 0)) == tp(-999'999'999, 0));
}

TEST_CASE("bijectivity, xyz = 1 and cycle divisibility on windows") {
  for (const auto& d : sample_maps()) {
    CAPTURE(d.catalog_name);
    const auto m = compile(d);
    const auto p = m.type().p, q = m.type().q;
    for (const auto& w : m.window(150)) {
      for (Gen g : {Gen::X, Gen::Y, Gen::Z}) {
        CHECK(m.act(g, -1, m.act(g, 1, w)) == w);
        CHECK(m.act(g, 1, m.act(g, -1, w)) == w);
      }
      CHECK(m.act(parse_word("X Y Z"), w) == w);
      CHECK(m.act(Word::gen(Gen::X).pow(p), w) == w);
      CHECK(m.act(Word::gen(Gen::Y).pow(q), w) == w);
      CHECK(m.act(Word{}, w) == w);
    }
  }
}

TEST_CASE("words act left to right") {
  const auto m = compile(build_np(3));
  const PointRef i = tp(4);
  const PointRef via = m.act(Gen::Y, 1, m.act(Gen::Z, 2, i));
  CHECK(m.act(parse_word("Z^2 Y"), i) == via);
}

TEST_CASE("verify_relators reports occurring cycle lengths") {
  const auto r5 = verify_relators(compile(build_np(5)), 10000);
  CHECK(r5.pass);
  CHECK(r5.x_lengths == std::set<int>{1, 5});
  CHECK(r5.y_lengths == std::set<int>{1, 2});
  const auto r34 = verify_relators(compile(build_npq(3, 4)), 1000);
  CHECK(r34.pass);
  CHECK(r34.y_lengths == std::set<int>{1, 4});
  CHECK_THROWS(verify_relators(compile(build_np(3)), 0));
}

TEST_CASE("census flags") {
  const auto np = census(compile(build_np(3)), 500);
  CHECK(np.track_count == 1);
  CHECK(np.loop_points_core == 0);
  CHECK(np.is_neumann);
  CHECK(np.is_nonparabolic);
  const auto npr = census(compile(build_nprime({3, {}})), 500);
  CHECK(npr.track_count == 1);
  CHECK(npr.loop_points_per_period > 0);
  CHECK_FALSE(npr.is_neumann);
  CHECK_FALSE(npr.is_nonparabolic);
  const auto tf = census(compile(build_twoface(TwoFaceAllocation::asymmetric())), 500);
  CHECK(tf.track_count == 2);
  CHECK_FALSE(tf.is_neumann);
  CHECK(tf.is_nonparabolic);
  CHECK(np.terminal_edges > 0);
}

TEST_CASE("shift equivalence") {
  const auto a = compile(build_neumann_h(parse_bits("0111...")));
  const auto b = compile(build_neumann_h(parse_bits("1111...")));
  const auto same = shift_equivalent(a, a, 500, 30);
  REQUIRE(same.shift);
  CHECK(*same.shift == 0);
  const auto r = shift_equivalent(a, b, 500, certified_shift_bound(a, b));
  CHECK_FALSE(r.shift);
  CHECK(r.certified);
  // Moving the anchor one step along z relabels every dart by -1.
  const auto ya = tabulate_y(a, 600);
  YTable moved = ya;
  moved.radius = 599;
  moved.y.clear();
  for (Label i = -599; i <= 599; ++i) moved.y.push_back(ya.at(i + 1) - 1);
  const auto s = shift_equivalent(ya, moved, 500, 5);
  REQUIRE(s);
  CHECK(*s == 1);
  CHECK_THROWS_AS(shift_equivalent(a, compile(build_twoface(TwoFaceAllocation::asymmetric())), 100, 10), MapError);
}
