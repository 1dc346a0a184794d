#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>

#include "neumaps/catalog.hpp"
#include "neumaps/primitivity.hpp"
#include "oracle.hpp"

using namespace neumaps;

namespace {

PointRef tp(Label i, int t = 0) { return TrackPoint{t, i}; }

Label mod(Label a, Label n) { return ((a % n) + n) % n; }

/// Whether congruence mod n is preserved by x and y on the window, read off
/// the action pointwise: each residue class must map into a single class.
bool window_congruence(const CompiledModel& m, int n, Label radius) {
  for (Gen g : {Gen::X, Gen::Y}) {
    std::vector<std::optional<Label>> image(static_cast<std::size_t>(n));
    for (Label i = -radius; i <= radius; ++i) {
      const PointRef img = m.act(g, 1, tp(i));
      const auto* t = std::get_if<TrackPoint>(&img);
      if (!t) continue;
      auto& slot = image[static_cast<std::size_t>(mod(i, n))];
      if (slot && *slot != mod(t->index, n)) return false;
      slot = mod(t->index, n);
    }
  }
  return true;
}

bool separates(const CompiledModel& m, int n, LabelPair v) {
  if (mod(v.first - v.second, n) != 0) return false;
  for (Gen g : {Gen::X, Gen::Y}) {
    const PointRef ia = m.act(g, 1, tp(v.first)), ib = m.act(g, 1, tp(v.second));
    const auto* a = std::get_if<TrackPoint>(&ia);
    const auto* b = std::get_if<TrackPoint>(&ib);
    if (a && b && mod(a->index - b->index, n) != 0) return true;
  }
  return false;
}

/// i -> (i + c)' and j' -> j - c commutes with x and y on every label in
/// [lo, hi] of both tracks.
bool half_turn_commutes(const CompiledModel& m, Label c, Label lo, Label hi) {
  auto swap = [c](const PointRef& p) -> PointRef {
    const auto& t = std::get<TrackPoint>(p);
    return t.track == 0 ? tp(t.index + c, 1) : tp(t.index - c, 0);
  };
  for (Label i = lo; i <= hi; ++i)
    for (int t = 0; t < 2; ++t)
      for (Gen g : {Gen::X, Gen::Y})
        if (swap(m.act(g, 1, tp(i, t))) != m.act(g, 1, swap(tp(i, t)))) return false;
  return true;
}

}  // namespace

TEST_CASE("congruence test agrees with the pointwise window check") {
  for (const char* expr : {"np(3)", "np(4)", "npq(3,4)", "nh(h=(0))", "nh(h=(1))", "nh(h=0110(01))", "tretkoff(seq=(123))",
                           "tretkoff(seq=(1))", "nprime(3)"}) {
    CAPTURE(expr);
    const auto m = compile(parse_catalog(expr));
    for (int n = 2; n <= 12; ++n) {
      CAPTURE(n);
      const auto r = congruence_test(m, n, 300);
      CHECK(r.invariant == window_congruence(m, n, 600));
      if (!r.invariant) {
        REQUIRE(r.violation);
        CHECK(separates(m, n, *r.violation));
      }
    }
  }
}

TEST_CASE("congruence mod 3 on the all-zero sequence matches the block rules") {
  const auto t = oracle::nh_table(parse_bits("(0)"), 3000);
  std::map<Label, Label> image;
  for (const auto& [i, j] : t.y) {
    const auto [it, fresh] = image.emplace(mod(i, 3), mod(j, 3));
    CHECK(it->second == mod(j, 3));
  }
  CHECK(image.size() == 3);
  const auto m = compile(build_neumann_h(parse_bits("(0)")));
  CHECK(congruence_test(m, 3).invariant);
  CHECK_FALSE(congruence_test(m, 2).invariant);
  const auto v = verdict(m, {});
  const auto* imp = std::get_if<Imprimitive>(&v);
  REQUIRE(imp);
  CHECK(imp->modulus == 3);
}

TEST_CASE("sequences with a one have no invariant congruence up to 100") {
  for (int len = 1; len <= 4; ++len)
    for (unsigned v = 1; v < (1u << len); ++v) {
      BitSource h;
      for (int k = 0; k < len; ++k) h.period.push_back(static_cast<int>((v >> k) & 1u));
      CAPTURE(v);
      CAPTURE(len);
      const auto m = compile(build_neumann_h(h));
      for (int n = 2; n <= 100; ++n) {
        const auto r = congruence_test(m, n);
        REQUIRE_FALSE(r.invariant);
        CHECK(separates(m, n, *r.violation));
      }
    }
}

TEST_CASE("fixed point witnesses are fixed and congruent") {
  const auto m = compile(build_np(5));
  for (int n = 2; n <= 40; ++n) {
    const auto w = fixed_point_witness(m, n, 400);
    REQUIRE(w);
    CHECK(m.act(Gen::X, 1, tp(w->first)) == tp(w->first));
    CHECK(m.act(Gen::Y, 1, tp(w->second)) == tp(w->second));
    CHECK(mod(w->first - w->second, n) == 0);
  }
  CHECK_FALSE(fixed_point_witness(compile(build_neumann_h(parse_bits("(0)"))), 3, 300));
  CHECK_THROWS(fixed_point_witness(m, 1, 10));
}

TEST_CASE("fixed point schemas certify N_p and N_{p,q}") {
  for (int p : {3, 4, 5, 7}) {
    CAPTURE(p);
    const auto m = compile(build_np(p));
    const auto r = certify_schema(m, parse_schema("fixed:0;3n", p), 100, 1000);
    REQUIRE(std::holds_alternative<Certificate>(r));
    const auto& c = std::get<Certificate>(r);
    CHECK_FALSE(verify_certificate(m, c));
    for (Label n = 2; n <= 200; ++n) CHECK(m.act(Gen::Y, 1, tp(3 * n)) == tp(3 * n));
    for (int q : {3, 4}) {
      CAPTURE(q);
      const auto mq = compile(build_npq(p, q));
      const auto rq = certify_schema(mq, parse_schema("fixed:0;2n", p), 100, 1000);
      REQUIRE(std::holds_alternative<Certificate>(rq));
      CHECK_FALSE(verify_certificate(mq, std::get<Certificate>(rq)));
    }
  }
}

TEST_CASE("fixed point schemas that do not hold are rejected") {
  const auto m = compile(build_np(3));
  const auto bad_family = certify_schema(m, parse_schema("fixed:0;3n+1", 3), 100, 1000);
  CHECK(std::holds_alternative<SchemaFailure>(bad_family));
  const auto bad_fix = certify_schema(m, parse_schema("fixed:1;3n", 3), 100, 1000);
  CHECK(std::holds_alternative<SchemaFailure>(bad_fix));
  auto r = certify_schema(m, parse_schema("fixed:0;3n", 3), 100, 1000);
  auto cert = std::get<FixedPointCertificate>(std::get<Certificate>(r));
  cert.tail_period += 1;
  CHECK(verify_certificate(m, Certificate{cert}));
  cert.tail_period -= 1;
  cert.n_structural = 2;
  CHECK(verify_certificate(m, Certificate{cert}));
  CHECK(verify_certificate(compile(build_npq(3, 4)), std::get<Certificate>(r)));
}

TEST_CASE("stabilizer schema certifies N'_p with covering bulbs") {
  for (int p : {3, 5, 7}) {
    CAPTURE(p);
    FlowerParams fp{p, residue_covering_bulbs(p)};
    const auto m = compile(build_nprime(fp));
    const auto schema = flower_schema(p);
    const auto r = certify_schema(m, schema, 100, 1000);
    REQUIRE(std::holds_alternative<Certificate>(r));
    const auto& c = std::get<StabilizerCertificate>(std::get<Certificate>(r));
    CHECK_FALSE(verify_certificate(m, Certificate{c}));
    CHECK(c.gcd == 1);
    Label g = 0;
    for (const auto& [from, to] : schema.pairs) {
      CHECK(m.act(schema.w, tp(from)) == tp(to));
      g = std::gcd(g, std::abs(to - from));
    }
    CHECK(g == 1);
    const Label slope = m.upper_period_slope();
    for (Label lam : c.principal_tail) CHECK(mod(lam, slope) == 1);
    for (Label lam : c.principal_core) CHECK(m.act(schema.w, tp(lam)) == tp(lam));
    CHECK(c.track_and_y_cover);
    CHECK(c.alpha_in_both);
    const auto v = verdict(m, {.schema = Schema{schema}});
    CHECK(std::holds_alternative<Primitive>(v));
  }
}

TEST_CASE("stabilizer certificates reject tampering") {
  const auto m = compile(build_nprime({5, residue_covering_bulbs(5)}));
  const auto r = certify_schema(m, flower_schema(5), 100, 1000);
  const auto base = std::get<StabilizerCertificate>(std::get<Certificate>(r));
  auto c = base;
  c.gcd = 2;
  CHECK(verify_certificate(m, Certificate{c}));
  c = base;
  c.schema.pairs.front().second += 1;
  CHECK(verify_certificate(m, Certificate{c}));
  c = base;
  c.principal_tail.front() += 1;
  CHECK(verify_certificate(m, Certificate{c}));
  c = base;
  c.checked_periods = 1;
  CHECK(verify_certificate(m, Certificate{c}));
  c = base;
  c.coverage.pop_back();
  CHECK(verify_certificate(m, Certificate{c}));
  CHECK(verify_certificate(compile(build_nprime({5, {}})), Certificate{base}));
}

TEST_CASE("stabilizer schema fails when the forcing pairs are wrong") {
  const auto m = compile(build_nprime({3, residue_covering_bulbs(3)}));
  auto s = flower_schema(3);
  s.pairs.front().second += 1;
  CHECK(std::holds_alternative<SchemaFailure>(certify_schema(m, Schema{s}, 100, 1000)));
  s = flower_schema(3);
  s.w = parse_word("Z Y");
  CHECK(std::holds_alternative<SchemaFailure>(certify_schema(m, Schema{s}, 100, 1000)));
}

TEST_CASE("two-face maps: asymmetric allocation is primitive") {
  const auto m = compile(build_twoface(TwoFaceAllocation::asymmetric()));
  const auto v = verdict(m, {.shift_bound = 200});
  const auto* prim = std::get_if<Primitive>(&v);
  REQUIRE(prim);
  const auto& cert = std::get<TwoTrackCertificate>(prim->certificate);
  CHECK_FALSE(verify_certificate(m, prim->certificate));
  for (Label c = -cert.shift_bound; c <= cert.shift_bound; ++c)
    CHECK_FALSE(half_turn_commutes(m, c, -cert.certified_bound - 200, cert.certified_bound + 200));
  for (const auto& f : cert.families) {
    CHECK(m.act(Gen::X, 1, tp(f.x_fixed, f.track)) == tp(f.x_fixed, f.track));
    for (int k = 0; k < 50; ++k) {
      const Label j = f.y_fixed + (f.y_fixed >= 0 ? 1 : -1) * k * f.period;
      CHECK(m.act(Gen::Y, 1, tp(j, f.track)) == tp(j, f.track));
    }
  }
  auto tampered = cert;
  tampered.swap_refutations.pop_back();
  CHECK(verify_certificate(m, Certificate{tampered}));
  tampered = cert;
  tampered.shift_bound = cert.certified_bound - 1;
  CHECK(verify_certificate(m, Certificate{tampered}));
  CHECK(std::holds_alternative<Unknown>(verdict(m, {.shift_bound = 1})));
}

TEST_CASE("two-face maps: symmetric allocation has a half-turn") {
  for (const char* bits : {"(0)", "(1)", "(01)", "1(0)"}) {
    CAPTURE(bits);
    const auto m = compile(build_twoface(TwoFaceAllocation::symmetric(parse_bits(bits))));
    const auto v = verdict(m, {.shift_bound = 200});
    const auto* imp = std::get_if<Imprimitive>(&v);
    REQUIRE(imp);
    REQUIRE(imp->pair_shift);
    const Label c = *imp->pair_shift;
    CHECK(half_turn_commutes(m, c, -1000, 1000));
    Label period = 1;
    for (int t = 0; t < 2; ++t)
      for (bool pos : {true, false}) period = std::lcm(period, m.track_tail(t, pos).period);
    CHECK(half_turn_commutes(m, c, 1000000, 1000000 + period));
    CHECK(half_turn_commutes(m, c, -1000000 - period, -1000000));
    CHECK(find_track_swap(m, 1000, 200) == c);
  }
}

TEST_CASE("verdict on loop-point models without a schema is unknown") {
  const auto m = compile(build_nprime({3, {}}));
  const auto v = verdict(m, {});
  CHECK(std::holds_alternative<Unknown>(v));
  CHECK_THROWS(verdict(m, {.n_max = 1}));
}

TEST_CASE("schema text") {
  const auto f = parse_schema("fixed:0;3n", 3);
  CHECK(std::get<FixedPointSchema>(f) == FixedPointSchema{0, 3, 0});
  CHECK(std::get<FixedPointSchema>(parse_schema("fixed:-1;2n-1", 3)) == FixedPointSchema{-1, 2, -1});
  CHECK(std::get<StabilizerSchema>(parse_schema("stabilizer:flower", 5)) == flower_schema(5));
  const auto s = parse_schema("stabilizer:Z^2 Y;1>-4;-2>2", 3);
  CHECK(std::get<StabilizerSchema>(s).pairs == std::vector<LabelPair>{{1, -4}, {-2, 2}});
  CHECK(parse_schema(to_string(s), 3) == s);
  CHECK(parse_schema(to_string(f), 3) == f);
  CHECK_THROWS(parse_schema("bogus:1", 3));
  CHECK_THROWS(parse_schema("fixed:0", 3));
  CHECK_THROWS(flower_schema(4));
}
