#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <set>

#include "neumaps/crystal.hpp"

using namespace neumaps;

namespace {

using Mat2d = Eigen::Matrix2d;
using Vec2d = Eigen::Vector2d;

// Cartesian frame: e1 = (1, 0), e2 = (1/2, sqrt(3)/2).
Mat2d basis() {
  Mat2d b;
  b << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0;
  return b;
}

struct Motion {
  Mat2d linear = Mat2d::Identity();
  Vec2d shift = Vec2d::Zero();

  Motion then_before(const Motion& b) const { return {linear * b.linear, linear * b.shift + shift}; }
  Motion inverse() const { return {linear.inverse(), -(linear.inverse() * shift)}; }
};

Motion rotation(double radians, const Vec2d& centre) {
  Mat2d r;
  r << std::cos(radians), -std::sin(radians), std::sin(radians), std::cos(radians);
  return {r, centre - r * centre};
}

Motion mirror(double angle, const Vec2d& through) {
  Mat2d m;
  m << std::cos(2 * angle), std::sin(2 * angle), std::sin(2 * angle), -std::cos(2 * angle);
  return {m, through - m * through};
}

Vec2d cartesian(const Vec2& scaled) { return basis() * Vec2d(double(scaled(0)), double(scaled(1))) / double(kDen); }

Motion to_motion(const AffineIsometry& g) {
  const Mat2d b = basis();
  const Mat2d l = g.linear.cast<double>();
  return {b * l * b.inverse(), b * g.translation.cast<double>() / double(kDen)};
}

bool close(const Motion& a, const Motion& b) {
  return (a.linear - b.linear).norm() < 1e-9 && (a.shift - b.shift).norm() < 1e-9;
}

// Reflection in the line through the origin along e2, and the third-turn
// about the black vertex (e1 + e2) / 3.
Motion r_geometric() { return mirror(M_PI / 3, Vec2d::Zero()); }
Motion s_geometric() { return rotation(2 * M_PI / 3, basis() * Vec2d(1.0 / 3, 1.0 / 3)); }

Motion evaluate_geometric(const Word& w) {
  const Motion r = r_geometric(), s = s_geometric();
  const Motion z = s.then_before(r).inverse();
  Motion out;
  for (const auto& l : w.letters()) {
    const Motion& g = l.gen == Gen::X ? s : l.gen == Gen::Y ? r : z;
    out = out.then_before(l.power > 0 ? g : g.inverse());
  }
  return out;
}

Word random_word(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, 2), sign(0, 1);
  std::vector<Letter> letters;
  for (int k = len(rng); k > 0; --k) letters.push_back({static_cast<Gen>(gen(rng)), sign(rng) ? 1 : -1});
  return Word(letters);
}

/// Honeycomb corners: distance 1/sqrt(3) from the nearest lattice point.
bool geometric_vertex(const Vec2& scaled) {
  const Vec2d p = cartesian(scaled);
  double best = 1e9;
  for (int a = -8; a <= 8; ++a)
    for (int b = -8; b <= 8; ++b) best = std::min(best, (p - basis() * Vec2d(a, b)).norm());
  return std::abs(best - 1 / std::sqrt(3.0)) < 1e-9;
}

}  // namespace

TEST_CASE("generators: exact images agree with the geometric motions") {
  const auto q = q_generators();
  CHECK(close(to_motion(q.r), r_geometric()));
  CHECK(close(to_motion(q.s), s_geometric()));
  CHECK((q.r * q.r).is_identity());
  CHECK(q.s.pow(3).is_identity());
  CHECK((q.r * q.s.inverse() * q.r * q.s).pow(3).is_identity());
  CHECK_FALSE((q.r * q.s.inverse() * q.r * q.s).is_identity());
}

TEST_CASE("relators of the triangle group map to the identity") {
  for (const char* w : {"X^3", "Y^2", "X Y Z", "Z X Y", "(Y X^-1 Y X)^3", "(X^-1 Y X Y)^3"}) {
    CAPTURE(w);
    CHECK(n_membership(parse_word(w)));
    CHECK(close(evaluate_geometric(parse_word(w)), Motion{}));
  }
  for (const char* w : {"X", "Y", "Z", "Y X^-1 Y X", "Z^6", "X Y"}) {
    CAPTURE(w);
    CHECK_FALSE(n_membership(parse_word(w)));
  }
}

TEST_CASE("evaluation is a homomorphism and matches the geometric model") {
  std::mt19937 rng(20261016);
  for (int k = 0; k < 1000; ++k) {
    const Word a = random_word(rng, 12), b = random_word(rng, 12);
    CHECK(evaluate(a * b) == evaluate(a) * evaluate(b));
    CHECK(evaluate(a.inverse()) == evaluate(a).inverse());
    CHECK(close(to_motion(evaluate(a)), evaluate_geometric(a)));
  }
}

TEST_CASE("random conjugates of relators lie in the kernel") {
  std::mt19937 rng(7);
  const std::vector<Word> relators{parse_word("X^3"), parse_word("Y^2"), parse_word("X Y Z"),
                                   parse_word("(Y X^-1 Y X)^3")};
  for (int k = 0; k < 1000; ++k) {
    const Word u = random_word(rng, 15);
    const Word& r = relators[static_cast<std::size_t>(k) % relators.size()];
    CHECK(n_membership(conjugate(u, r)));
    CHECK(n_membership(conjugate(u, r) * conjugate(random_word(rng, 6), relators[0])));
  }
}

TEST_CASE("classification matches geometric invariants") {
  std::mt19937 rng(11);
  std::set<IsometryClass::Kind> kinds;
  for (int k = 0; k < 1000; ++k) {
    const AffineIsometry g = evaluate(random_word(rng, 16));
    const Motion m = to_motion(g);
    const auto c = classify(g);
    kinds.insert(c.kind);
    const double det = m.linear.determinant();
    const bool has_fixed_point = (m.linear - Mat2d::Identity()).fullPivLu().rank() == 2 ||
                                 m.shift.norm() < 1e-9;
    switch (c.kind) {
      case IsometryClass::Kind::Identity: CHECK(g.is_identity()); break;
      case IsometryClass::Kind::Translation:
        CHECK((m.linear - Mat2d::Identity()).norm() < 1e-9);
        CHECK(m.shift.norm() > 1e-9);
        break;
      case IsometryClass::Kind::Rotation:
        CHECK(det > 0);
        CHECK(has_fixed_point);
        CHECK(g.pow(c.order).is_identity());
        break;
      case IsometryClass::Kind::Reflection: {
        CHECK(det < 0);
        const Motion sq = m.then_before(m);
        CHECK(close(sq, Motion{}));
        break;
      }
      case IsometryClass::Kind::GlideReflection: {
        CHECK(det < 0);
        const Motion sq = m.then_before(m);
        CHECK((sq.linear - Mat2d::Identity()).norm() < 1e-9);
        CHECK(sq.shift.norm() > 1e-9);
        CHECK(sq.shift.isApprox(2.0 * basis() * c.vector.cast<double>() / double(c.denominator)));
        break;
      }
    }
  }
  CHECK(kinds.size() == 5);
  CHECK(classify(q_generators().r).kind == IsometryClass::Kind::Reflection);
  CHECK(classify(q_generators().s).order == 3);
  AffineIsometry bad;
  bad.linear << 2, 0, 0, 1;
  CHECK_THROWS(classify(bad));
}

TEST_CASE("nonparabolicity certificate") {
  const auto c = nonparabolicity_certificate(1000);
  CHECK_FALSE(verify_certificate(c));
  CHECK(c.first_trivial == 0);
  CHECK(c.z_power.linear == Mat2::Identity());
  CHECK_FALSE(c.z_power.translation.isZero());
  const Motion z = evaluate_geometric(parse_word("Z"));
  Motion acc;
  for (int k = 1; k <= 1000; ++k) {
    acc = acc.then_before(z);
    CHECK_FALSE(close(acc, Motion{}));
  }
  auto tampered = c;
  tampered.linear_order += 1;
  CHECK(verify_certificate(tampered));
  tampered = c;
  tampered.z_power.translation(0) += 1;
  CHECK(verify_certificate(tampered));
  tampered = c;
  tampered.first_trivial = 5;
  CHECK(verify_certificate(tampered));
  CHECK_THROWS(nonparabolicity_certificate(0));
}

TEST_CASE("honeycomb vertices and edges") {
  for (std::int64_t a = -9; a <= 9; ++a)
    for (std::int64_t b = -9; b <= 9; ++b) {
      const Vec2 v(a, b);
      CHECK(is_vertex(v) == geometric_vertex(v));
      if (!is_vertex(v)) continue;
      std::set<std::pair<std::int64_t, std::int64_t>> ends;
      for (const Vec2& e : edge_vectors(v)) {
        CHECK(std::abs(cartesian(e).norm() - 1 / std::sqrt(3.0)) < 1e-9);
        const Vec2 w = v + e;
        CHECK(is_vertex(w));
        CHECK(((a % 3 + 3) % 3) != ((w(0) % 3 + 3) % 3));
        ends.insert({w(0), w(1)});
      }
      CHECK(ends.size() == 3);
    }
  CHECK_THROWS(edge_vectors(Vec2(0, 0)));
}

TEST_CASE("S keeps the vertex colour and R swaps it") {
  const auto q = q_generators();
  for (std::int64_t a = -12; a <= 12; ++a)
    for (std::int64_t b = -12; b <= 12; ++b) {
      const Vec2 v(a, b);
      if (!is_vertex(v)) continue;
      const auto colour = [](const Vec2& p) { return ((p(0) % 3) + 3) % 3; };
      REQUIRE(is_vertex(q.s.apply(v)));
      REQUIRE(is_vertex(q.r.apply(v)));
      CHECK(colour(q.s.apply(v)) == colour(v));
      CHECK(colour(q.r.apply(v)) != colour(v));
    }
  CHECK(q.s.apply(Vec2(1, 1)) == Vec2(1, 1));
}

TEST_CASE("Petrie paths are straight zig-zags in three directions") {
  std::set<int> classes;
  for (const Vec2& start : {Vec2(1, 1), Vec2(2, 2), Vec2(4, 1), Vec2(-2, -5)})
    for (int dir = 0; dir < 3; ++dir) {
      CAPTURE(dir);
      const auto path = petrie_walk({start, dir}, 1000);
      CHECK_FALSE(path.closed);
      REQUIRE(path.vertices.size() == 1001);
      std::set<std::pair<std::int64_t, std::int64_t>> seen;
      for (const Vec2& v : path.vertices) {
        CHECK(is_vertex(v));
        seen.insert({v(0), v(1)});
      }
      CHECK(seen.size() == path.vertices.size());
      const Vec2 step = path.vertices[2] - path.vertices[0];
      for (std::size_t k = 0; k + 2 < path.vertices.size(); ++k) CHECK(path.vertices[k + 2] - path.vertices[k] == step);
      for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
        const Vec2d e = cartesian(path.vertices[k + 1] - path.vertices[k]);
        CHECK(std::abs(e.norm() - 1 / std::sqrt(3.0)) < 1e-9);
      }
      CHECK(path.displacement == 500 * step);
      CHECK(path.direction_class >= 0);
      classes.insert(path.direction_class);
      const auto parallel = petrie_walk({start + Vec2(3, 0), dir}, 50);
      CHECK(parallel.direction_class == path.direction_class);
    }
  CHECK(classes == std::set<int>{0, 1, 2});
  CHECK_THROWS(petrie_walk({Vec2(1, 1), 3}, 10));
  CHECK_THROWS(petrie_walk({Vec2(0, 0), 0}, 10));
}
