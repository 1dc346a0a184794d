#include "neumaps/crystal.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace neumaps {

AffineIsometry operator*(const AffineIsometry& a, const AffineIsometry& b) {
  return {a.linear * b.linear, a.linear * b.translation + a.translation};
}

AffineIsometry AffineIsometry::inverse() const {
  const std::int64_t det = linear(0, 0) * linear(1, 1) - linear(0, 1) * linear(1, 0);
  if (det != 1 && det != -1) throw std::invalid_argument("AffineIsometry: linear part is not unimodular");
  Mat2 inv;
  inv << linear(1, 1), -linear(0, 1), -linear(1, 0), linear(0, 0);
  inv *= det;
  return {inv, -(inv * translation)};
}

AffineIsometry AffineIsometry::pow(std::int64_t k) const {
  AffineIsometry base = k < 0 ? inverse() : *this;
  AffineIsometry out;
  for (std::int64_t e = k < 0 ? -k : k; e > 0; e >>= 1) {
    if (e & 1) out = out * base;
    base = base * base;
  }
  return out;
}

std::string to_string(IsometryClass::Kind k) {
  switch (k) {
    case IsometryClass::Kind::Identity: return "identity";
    case IsometryClass::Kind::Rotation: return "rotation";
    case IsometryClass::Kind::Translation: return "translation";
    case IsometryClass::Kind::Reflection: return "reflection";
    case IsometryClass::Kind::GlideReflection: return "glide-reflection";
  }
  return "?";
}

QGenerators q_generators() {
  QGenerators g;
  g.r.linear << -1, 0, 1, 1;
  g.r.translation << 0, 0;
  g.s.linear << -1, -1, 1, 0;
  g.s.translation << kDen, 0;
  return g;
}

AffineIsometry evaluate(const Word& w) {
  const auto q = q_generators();
  const AffineIsometry z = (q.s * q.r).inverse();
  AffineIsometry out;
  for (const auto& l : w.letters()) {
    const AffineIsometry& g = l.gen == Gen::X ? q.s : l.gen == Gen::Y ? q.r : z;
    out = out * (l.power > 0 ? g : g.inverse());
  }
  return out;
}

int linear_order(const Mat2& m) {
  Mat2 acc = m;
  for (int k = 1; k <= 12; ++k) {
    if (acc == Mat2::Identity()) return k;
    acc = acc * m;
  }
  throw std::invalid_argument("linear part has infinite order");
}

IsometryClass classify(const AffineIsometry& g) {
  const Mat2& l = g.linear;
  const std::int64_t det = l(0, 0) * l(1, 1) - l(0, 1) * l(1, 0);
  if (det != 1 && det != -1) throw std::invalid_argument("classify: determinant is not +-1");
  // Gram matrix of the hexagonal basis, doubled.
  Mat2 gram;
  gram << 2, 1, 1, 2;
  if (l.transpose() * gram * l != gram) throw std::invalid_argument("classify: linear part is not a lattice isometry");
  IsometryClass c;
  c.order = linear_order(l);
  if (c.order == 1) {
    c.kind = g.translation.isZero() ? IsometryClass::Kind::Identity : IsometryClass::Kind::Translation;
    c.vector = g.translation;
    return c;
  }
  if (det == 1) {
    c.kind = IsometryClass::Kind::Rotation;
    return c;
  }
  // g^2 is the translation by twice the glide vector.
  const Vec2 twice = l * g.translation + g.translation;
  c.kind = twice.isZero() ? IsometryClass::Kind::Reflection : IsometryClass::Kind::GlideReflection;
  c.vector = twice;
  c.denominator = 2 * kDen;
  return c;
}

bool n_membership(const Word& w) { return evaluate(w).is_identity(); }

NonparabolicityCertificate nonparabolicity_certificate(std::int64_t k_max) {
  if (k_max < 1) throw std::invalid_argument("nonparabolicity_certificate: k_max must be >= 1");
  NonparabolicityCertificate c;
  c.k_max = k_max;
  c.z_image = evaluate(Word::gen(Gen::Z));
  c.linear_order = linear_order(c.z_image.linear);
  c.z_power = c.z_image.pow(c.linear_order);
  AffineIsometry acc;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    acc = acc * c.z_image;
    if (acc.is_identity()) {
      c.first_trivial = k;
      break;
    }
  }
  if (c.first_trivial != 0) throw std::runtime_error("Z^" + std::to_string(c.first_trivial) + " maps to the identity");
  if (c.z_power.translation.isZero()) throw std::runtime_error("the image of Z has finite order");
  return c;
}

std::optional<std::string> verify_certificate(const NonparabolicityCertificate& c) {
  if (!(c.z_image == evaluate(Word::gen(Gen::Z)))) return "stored image of Z does not match";
  if (linear_order(c.z_image.linear) != c.linear_order) return "stored linear order does not match";
  if (!(c.z_power == c.z_image.pow(c.linear_order))) return "stored power does not match";
  if (c.z_power.linear != Mat2::Identity() || c.z_power.translation.isZero()) return "power is not a nonzero translation";
  if (c.first_trivial != 0) return "a power up to k_max is trivial";
  return std::nullopt;
}

namespace {

std::int64_t mod3(std::int64_t a) { return ((a % 3) + 3) % 3; }

std::int64_t cross(const Vec2& a, const Vec2& b) { return a(0) * b(1) - a(1) * b(0); }

}  // namespace

bool is_vertex(const Vec2& v) {
  const auto a = mod3(v(0)), b = mod3(v(1));
  return a == b && a != 0;
}

std::vector<Vec2> edge_vectors(const Vec2& vertex) {
  if (!is_vertex(vertex)) throw std::invalid_argument("edge_vectors: not a vertex of the tessellation");
  const std::int64_t sign = mod3(vertex(0)) == 1 ? 1 : -1;
  return {Vec2(sign * 1, sign * 1), Vec2(sign * -2, sign * 1), Vec2(sign * 1, sign * -2)};
}

PetriePath petrie_walk(const PetrieDart& start, int steps) {
  if (steps < 1) throw std::invalid_argument("petrie_walk: steps must be >= 1");
  if (start.direction < 0 || start.direction > 2) throw std::invalid_argument("petrie_walk: direction must be 0, 1 or 2");
  PetriePath path;
  Vec2 cur = start.vertex;
  Vec2 d = edge_vectors(cur)[static_cast<std::size_t>(start.direction)];
  path.vertices.push_back(cur);
  std::set<std::pair<std::int64_t, std::int64_t>> seen{{cur(0), cur(1)}};
  for (int s = 1; s <= steps; ++s) {
    cur += d;
    path.vertices.push_back(cur);
    if (!seen.insert({cur(0), cur(1)}).second) path.closed = true;
    if (s == steps) break;
    const bool left = s % 2 == 1;
    for (const Vec2& e : edge_vectors(cur)) {
      if (e == -d) continue;
      if ((cross(d, e) > 0) == left) {
        d = e;
        break;
      }
    }
  }
  path.displacement = path.vertices.back() - path.vertices.front();
  if (steps >= 2) {
    Vec2 two = path.vertices[2] - path.vertices[0];
    const std::int64_t g = std::gcd(two(0), two(1));
    two /= g;
    const Vec2 classes[3] = {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 1)};
    for (int k = 0; k < 3; ++k)
      if (two == classes[k] || two == -classes[k]) path.direction_class = k;
  }
  return path;
}

}  // namespace neumaps
