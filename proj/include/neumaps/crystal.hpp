#pragma once

// Exact affine model of the wallpaper quotient Q = <R, S | R^2, S^3,
// (R S^-1 R S)^3> and of the epimorphism X -> S, Y -> R.
//
// Coordinates are taken in the hexagonal lattice basis e1 = (1, 0),
// e2 = (1/2, sqrt(3)/2). Translations and points are stored as integers
// scaled by kDen = 3.

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "neumaps/word.hpp"

namespace neumaps {

using Mat2 = Eigen::Matrix<std::int64_t, 2, 2>;
using Vec2 = Eigen::Matrix<std::int64_t, 2, 1>;

inline constexpr std::int64_t kDen = 3;

/// v -> linear * v + translation / kDen.
struct AffineIsometry {
  Mat2 linear = Mat2::Identity();
  Vec2 translation = Vec2::Zero();

  static AffineIsometry identity() { return {}; }
  /// (a * b)(v) = a(b(v)).
  friend AffineIsometry operator*(const AffineIsometry& a, const AffineIsometry& b);
  AffineIsometry inverse() const;
  AffineIsometry pow(std::int64_t k) const;
  bool is_identity() const { return linear == Mat2::Identity() && translation.isZero(); }
  /// Image of a point given in kDen-scaled coordinates.
  Vec2 apply(const Vec2& scaled_point) const { return linear * scaled_point + translation; }
  bool operator==(const AffineIsometry& o) const { return linear == o.linear && translation == o.translation; }
};

struct IsometryClass {
  enum class Kind { Identity, Rotation, Translation, Reflection, GlideReflection };

  Kind kind = Kind::Identity;
  int order = 1;        // rotations: order of the linear part
  Vec2 vector = Vec2::Zero();  // translation vector (scaled by kDen) or glide vector (scaled by 2 * kDen)
  std::int64_t denominator = kDen;
};

std::string to_string(IsometryClass::Kind k);

struct QGenerators {
  AffineIsometry r;  // reflection
  AffineIsometry s;  // order-3 rotation about a vertex
};

QGenerators q_generators();

/// Homomorphic image: X -> S, Y -> R, Z -> (S R)^-1, products composed in
/// word order.
AffineIsometry evaluate(const Word& w);

/// Throws std::invalid_argument when the linear part is not a lattice
/// isometry of finite order.
IsometryClass classify(const AffineIsometry& g);

/// Order of the linear part (1, 2, 3, 4 or 6).
int linear_order(const Mat2& m);

bool n_membership(const Word& w);

struct NonparabolicityCertificate {
  std::int64_t k_max = 0;
  AffineIsometry z_image;
  int linear_order = 0;            // m
  AffineIsometry z_power;          // image of Z^m, a translation
  std::int64_t first_trivial = 0;  // 0 when no power up to k_max is trivial
};

/// Throws std::runtime_error when a power of Z maps to the identity.
NonparabolicityCertificate nonparabolicity_certificate(std::int64_t k_max);
std::optional<std::string> verify_certificate(const NonparabolicityCertificate& c);

/// A dart of the hexagonal tessellation: a vertex (kDen-scaled lattice
/// coordinates) and one of its three edge directions.
struct PetrieDart {
  Vec2 vertex = Vec2::Zero();
  int direction = 0;
};

/// Edge vectors (kDen-scaled) leaving a vertex. Hexagon centres sit at
/// lattice points; black vertices at lattice points + (1, 1) / 3 and white
/// vertices at lattice points + (2, 2) / 3.
std::vector<Vec2> edge_vectors(const Vec2& vertex);
bool is_vertex(const Vec2& scaled_point);

struct PetriePath {
  std::vector<Vec2> vertices;  // steps + 1 entries
  bool closed = false;         // a vertex repeats
  Vec2 displacement = Vec2::Zero();
  int direction_class = -1;    // 0: e1, 1: e2, 2: e2 - e1
};

/// Zig-zag path turning left, right, left, ... at successive vertices.
PetriePath petrie_walk(const PetrieDart& start, int steps);

}  // namespace neumaps
