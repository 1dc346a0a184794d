#pragma once

// Invariant equivalence relations on the dart set: congruence tests, fixed
// point witnesses, schema certificates and the two-track case analysis.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "neumaps/model.hpp"

namespace neumaps {

using LabelPair = std::pair<Label, Label>;

struct CongruenceResult {
  int n = 2;
  bool invariant = false;
  std::optional<LabelPair> violation;  // i == j mod n with y-images not congruent
  std::int64_t periods_enumerated = 0;
};

/// Exact test whether congruence mod n on the track is preserved by y. The
/// tail is enumerated over one full residue cycle of its label period and the
/// answer covers every label; radius only widens the enumerated window.
CongruenceResult congruence_test(const CompiledModel& m, int n, Label radius = 0);

/// x-fixed i and y-fixed j on one track with i == j mod n, searched in the
/// window; i by increasing |i|, j over 0..radius then -1..-radius.
std::optional<LabelPair> fixed_point_witness(const CompiledModel& m, int n, Label radius, int track = 0);

/// x fixes x_fix and y fixes a*n + b for every n >= 2.
struct FixedPointSchema {
  Label x_fix = 0;
  Label a = 3;
  Label b = 0;
  bool operator==(const FixedPointSchema&) const = default;
};

/// w fixes every dart carrying `mark`; each pair (from, to) has from * w = to.
struct StabilizerSchema {
  Word w;
  std::string mark = "principal";
  std::vector<LabelPair> pairs;
  bool operator==(const StabilizerSchema&) const = default;
};

using Schema = std::variant<FixedPointSchema, StabilizerSchema>;

/// "fixed:0;3n", "fixed:0;2n+0", "stabilizer:Z^2 Y;1>-4;-2>2" or
/// "stabilizer:flower" (the flower word and pairs for the model's p).
Schema parse_schema(std::string_view text, int p);
StabilizerSchema flower_schema(int p);
std::string to_string(const Schema& s);

struct FixedPointCertificate {
  FixedPointSchema schema;
  Label n_sample = 0;
  Label tail_start = 0;      // labels >= tail_start repeat with tail_period
  Label tail_period = 0;
  Label n_structural = 0;    // every n <= n_structural verified directly
};

struct CoverageEntry {
  Label divisor = 1;                 // g = gcd(n, S)
  std::vector<int> active_pairs;     // pairs whose source residue is hit mod g
  std::vector<Label> residual_moduli;  // n with gcd(n, S) = g left to exclude directly
};

struct StabilizerCertificate {
  StabilizerSchema schema;
  std::vector<Label> principal_core;   // marked labels in the core blocks
  std::vector<Label> principal_tail;   // marked labels in the first tail period
  Label slope = 0;                     // label period S of the tail
  std::int64_t checked_periods = 0;    // tail periods where w was evaluated
  std::vector<Label> forced_moduli;    // |to - from| per pair
  Label gcd = 0;
  std::vector<CoverageEntry> coverage;
  std::vector<std::pair<Label, LabelPair>> residual_violations;  // (n, (i, j))
  Label n_sample = 0;
  Label sampled_covered = 0;  // d <= n_sample with every pair source residue hit in the window
  bool track_and_y_cover = false;  // every dart is on the track or y of a track dart
  bool alpha_in_both = false;      // alpha and y^-1(alpha) both on the track
};

struct TrackFamily {
  int track = 0;
  Label x_fixed = 0;     // i0
  Label y_fixed = 0;     // j in the tail with j == i0 mod period
  Label period = 0;
};

struct TwoTrackCertificate {
  std::vector<TrackFamily> families;             // one per track
  std::vector<std::pair<PointRef, PointRef>> crossings;  // (beta, y(beta)) witnesses
  Label shift_bound = 0;
  Label certified_bound = 0;  // every admissible shift has |c| <= certified_bound
  Label radius = 0;
  std::vector<std::pair<Label, PointRef>> swap_refutations;  // (c, dart where the swap fails)
};

using Certificate = std::variant<FixedPointCertificate, StabilizerCertificate, TwoTrackCertificate>;

struct SchemaFailure {
  std::string reason;
  std::optional<Label> n;
  std::optional<LabelPair> pair;
};

std::variant<Certificate, SchemaFailure> certify_schema(const CompiledModel& m, const Schema& schema,
                                                        Label n_sample, Label radius);

/// Re-checks a certificate from its stored values by direct evaluation.
std::optional<std::string> verify_certificate(const CompiledModel& m, const Certificate& c);

struct Primitive {
  Certificate certificate;
};

struct Imprimitive {
  std::optional<int> modulus;       // congruence mod n
  std::optional<Label> pair_shift;  // classes {i, (i + c)'}
};

struct Unknown {
  std::string reason;
  std::vector<std::pair<int, LabelPair>> violations;
};

using PrimitivityVerdict = std::variant<Primitive, Imprimitive, Unknown>;

PrimitivityVerdict two_track_analysis(const CompiledModel& m, Label radius, Label shift_bound);

/// Searches an automorphism swapping the tracks: i -> (i + c)' and j' -> j - c.
std::optional<Label> find_track_swap(const CompiledModel& m, Label radius, Label shift_bound);

struct VerdictOptions {
  int n_max = 100;
  std::optional<Schema> schema;
  Label shift_bound = 64;
  Label radius = 1000;
};

PrimitivityVerdict verdict(const CompiledModel& m, const VerdictOptions& opts);

}  // namespace neumaps
