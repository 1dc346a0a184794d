#pragma once

// Constructors for the catalog maps. Each gadget is written once as
// block templates in catalog.cpp; the constructors only arrange blocks.
//
// Catalog expressions (also accepted wherever a map description is read):
//   np(p)              np(p;dec=BITS)
//   npq(p,q)           npq(p,q;dec=BITS)
//   nprime(p)          nprime(p;bulbs=INTS)        nprime(p;bulbs=covering)
//   nh(h=BITS)
//   tretkoff(seq=DIGITS)
//   twoface(alloc=asymmetric|symmetric)   twoface(above=BITS;below=BITS)
// BITS/INTS/DIGITS use the sequence grammar of sequence.hpp.

#include <cstdint>
#include <string>
#include <string_view>

#include "neumaps/model.hpp"
#include "neumaps/sequence.hpp"

namespace neumaps {

/// g_l = 6l - 5 * sum_{i<l} h_i - 4 (l >= 1); g_1 = 2.
std::int64_t g_sequence(const BitSource& h, std::int64_t l);

/// p-valent Neumann map with optional 1-valent vertices on negative free edges.
MapDescription build_np(int p, const BitSource& decoration = {});

/// Bipartite Neumann map of type (p, q), q >= 3, with optional fans added at
/// the 1-valent vertices below the axis.
MapDescription build_npq(int p, int q, const BitSource& decoration = {});

struct FlowerParams {
  int p = 3;           // odd
  IntSource bulbs;     // bulbs in gap n, between flowers n and n+1
  int l() const { return (p - 1) / 2; }
  int t() const { return l() + 3; }
};

/// Torsion-free p-valent map built from flowers and bulbs.
MapDescription build_nprime(const FlowerParams& params);
/// Bulb counts making every tail principal label congruent to 1 modulo the
/// tail label period.
IntSource residue_covering_bulbs(int p);

/// Maps N_h for a 0/1 sequence h.
MapDescription build_neumann_h(const BitSource& h);

/// Maps chained from a sequence over {1, 2, 3} of block types.
MapDescription build_tretkoff(const IntSource& types);

struct TwoFaceAllocation {
  BitSource above;  // question marks above the axis, cells 0, -1, -2, ...
  BitSource below;  // question marks below the axis, cells 2, 3, 4, ...

  static TwoFaceAllocation asymmetric();
  static TwoFaceAllocation symmetric(const BitSource& bits = BitSource::constant(0));
};

/// Trivalent maps with two faces.
MapDescription build_twoface(const TwoFaceAllocation& alloc);

/// Parses a catalog expression such as "nh(h=0111...)".
MapDescription parse_catalog(std::string_view expr);

}  // namespace neumaps
