#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "simgroup/perm.hpp"
#include "simgroup/word.hpp"

namespace simgroup {

// The point u·v·v·v·... of A^ω.
struct EventuallyPeriodicPoint {
  Word preperiod;
  Word period;

  auto operator<=>(const EventuallyPeriodicPoint&) const = default;
};

// Shortest preperiod and primitive period describing the same point.
EventuallyPeriodicPoint normalize_point(const Word& u, const Word& v);

// Intersection of the stabilizers H_a over the given symbols.
PermGroup eventual_isotropy(const PermGroup& H, std::span<const int> symbols);

struct PhiImage {
  int ell = 0;   // generator of the image of the germ map in ℤ
  Perm witness;  // some h with h(v_n) = v_{n+ell} for all n
};

// Smallest ell in 1..|v| realised by some h in H, with a canonical witness:
// fewest moved points, then least sorted support, then least one-line form.
PhiImage phi_image_generator(const PermGroup& H, const EventuallyPeriodicPoint& x);
// Every k in 1..|v| realised by some h in H.
std::vector<int> phi_image_shifts(const PermGroup& H, const EventuallyPeriodicPoint& x);

enum class GermStructure { trivial, isotropy, cyclic, direct_product, semidirect_product };

std::string to_string(GermStructure s);

// G_x as H_x, H_x ⊕ ℤ or H_x ⋊ ℤ, the ℤ factor generated by an element acting
// on H_x by conjugation with `twist`. ell == 0 means no ℤ factor.
struct GermDescriptor {
  PermGroup hx;
  int ell = 0;
  Perm twist;

  bool twist_acts_trivially() const;
  GermStructure structure() const;
};

GermDescriptor germ_group(const PermGroup& H, const EventuallyPeriodicPoint& x);
// Germ at a point that is not eventually periodic and whose infinitely
// recurring symbols are `symbols`. Needs at least two symbols.
GermDescriptor germ_group(const PermGroup& H, std::span<const int> symbols);

// Abstract isomorphism class of a finite group: its order together with the
// lexicographically least multiplication table over all minimum-size ordered
// generating tuples, elements numbered in breadth-first order.
struct GroupLabel {
  std::size_t order = 0;
  std::vector<std::uint16_t> table;

  auto operator<=>(const GroupLabel&) const = default;
  std::string short_id() const;
};

GroupLabel isomorphism_label(const PermGroup& G);
bool are_isomorphic(const PermGroup& a, const PermGroup& b);
// Brute-force search for an isomorphism by images of a generating tuple.
bool find_isomorphism(const PermGroup& a, const PermGroup& b);

struct GermLabel {
  GroupLabel hx;
  bool has_z = false;
  // Orbit sizes of the twist acting on H_x by conjugation, sorted.
  std::vector<int> twist_orbits;

  auto operator<=>(const GermLabel&) const = default;
  std::string describe() const;
};

GermLabel germ_label(const GermDescriptor& g);

struct GermFingerprint {
  std::set<GermLabel> labels;

  bool operator==(const GermFingerprint&) const = default;
};

// Lyndon words over {1..d} of length 1..max_len.
std::vector<Word> primitive_necklaces(int d, std::size_t max_len);

GermFingerprint germ_fingerprint(int d, const PermGroup& H, std::size_t max_period);

}  // namespace simgroup
