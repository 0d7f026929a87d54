#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace simgroup {

// Permutation of {1..d} in one-line form. Products compose right to left:
// (p * q)(x) == p(q(x)).
class Perm {
 public:
  Perm() = default;

  static Perm identity(int degree);
  // Throws InputError unless `images` is a bijection of 1..images.size().
  static Perm from_images(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int letter) const { return images_[static_cast<std::size_t>(letter - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  Perm pow(long long k) const;

  int sign() const;
  bool is_even() const { return sign() > 0; }
  bool is_identity() const;
  int order() const;
  std::vector<int> moved_points() const;

  // Cycle notation, "()" for the identity.
  std::string to_cycle_string() const;

  auto operator<=>(const Perm&) const = default;

 private:
  explicit Perm(std::vector<int> images) : images_(std::move(images)) {}
  std::vector<int> images_;
};

Perm commutator(const Perm& a, const Perm& b);

// A finite permutation group stored as its sorted element list.
class PermGroup {
 public:
  PermGroup() = default;

  static PermGroup closure(int degree, std::span<const Perm> generators);
  static PermGroup trivial(int degree);
  static PermGroup symmetric(int degree);
  static PermGroup alternating(int degree);
  // Builds a group from a list already closed under products.
  static PermGroup from_elements(int degree, std::vector<Perm> elements);

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& identity() const { return elements_.front(); }

  bool contains(const Perm& p) const;
  // Position of `p` in elements(); throws ContractError if absent.
  std::size_t index_of(const Perm& p) const;

  bool is_trivial() const { return elements_.size() == 1; }
  bool is_abelian() const;
  bool contains_odd() const;
  bool is_subgroup_of(const PermGroup& other) const;
  bool is_normal_in(const PermGroup& other) const;

  // A small generating set, chosen greedily in element order.
  std::vector<Perm> generators() const;

  bool operator==(const PermGroup&) const = default;

 private:
  PermGroup(int degree, std::vector<Perm> sorted) : degree_(degree), elements_(std::move(sorted)) {}
  int degree_ = 0;
  std::vector<Perm> elements_;
};

PermGroup stabilizer(const PermGroup& group, int letter);
PermGroup pointwise_stabilizer(const PermGroup& group, std::span<const int> letters);
PermGroup intersection(const PermGroup& a, const PermGroup& b);
PermGroup commutator_subgroup(const PermGroup& group);
PermGroup subgroup_generated(const PermGroup& ambient, std::span<const Perm> generators);

// {h^k : h in group}, sorted, duplicates removed.
std::vector<Perm> power_set(const PermGroup& group, int k);

// Coset arithmetic in H/N for N normal in H with H/N abelian. Classes are
// represented by their lexicographically least element.
class AbelianQuotient {
 public:
  // Throws ContractError if N is not a normal subgroup of H or H/N is not abelian.
  AbelianQuotient(PermGroup H, PermGroup N);

  const PermGroup& group() const { return H_; }
  const PermGroup& kernel() const { return N_; }

  Perm canonical(const Perm& h) const;
  Perm zero() const { return N_.identity(); }
  Perm add(const Perm& a, const Perm& b) const;
  Perm multiple(const Perm& a, long long k) const;
  Perm negate(const Perm& a) const;
  int element_order(const Perm& a) const;

  std::size_t order() const { return classes_.size(); }
  const std::vector<Perm>& classes() const { return classes_; }

  // Invariant factors d_1 | d_2 | ... with every d_i > 1; empty for the trivial group.
  std::vector<int> invariants() const;

 private:
  PermGroup H_;
  PermGroup N_;
  std::vector<Perm> rep_of_;   // indexed like H_.elements()
  std::vector<Perm> classes_;  // sorted distinct representatives
};

std::vector<int> quotient_abelian_invariants(const PermGroup& H, const PermGroup& N);

}  // namespace simgroup
