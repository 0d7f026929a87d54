#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "simgroup/perm.hpp"
#include "simgroup/word.hpp"

namespace simgroup {

// Balls of a compact ultrametric space form a rooted tree; a ball is named by
// its path from the root, child indices starting at 1. For A^ω this path is
// the prefix w of the ball wA^ω.
using Ball = Word;

// An element of Sim(domain, codomain). `label` is structure specific.
struct SimMap {
  Ball domain;
  Ball codomain;
  std::uint32_t label = 0;

  auto operator<=>(const SimMap&) const = default;
};

class SimStructure {
 public:
  virtual ~SimStructure() = default;

  virtual std::string name() const = 0;

  // Number of maximal proper subballs; zero exactly for one-point balls.
  virtual std::size_t num_children(const Ball& b) const = 0;

  // Similarity classes are numbered 0..num_classes()-1 with the root in class 0.
  virtual int sim_class(const Ball& b) const = 0;
  virtual int num_classes() const = 0;
  virtual Ball class_rep(int cls) const = 0;
  virtual std::string class_name(int cls) const;

  virtual std::vector<SimMap> sim_maps(const Ball& from, const Ball& to) const = 0;
  virtual SimMap identity(const Ball& b) const = 0;
  virtual SimMap compose(const SimMap& second, const SimMap& first) const = 0;
  virtual SimMap inverse(const SimMap& h) const = 0;
  // Restriction of h to the child-th maximal proper subball of its domain.
  virtual SimMap restrict(const SimMap& h, std::size_t child) const = 0;

  Ball root_ball() const { return {}; }
  bool is_point(const Ball& b) const { return num_children(b) == 0; }
  bool is_ball(const Ball& b) const;
  std::vector<Ball> max_proper_subballs(const Ball& b) const;
  SimMap restrict_along(const SimMap& h, const Word& path) const;
  bool is_sim_map(const SimMap& h) const;
  // All balls of depth at most `depth`, in breadth-first order.
  std::vector<Ball> balls_to_depth(std::size_t depth) const;
};

using SimStructurePtr = std::shared_ptr<const SimStructure>;

// V_d(H): A^ω with one class; Sim(w1, w2) = {w1 x -> w2 σ(x) : σ in H}.
// Map labels index H.elements().
class VdhStructure final : public SimStructure {
 public:
  VdhStructure(int d, PermGroup H);

  int arity() const { return d_; }
  const PermGroup& group() const { return H_; }
  const Perm& perm_of(const SimMap& h) const { return H_.elements()[h.label]; }
  SimMap make_map(const Ball& from, const Ball& to, const Perm& sigma) const;

  std::string name() const override;
  std::size_t num_children(const Ball&) const override { return static_cast<std::size_t>(d_); }
  int sim_class(const Ball&) const override { return 0; }
  int num_classes() const override { return 1; }
  Ball class_rep(int) const override { return {}; }
  std::string class_name(int) const override { return "x"; }
  std::vector<SimMap> sim_maps(const Ball& from, const Ball& to) const override;
  SimMap identity(const Ball& b) const override;
  SimMap compose(const SimMap& second, const SimMap& first) const override;
  SimMap inverse(const SimMap& h) const override;
  SimMap restrict(const SimMap& h, std::size_t child) const override;

 private:
  int d_;
  PermGroup H_;
  std::vector<std::uint32_t> inverse_label_;
  std::vector<std::vector<std::uint32_t>> product_label_;
};

// A finite space X = {x_1..x_n}; the balls are X and the singletons.
// Sim(X, X) = G, and each pair of points has exactly one map between them.
class FiniteStructure final : public SimStructure {
 public:
  FiniteStructure(int n, PermGroup G);

  int size() const { return n_; }
  const PermGroup& group() const { return G_; }

  std::string name() const override;
  std::size_t num_children(const Ball& b) const override;
  int sim_class(const Ball& b) const override;
  int num_classes() const override { return n_ >= 2 ? 2 : 1; }
  Ball class_rep(int cls) const override;
  std::string class_name(int cls) const override { return cls == 0 ? "x" : "p"; }
  std::vector<SimMap> sim_maps(const Ball& from, const Ball& to) const override;
  SimMap identity(const Ball& b) const override;
  SimMap compose(const SimMap& second, const SimMap& first) const override;
  SimMap inverse(const SimMap& h) const override;
  SimMap restrict(const SimMap& h, std::size_t child) const override;

 private:
  int n_;
  PermGroup G_;
};

std::shared_ptr<const VdhStructure> make_vdh_structure(int d, PermGroup H);
std::shared_ptr<const FiniteStructure> make_finite_structure(int n, PermGroup G);

// A partition of the whole space into finitely many balls, kept sorted.
struct BallPartition {
  std::vector<Ball> blocks;

  bool operator==(const BallPartition&) const = default;
};

// True iff every point of the space lies in exactly one ball of `blocks`.
bool is_ball_partition(const SimStructure& s, std::vector<Ball> blocks);
// True iff `blocks` partition the ball `base`.
bool is_partition_of(const SimStructure& s, const Ball& base, std::vector<Ball> blocks);
BallPartition make_partition(const SimStructure& s, std::vector<Ball> blocks);
// Coarsest common refinement.
BallPartition refine(const BallPartition& p, const BallPartition& q);
// Replaces complete sibling families by their parent until none remain.
std::vector<Ball> merge_siblings(const SimStructure& s, std::vector<Ball> balls);

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  std::string witness;
};

struct SimAxiomReport {
  std::vector<AxiomCheck> checks;
  bool ok() const;
};

// Checks Identities, Inverses, Compositions, Restrictions, Finiteness and
// class consistency over balls up to `depth` (at most `max_balls` of them).
SimAxiomReport verify_sim_axioms(const SimStructure& s, std::size_t depth = 4, std::size_t max_balls = 48);

}  // namespace simgroup
