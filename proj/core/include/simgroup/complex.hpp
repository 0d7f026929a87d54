#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "simgroup/homology.hpp"
#include "simgroup/sim_structure.hpp"

namespace simgroup {

// f restricted to the ball base·path is the similarity `map`.
struct PieceColumn {
  Word path;
  SimMap map;

  auto operator<=>(const PieceColumn&) const = default;
};

// Embedding class [f, B]. Canonical form: B is the representative of its
// class, no sibling family of columns merges, and the column list is the
// least among all precompositions by Sim(B, B).
struct Piece {
  int cls = 0;
  std::vector<PieceColumn> columns;

  auto operator<=>(const Piece&) const = default;
  // Balls of the image, one per column.
  std::vector<Ball> image() const;
  // In the zipper: a single similarity onto its image.
  bool is_zipper() const { return columns.size() == 1 && columns.front().path.empty(); }
  std::size_t depth() const;
};

// Columns of f∘g for g in Sim(B1, B2), f given by columns over B2.
std::vector<PieceColumn> precompose(const SimStructure& s, std::span<const PieceColumn> f, const SimMap& g);
// Merges sibling families whose maps restrict from a common similarity.
std::vector<PieceColumn> merge_columns(const SimStructure& s, const Ball& base, std::vector<PieceColumn> columns);
Piece canonical_piece(const SimStructure& s, const Ball& base, std::vector<PieceColumn> columns);
// [incl_B, B].
Piece inclusion_piece(const SimStructure& s, const Ball& b);
// The canonical pieces [f|_{B_j}, B_j] over the maximal proper subballs.
std::vector<Piece> expand_piece(const SimStructure& s, const Piece& p);

// A finite set of pieces with pairwise disjoint images, kept sorted.
class PseudoVertex {
 public:
  PseudoVertex() = default;
  // Sorts, and throws ContractError if two images meet or a piece repeats.
  explicit PseudoVertex(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t height() const { return pieces_.size(); }
  std::vector<Ball> image() const;

  auto operator<=>(const PseudoVertex&) const = default;

 private:
  std::vector<Piece> pieces_;
};

// Images cover the whole space.
bool is_vertex(const SimStructure& s, const PseudoVertex& v);
bool is_positive(const PseudoVertex& v);
// Largest column depth among the pieces.
std::size_t depth(const PseudoVertex& v);

PseudoVertex simple_expand(const SimStructure& s, const PseudoVertex& v, std::size_t piece);
// Expands every piece that is not a point.
PseudoVertex expa(const SimStructure& s, const PseudoVertex& v);
PseudoVertex expand_to_positive(const SimStructure& s, const PseudoVertex& v);
// v ≤ w in the expansion order.
bool expands_to(const SimStructure& s, const PseudoVertex& v, const PseudoVertex& w);

PseudoVertex positive_vertex(const SimStructure& s, const BallPartition& p);
// Partition formed by the images of a positive vertex.
BallPartition image_partition(const SimStructure& s, const PseudoVertex& v);
PseudoVertex upper_bound(const SimStructure& s, const PseudoVertex& a, const PseudoVertex& b);

// A simple contraction of v: the pieces at `subset` merge into `merged`.
struct Contraction {
  std::vector<std::size_t> subset;
  Piece merged;

  auto operator<=>(const Contraction&) const = default;
};

// All merges of the pieces at `subset` (indices into v.pieces()).
std::vector<Contraction> simple_contractions(const SimStructure& s, const PseudoVertex& v,
                                             std::span<const std::size_t> subset, std::size_t cap = 100000);
PseudoVertex apply_contraction(const PseudoVertex& v, const Contraction& c);
std::vector<PseudoVertex> simple_contract(const SimStructure& s, const PseudoVertex& v,
                                          std::span<const std::size_t> subset);
// Greatest lower bound of the given simple contractions of v; empty unless their subsets are disjoint.
std::optional<PseudoVertex> glb(const PseudoVertex& v, std::span<const Contraction> contractions);

// Poset of simple contractions of v; edges join contractions on disjoint subsets.
struct NerveComplex {
  PseudoVertex base;
  std::vector<Contraction> vertices;
  FlagComplex flag;
};

NerveComplex nerve(const SimStructure& s, const PseudoVertex& v, std::size_t cap = 5000);

// Multiset of similarity classes of the pieces; constant on zipper orbits.
std::vector<int> orbit_invariant(const PseudoVertex& v);

// Vertices of height ≤ n inside a depth window: every column path and image
// ball of every piece has length ≤ depth_window.
struct SublevelComplex {
  std::size_t max_height = 0;
  std::size_t depth_window = 0;
  std::vector<Piece> pieces;
  std::vector<PseudoVertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // v -> simple expansion of v
  std::vector<std::pair<std::size_t, std::size_t>> comparable;  // v < w, both in the window
  std::size_t max_successors = 0;
  std::size_t max_predecessors = 0;
};

SublevelComplex enumerate_sublevel(const SimStructure& s, std::size_t n, std::size_t depth_window,
                                   std::size_t cap = 50000, bool count_predecessors = true);

}  // namespace simgroup
