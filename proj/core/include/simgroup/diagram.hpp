#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "simgroup/presentation.hpp"
#include "simgroup/sim_structure.hpp"
#include "simgroup/table.hpp"

namespace simgroup {

// Wire ids listed left to right along each contact.
struct Transistor {
  std::vector<int> top;     // wires whose bottom end sits on this transistor's top
  std::vector<int> bottom;  // wires whose top end sits on this transistor's bottom

  bool operator==(const Transistor&) const = default;
};

struct BraidedDiagram {
  std::vector<Symbol> wire_labels;
  std::vector<Transistor> transistors;
  std::vector<int> frame_top;
  std::vector<int> frame_bottom;

  std::size_t num_wires() const { return wire_labels.size(); }
  bool operator==(const BraidedDiagram&) const = default;
};

struct WireEnd {
  int transistor = -1;  // -1 for the frame
  int port = 0;
};

// For each wire: where its top end and bottom end are attached.
struct WireEnds {
  WireEnd top;
  WireEnd bottom;
};

// Throws InputError unless every wire has exactly one top and one bottom contact.
std::vector<WireEnds> wire_ends(const BraidedDiagram& diagram);

struct DiagramCheck {
  bool ok = true;
  std::string condition;
  std::string witness;
};

DiagramCheck validate(const BraidedDiagram& diagram, const SemigroupPresentation& p);

std::vector<Symbol> top_label(const BraidedDiagram& diagram);
std::vector<Symbol> bottom_label(const BraidedDiagram& diagram);
std::vector<Symbol> contact_label(const BraidedDiagram& diagram, const std::vector<int>& wires);

BraidedDiagram identity_diagram(const std::vector<Symbol>& word);
// `upper` is a (w1, w2)-diagram and `lower` a (w2, w3)-diagram.
BraidedDiagram concatenate(const BraidedDiagram& upper, const BraidedDiagram& lower);
BraidedDiagram inverse(const BraidedDiagram& diagram);

// `upper` sits directly on `lower`: the bottom contacts of `upper` are wired in
// order to the top contacts of `lower`, and the outer labels agree.
struct Dipole {
  int lower;
  int upper;
};

std::vector<Dipole> find_dipoles(const BraidedDiagram& diagram);
BraidedDiagram remove_dipole(const BraidedDiagram& diagram, const Dipole& dipole);

// Renumbers transistors and wires in depth-first order from the frame top,
// leftmost first. Equivalent diagrams have equal canonical forms.
BraidedDiagram canonical_form(const BraidedDiagram& diagram);
bool equivalent(const BraidedDiagram& a, const BraidedDiagram& b);
// Removes dipoles until none remain; returns the canonical form.
BraidedDiagram reduce(const BraidedDiagram& diagram);
// Canonical forms of every terminal diagram over all dipole removal orders.
std::vector<BraidedDiagram> reduction_outcomes(const BraidedDiagram& diagram, std::size_t state_cap = 100000);

// ---------------------------------------------------------------------------

// Ends of the labelled tree generated by a tree-like presentation from `start`.
// Similar balls are those whose vertices carry the same symbol.
std::shared_ptr<const SimStructure> ends_space(const SemigroupPresentation& p, Symbol start);

// Small: at most one similarity between any two balls, and every similarity
// preserves the order of maximal proper subballs. Checked to `depth`.
bool is_small(const SimStructure& s, std::size_t depth = 3);

// Tree-like presentation with one symbol per similarity class (symbol i is
// class i) and relation [B] = [B_1]...[B_n] for each non-point class.
SemigroupPresentation build_psim(const SimStructure& s);

// Child order: entry j-1 is the base child index shown as child j.
using ChildOrder = std::function<std::vector<std::size_t>(const Ball& base_ball)>;
std::shared_ptr<const SimStructure> reorder_children(std::shared_ptr<const SimStructure> base, ChildOrder order);

// Orders each ball's subballs by transporting the order of its class
// representative, so that every similarity preserves order.
std::shared_ptr<const SimStructure> make_linear_order(std::shared_ptr<const SimStructure> s);

// (domain partition, range partition, bijection domain index -> range index).
struct DefiningTriple {
  std::vector<Ball> domain;
  std::vector<Ball> range;
  std::vector<std::size_t> bijection;

  bool operator==(const DefiningTriple&) const = default;
};

void check_triple(const SimStructure& s, const DefiningTriple& t);

// Δ_P: transistor per ball properly containing a block, wire per ball containing one.
BraidedDiagram partition_diagram(const SimStructure& s, std::vector<Ball> partition);
BraidedDiagram triple_to_diagram(const SimStructure& s, const DefiningTriple& t);
// Expects positive transistors above negative ones, as in a reduced ([X],[X])-diagram.
DefiningTriple diagram_to_triple(const SimStructure& s, const BraidedDiagram& diagram);

// For V_d with trivial H.
DefiningTriple triple_from_table(const TableElement& g);
TableElement table_from_triple(int d, GroupPtr H, const DefiningTriple& t);

}  // namespace simgroup
