#pragma once

#include <optional>
#include <span>
#include <vector>

#include "simgroup/complex.hpp"
#include "simgroup/table.hpp"

namespace simgroup {

// V_d(H) acting on pieces and vertices of its own similarity structure.

std::vector<Column> piece_to_columns(const VdhStructure& s, const Piece& p);
Piece piece_from_columns(const VdhStructure& s, std::span<const Column> columns);

Piece act(const VdhStructure& s, const TableElement& g, const Piece& p);
PseudoVertex act(const VdhStructure& s, const TableElement& g, const PseudoVertex& v);

// Elements fixing the vertex v, sorted. Throws CapExceeded beyond `cap`.
std::vector<ReducedTable> stabilizer(const VdhStructure& s, const PseudoVertex& v, std::size_t cap = 100000);
// Some g with g·v = w, if one exists.
std::optional<ReducedTable> orbit_transporter(const VdhStructure& s, const PseudoVertex& v, const PseudoVertex& w);

// The group generated by `gens`; throws CapExceeded if it has more than `cap` elements.
std::vector<ReducedTable> finite_closure(std::span<const TableElement> gens, std::size_t cap = 1000);
// A positive vertex fixed by every element of the finite group generated by `gens`.
PseudoVertex fixed_vertex(const VdhStructure& s, std::span<const TableElement> gens, std::size_t cap = 1000);

}  // namespace simgroup
