#include <algorithm>
#include <numeric>
#include <set>

#include "simgroup/error.hpp"
#include "simgroup/zipper.hpp"

namespace simgroup {

std::vector<Column> piece_to_columns(const VdhStructure& s, const Piece& p) {
  std::vector<Column> out;
  for (const PieceColumn& c : p.columns) out.push_back(Column{c.path, s.perm_of(c.map), c.map.codomain});
  return out;
}

Piece piece_from_columns(const VdhStructure& s, std::span<const Column> columns) {
  std::vector<PieceColumn> cols;
  for (const Column& c : columns) {
    if (!s.group().contains(c.h)) throw InputError("column permutation is not in H");
    cols.push_back(PieceColumn{c.v, s.make_map(c.v, c.u, c.h)});
  }
  return canonical_piece(s, Ball{}, std::move(cols));
}

Piece act(const VdhStructure& s, const TableElement& g, const Piece& p) {
  auto cols = piece_to_columns(s, p);
  return piece_from_columns(s, compose_columns(s.arity(), g.columns(), cols));
}

PseudoVertex act(const VdhStructure& s, const TableElement& g, const PseudoVertex& v) {
  std::vector<Piece> out;
  for (const Piece& p : v.pieces()) out.push_back(act(s, g, p));
  return PseudoVertex(std::move(out));
}

namespace {

std::vector<Column> invert_columns(std::span<const Column> cols) {
  std::vector<Column> out;
  for (const Column& c : cols) out.push_back(Column{c.u, c.h.inverse(), c.v});
  return out;
}

void require_vertex(const VdhStructure& s, const PseudoVertex& v) {
  if (!is_vertex(s, v)) throw ContractError("pseudo-vertex does not cover the space");
}

}  // namespace

std::vector<ReducedTable> stabilizer(const VdhStructure& s, const PseudoVertex& v, std::size_t cap) {
  require_vertex(s, v);
  const int d = s.arity();
  const std::size_t k = v.height();
  const auto& H = s.group().elements();
  GroupPtr group = share_group(s.group());
  std::vector<std::vector<Column>> fwd;
  std::vector<std::vector<Column>> back;
  for (const Piece& p : v.pieces()) {
    fwd.push_back(piece_to_columns(s, p));
    back.push_back(invert_columns(fwd.back()));
  }
  std::set<ReducedTable> out;
  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::size_t count = 0;
  do {
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      if (++count > cap) throw CapExceeded("stabilizer has more than " + std::to_string(cap) + " candidates");
      std::vector<Column> gamma;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<Column> h{Column{Word{}, H[pick[i]], Word{}}};
        auto part = compose_columns(d, fwd[sigma[i]], compose_columns(d, h, back[i]));
        gamma.insert(gamma.end(), part.begin(), part.end());
      }
      out.insert(reduce(TableElement(d, group, std::move(gamma))));
      std::size_t t = k;
      while (t > 0 && ++pick[t - 1] == H.size()) pick[--t] = 0;
      if (t == 0) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return {out.begin(), out.end()};
}

std::optional<ReducedTable> orbit_transporter(const VdhStructure& s, const PseudoVertex& v, const PseudoVertex& w) {
  require_vertex(s, v);
  require_vertex(s, w);
  if (v.height() != w.height()) return std::nullopt;
  std::vector<Column> gamma;
  for (std::size_t i = 0; i < v.height(); ++i) {
    auto back = invert_columns(piece_to_columns(s, v.pieces()[i]));
    auto part = compose_columns(s.arity(), piece_to_columns(s, w.pieces()[i]), back);
    gamma.insert(gamma.end(), part.begin(), part.end());
  }
  return reduce(TableElement(s.arity(), share_group(s.group()), std::move(gamma)));
}

std::vector<ReducedTable> finite_closure(std::span<const TableElement> gens, std::size_t cap) {
  if (gens.empty()) throw InputError("no generators");
  std::set<ReducedTable> seen{reduce(TableElement::identity(gens.front().arity(), gens.front().group_ptr()))};
  std::vector<ReducedTable> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<ReducedTable> next;
    for (const ReducedTable& x : frontier) {
      for (const TableElement& g : gens) {
        ReducedTable y = compose(g, x);
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw CapExceeded("generated group has more than " + std::to_string(cap) + " elements");
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

PseudoVertex fixed_vertex(const VdhStructure& s, std::span<const TableElement> gens, std::size_t cap) {
  std::vector<ReducedTable> group = finite_closure(gens, cap);
  std::size_t n = 0;
  for (const ReducedTable& g : group) n = std::max(n, g.depth());
  const std::vector<Word> level = words_of_length(s.arity(), n);
  BallPartition q = make_partition(s, level);
  for (const ReducedTable& g : group) {
    std::vector<Ball> img;
    for (const Word& w : level) img.push_back(apply_prefix(g, w));
    q = refine(q, make_partition(s, std::move(img)));
  }
  return positive_vertex(s, q);
}

}  // namespace simgroup
