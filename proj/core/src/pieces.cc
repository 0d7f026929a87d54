#include <algorithm>
#include <map>

#include "simgroup/complex.hpp"
#include "simgroup/error.hpp"

namespace simgroup {

std::vector<Ball> Piece::image() const {
  std::vector<Ball> out;
  for (const PieceColumn& c : columns) out.push_back(c.map.codomain);
  return out;
}

std::size_t Piece::depth() const {
  std::size_t m = 0;
  for (const PieceColumn& c : columns) m = std::max(m, c.path.size());
  return m;
}

std::vector<PieceColumn> precompose(const SimStructure& s, std::span<const PieceColumn> f, const SimMap& g) {
  SimMap ginv = s.inverse(g);
  std::vector<PieceColumn> out;
  out.reserve(f.size());
  for (const PieceColumn& c : f) {
    SimMap r = s.restrict_along(ginv, c.path);  // g.codomain·path -> g.domain·q
    Word q = r.codomain.suffix_from(g.domain.size());
    out.push_back(PieceColumn{std::move(q), s.compose(c.map, s.inverse(r))});
  }
  return out;
}

std::vector<PieceColumn> merge_columns(const SimStructure& s, const Ball& base, std::vector<PieceColumn> columns) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Word, std::size_t> at;
    for (std::size_t i = 0; i < columns.size(); ++i) at.emplace(columns[i].path, i);
    for (std::size_t i = 0; i < columns.size() && !changed; ++i) {
      const PieceColumn& c = columns[i];
      if (c.path.empty() || c.path.back() != 1 || c.map.codomain.empty()) continue;
      Word parent = c.path.parent();
      Ball dom = base + parent;
      const std::size_t k = s.num_children(dom);
      Ball target = c.map.codomain.parent();
      std::vector<std::size_t> family;
      for (std::size_t j = 1; j <= k; ++j) {
        auto it = at.find(parent.child(static_cast<int>(j)));
        if (it == at.end() || columns[it->second].map.codomain.empty() ||
            columns[it->second].map.codomain.parent() != target) {
          break;
        }
        family.push_back(it->second);
      }
      if (family.size() != k) continue;
      for (const SimMap& m : s.sim_maps(dom, target)) {
        bool restricts = true;
        for (std::size_t j = 1; j <= k && restricts; ++j) restricts = s.restrict(m, j) == columns[family[j - 1]].map;
        if (!restricts) continue;
        std::sort(family.begin(), family.end());
        for (std::size_t r = family.size(); r-- > 0;) columns.erase(columns.begin() + static_cast<std::ptrdiff_t>(family[r]));
        columns.push_back(PieceColumn{parent, m});
        changed = true;
        break;
      }
    }
  }
  std::sort(columns.begin(), columns.end());
  return columns;
}

namespace {

void check_columns(const SimStructure& s, const Ball& base, const std::vector<PieceColumn>& columns) {
  std::vector<Ball> dom;
  std::vector<Ball> img;
  for (const PieceColumn& c : columns) {
    if (c.map.domain != base + c.path) throw ContractError("piece column map has the wrong domain");
    dom.push_back(c.map.domain);
    img.push_back(c.map.codomain);
  }
  if (!is_partition_of(s, base, dom)) throw ContractError("piece columns do not partition the domain ball");
  if (!is_prefix_free(img)) throw ContractError("piece is not injective");
}

}  // namespace

Piece canonical_piece(const SimStructure& s, const Ball& base, std::vector<PieceColumn> columns) {
  check_columns(s, base, columns);
  const int cls = s.sim_class(base);
  const Ball rep = s.class_rep(cls);
  if (base != rep) {
    std::vector<SimMap> to_base = s.sim_maps(rep, base);
    if (to_base.empty()) throw ContractError("class representative is not similar to the ball");
    columns = precompose(s, columns, to_base.front());
  }
  columns = merge_columns(s, rep, std::move(columns));
  std::vector<PieceColumn> best;
  bool first = true;
  for (const SimMap& h : s.sim_maps(rep, rep)) {
    std::vector<PieceColumn> c = precompose(s, columns, h);
    std::sort(c.begin(), c.end());
    if (first || c < best) {
      best = std::move(c);
      first = false;
    }
  }
  return Piece{cls, std::move(best)};
}

Piece inclusion_piece(const SimStructure& s, const Ball& b) {
  return canonical_piece(s, b, {PieceColumn{Word{}, s.identity(b)}});
}

std::vector<Piece> expand_piece(const SimStructure& s, const Piece& p) {
  const Ball rep = s.class_rep(p.cls);
  const std::size_t k = s.num_children(rep);
  if (k == 0) throw ContractError("cannot expand a piece on a point");
  std::vector<Piece> out;
  for (std::size_t j = 1; j <= k; ++j) {
    std::vector<PieceColumn> cols;
    for (const PieceColumn& c : p.columns) {
      if (c.path.empty()) {
        cols.push_back(PieceColumn{Word{}, s.restrict(c.map, j)});
      } else if (static_cast<std::size_t>(c.path[0]) == j) {
        cols.push_back(PieceColumn{c.path.suffix_from(1), c.map});
      }
    }
    out.push_back(canonical_piece(s, rep.child(static_cast<int>(j)), std::move(cols)));
  }
  return out;
}

// ---------------------------------------------------------------------------

PseudoVertex::PseudoVertex(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end());
  std::vector<Ball> img = image();
  if (!is_prefix_free(img)) throw ContractError("pieces of a pseudo-vertex must have disjoint images");
}

std::vector<Ball> PseudoVertex::image() const {
  std::vector<Ball> out;
  for (const Piece& p : pieces_) {
    for (const PieceColumn& c : p.columns) out.push_back(c.map.codomain);
  }
  return out;
}

bool is_vertex(const SimStructure& s, const PseudoVertex& v) { return is_ball_partition(s, v.image()); }

bool is_positive(const PseudoVertex& v) {
  return std::all_of(v.pieces().begin(), v.pieces().end(), [](const Piece& p) { return p.is_zipper(); });
}

std::size_t depth(const PseudoVertex& v) {
  std::size_t m = 0;
  for (const Piece& p : v.pieces()) m = std::max(m, p.depth());
  return m;
}

PseudoVertex simple_expand(const SimStructure& s, const PseudoVertex& v, std::size_t piece) {
  if (piece >= v.height()) throw ContractError("piece index out of range");
  std::vector<Piece> out;
  for (std::size_t i = 0; i < v.height(); ++i) {
    if (i != piece) out.push_back(v.pieces()[i]);
  }
  for (Piece& p : expand_piece(s, v.pieces()[piece])) out.push_back(std::move(p));
  return PseudoVertex(std::move(out));
}

PseudoVertex expa(const SimStructure& s, const PseudoVertex& v) {
  std::vector<Piece> out;
  for (const Piece& p : v.pieces()) {
    if (s.is_point(s.class_rep(p.cls))) {
      out.push_back(p);
      continue;
    }
    for (Piece& q : expand_piece(s, p)) out.push_back(std::move(q));
  }
  return PseudoVertex(std::move(out));
}

PseudoVertex expand_to_positive(const SimStructure& s, const PseudoVertex& v) {
  PseudoVertex cur = v;
  for (std::size_t k = depth(v); k > 0; --k) cur = expa(s, cur);
  return cur;
}

namespace {

bool image_contains(const SimStructure& s, const std::vector<Ball>& outer, const std::vector<Ball>& inner) {
  std::vector<Ball> merged = merge_siblings(s, outer);
  return std::all_of(inner.begin(), inner.end(), [&](const Ball& b) {
    return std::any_of(merged.begin(), merged.end(), [&](const Ball& a) { return a.is_prefix_of(b); });
  });
}

bool covers(const SimStructure& s, const Piece& p, const std::vector<const Piece*>& parts, int budget) {
  if (parts.size() == 1 && *parts.front() == p) return true;
  if (parts.size() <= 1 || budget == 0) return false;
  if (s.is_point(s.class_rep(p.cls))) return false;
  std::vector<Piece> kids = expand_piece(s, p);
  if (parts.size() < kids.size()) return false;
  std::vector<std::vector<const Piece*>> assigned(kids.size());
  std::vector<std::vector<Ball>> kid_images;
  for (const Piece& k : kids) kid_images.push_back(k.image());
  for (const Piece* q : parts) {
    bool placed = false;
    for (std::size_t j = 0; j < kids.size() && !placed; ++j) {
      if (image_contains(s, kid_images[j], q->image())) {
        assigned[j].push_back(q);
        placed = true;
      }
    }
    if (!placed) return false;
  }
  for (std::size_t j = 0; j < kids.size(); ++j) {
    if (!covers(s, kids[j], assigned[j], budget - 1)) return false;
  }
  return true;
}

}  // namespace

bool expands_to(const SimStructure& s, const PseudoVertex& v, const PseudoVertex& w) {
  std::vector<std::vector<const Piece*>> assigned(v.height());
  std::vector<std::vector<Ball>> images;
  for (const Piece& p : v.pieces()) images.push_back(p.image());
  for (const Piece& q : w.pieces()) {
    bool placed = false;
    for (std::size_t i = 0; i < v.height() && !placed; ++i) {
      if (image_contains(s, images[i], q.image())) {
        assigned[i].push_back(&q);
        placed = true;
      }
    }
    if (!placed) return false;
  }
  for (std::size_t i = 0; i < v.height(); ++i) {
    if (!covers(s, v.pieces()[i], assigned[i], 64)) return false;
  }
  return true;
}

PseudoVertex positive_vertex(const SimStructure& s, const BallPartition& p) {
  if (!is_ball_partition(s, p.blocks)) throw ContractError("not a partition");
  std::vector<Piece> out;
  for (const Ball& b : p.blocks) out.push_back(inclusion_piece(s, b));
  return PseudoVertex(std::move(out));
}

BallPartition image_partition(const SimStructure& s, const PseudoVertex& v) {
  if (!is_positive(v) || !is_vertex(s, v)) throw ContractError("not a positive vertex");
  return make_partition(s, v.image());
}

PseudoVertex upper_bound(const SimStructure& s, const PseudoVertex& a, const PseudoVertex& b) {
  if (!is_vertex(s, a) || !is_vertex(s, b)) throw ContractError("upper bounds are taken of vertices");
  BallPartition pa = image_partition(s, expand_to_positive(s, a));
  BallPartition pb = image_partition(s, expand_to_positive(s, b));
  return positive_vertex(s, refine(pa, pb));
}

}  // namespace simgroup
