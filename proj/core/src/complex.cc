#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "simgroup/complex.hpp"
#include "simgroup/error.hpp"

namespace simgroup {

std::vector<Contraction> simple_contractions(const SimStructure& s, const PseudoVertex& v,
                                             std::span<const std::size_t> subset, std::size_t cap) {
  std::vector<std::size_t> idx(subset.begin(), subset.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (std::size_t i : idx) {
    if (i >= v.height()) throw ContractError("piece index out of range");
  }
  const std::size_t m = idx.size();
  std::set<Piece> merged;
  std::size_t candidates = 0;
  for (int c = 0; c < s.num_classes(); ++c) {
    const Ball rep = s.class_rep(c);
    if (s.num_children(rep) != m || m == 0) continue;
    std::vector<std::size_t> sigma(m);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      // Child j of rep receives piece idx[sigma[j]].
      std::vector<std::vector<SimMap>> choices(m);
      bool ok = true;
      for (std::size_t j = 0; j < m && ok; ++j) {
        const Piece& p = v.pieces()[idx[sigma[j]]];
        choices[j] = s.sim_maps(rep.child(static_cast<int>(j + 1)), s.class_rep(p.cls));
        ok = !choices[j].empty();
      }
      if (!ok) continue;
      std::vector<std::size_t> pick(m, 0);
      while (true) {
        if (++candidates > cap) throw CapExceeded("too many contraction candidates");
        std::vector<PieceColumn> cols;
        for (std::size_t j = 0; j < m; ++j) {
          const Piece& p = v.pieces()[idx[sigma[j]]];
          Word prefix{static_cast<int>(j + 1)};
          for (PieceColumn& pc : precompose(s, p.columns, choices[j][pick[j]])) {
            cols.push_back(PieceColumn{prefix + pc.path, pc.map});
          }
        }
        merged.insert(canonical_piece(s, rep, std::move(cols)));
        std::size_t t = m;
        while (t > 0 && ++pick[t - 1] == choices[t - 1].size()) pick[--t] = 0;
        if (t == 0) break;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  std::vector<Contraction> out;
  for (const Piece& p : merged) out.push_back(Contraction{idx, p});
  return out;
}

PseudoVertex apply_contraction(const PseudoVertex& v, const Contraction& c) {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < v.height(); ++i) {
    if (!std::binary_search(c.subset.begin(), c.subset.end(), i)) out.push_back(v.pieces()[i]);
  }
  out.push_back(c.merged);
  return PseudoVertex(std::move(out));
}

std::vector<PseudoVertex> simple_contract(const SimStructure& s, const PseudoVertex& v,
                                          std::span<const std::size_t> subset) {
  std::vector<PseudoVertex> out;
  for (const Contraction& c : simple_contractions(s, v, subset)) out.push_back(apply_contraction(v, c));
  return out;
}

std::optional<PseudoVertex> glb(const PseudoVertex& v, std::span<const Contraction> contractions) {
  std::vector<bool> used(v.height(), false);
  for (const Contraction& c : contractions) {
    for (std::size_t i : c.subset) {
      if (i >= v.height()) throw ContractError("piece index out of range");
      if (used[i]) return std::nullopt;
      used[i] = true;
    }
  }
  std::vector<Piece> out;
  for (std::size_t i = 0; i < v.height(); ++i) {
    if (!used[i]) out.push_back(v.pieces()[i]);
  }
  for (const Contraction& c : contractions) out.push_back(c.merged);
  return PseudoVertex(std::move(out));
}

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    f(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    a[i] < b[j] ? ++i : ++j;
  }
  return true;
}

}  // namespace

NerveComplex nerve(const SimStructure& s, const PseudoVertex& v, std::size_t cap) {
  std::set<std::size_t> sizes;
  for (int c = 0; c < s.num_classes(); ++c) {
    std::size_t k = s.num_children(s.class_rep(c));
    if (k > 0) sizes.insert(k);
  }
  NerveComplex out{v, {}, {}};
  for (std::size_t k : sizes) {
    for_each_subset(v.height(), k, [&](const std::vector<std::size_t>& subset) {
      for (Contraction& c : simple_contractions(s, v, subset)) {
        out.vertices.push_back(std::move(c));
        if (out.vertices.size() > cap) throw CapExceeded("nerve has more than " + std::to_string(cap) + " vertices");
      }
    });
  }
  out.flag.num_vertices = out.vertices.size();
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < out.vertices.size(); ++j) {
      if (disjoint(out.vertices[i].subset, out.vertices[j].subset)) out.flag.edges.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<int> orbit_invariant(const PseudoVertex& v) {
  std::vector<int> out;
  for (const Piece& p : v.pieces()) out.push_back(p.cls);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Complete codes under `node` relative to it, of relative depth ≤ rem.
std::vector<std::vector<Word>> complete_codes(const SimStructure& s, const Ball& node, std::size_t rem) {
  std::vector<std::vector<Word>> out{{Word{}}};
  if (rem == 0 || s.is_point(node)) return out;
  const std::size_t k = s.num_children(node);
  std::vector<std::vector<Word>> partial{{}};
  for (std::size_t j = 1; j <= k; ++j) {
    auto sub = complete_codes(s, node.child(static_cast<int>(j)), rem - 1);
    std::vector<std::vector<Word>> next;
    for (const auto& pre : partial) {
      for (const auto& code : sub) {
        auto combined = pre;
        for (const Word& w : code) combined.push_back(Word{static_cast<int>(j)} + w);
        next.push_back(std::move(combined));
      }
    }
    partial = std::move(next);
  }
  for (auto& p : partial) out.push_back(std::move(p));
  return out;
}

bool in_window(const Piece& p, std::size_t window) {
  return std::all_of(p.columns.begin(), p.columns.end(), [&](const PieceColumn& c) {
    return c.path.size() <= window && c.map.codomain.size() <= window;
  });
}

using Mask = std::vector<std::uint64_t>;

bool overlaps(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

}  // namespace

SublevelComplex enumerate_sublevel(const SimStructure& s, std::size_t n, std::size_t depth_window, std::size_t cap,
                                   bool count_predecessors) {
  SublevelComplex out;
  out.max_height = n;
  out.depth_window = depth_window;
  const std::vector<Ball> balls = s.balls_to_depth(depth_window);
  const std::size_t candidate_cap = cap * 64;

  std::set<Piece> pieces;
  std::size_t candidates = 0;
  for (int c = 0; c < s.num_classes(); ++c) {
    const Ball rep = s.class_rep(c);
    for (const std::vector<Word>& code : complete_codes(s, rep, depth_window)) {
      std::vector<Ball> targets;
      // Choose pairwise disjoint similar targets, then similarities onto them.
      auto assign = [&](auto&& self) -> void {
        const std::size_t i = targets.size();
        if (i == code.size()) {
          std::vector<std::vector<SimMap>> maps;
          for (std::size_t t = 0; t < code.size(); ++t) maps.push_back(s.sim_maps(rep + code[t], targets[t]));
          std::vector<std::size_t> pick(code.size(), 0);
          while (true) {
            if (++candidates > candidate_cap) throw CapExceeded("too many candidate pieces");
            std::vector<PieceColumn> cols;
            for (std::size_t t = 0; t < code.size(); ++t) cols.push_back(PieceColumn{code[t], maps[t][pick[t]]});
            Piece p = canonical_piece(s, rep, std::move(cols));
            if (in_window(p, depth_window)) pieces.insert(std::move(p));
            std::size_t t = code.size();
            while (t > 0 && ++pick[t - 1] == maps[t - 1].size()) pick[--t] = 0;
            if (t == 0) break;
          }
          return;
        }
        const int cls = s.sim_class(rep + code[i]);
        for (const Ball& b : balls) {
          if (s.sim_class(b) != cls) continue;
          if (std::any_of(targets.begin(), targets.end(), [&](const Ball& t) { return comparable(t, b); })) continue;
          targets.push_back(b);
          self(self);
          targets.pop_back();
        }
      };
      assign(assign);
    }
  }
  out.pieces.assign(pieces.begin(), pieces.end());

  // Leaves of the ball tree truncated at the window.
  std::vector<Ball> leaves;
  for (const Ball& b : balls) {
    if (b.size() == depth_window || s.is_point(b)) leaves.push_back(b);
  }
  const std::size_t words = (leaves.size() + 63) / 64;
  std::vector<Mask> masks;
  for (const Piece& p : out.pieces) {
    Mask m(words, 0);
    for (const Ball& img : p.image()) {
      for (std::size_t l = 0; l < leaves.size(); ++l) {
        if (img.is_prefix_of(leaves[l])) m[l / 64] |= (1ULL << (l % 64));
      }
    }
    masks.push_back(std::move(m));
  }
  std::vector<std::vector<std::size_t>> covering(leaves.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      if (masks[i][l / 64] & (1ULL << (l % 64))) covering[l].push_back(i);
    }
  }

  // Exact covers of the leaves by at most n pieces, branching on the first uncovered leaf.
  std::vector<PseudoVertex> vertices;
  Mask used(words, 0);
  std::vector<std::size_t> chosen;
  auto search = [&](auto&& self) -> void {
    std::size_t first = leaves.size();
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      if (!(used[l / 64] & (1ULL << (l % 64)))) {
        first = l;
        break;
      }
    }
    if (first == leaves.size()) {
      std::vector<Piece> ps;
      for (std::size_t i : chosen) ps.push_back(out.pieces[i]);
      vertices.emplace_back(std::move(ps));
      if (vertices.size() > cap) throw CapExceeded("more than " + std::to_string(cap) + " vertices");
      return;
    }
    if (chosen.size() == n) return;
    for (std::size_t i : covering[first]) {
      if (overlaps(used, masks[i])) continue;
      for (std::size_t w = 0; w < words; ++w) used[w] |= masks[i][w];
      chosen.push_back(i);
      self(self);
      chosen.pop_back();
      for (std::size_t w = 0; w < words; ++w) used[w] &= ~masks[i][w];
    }
  };
  search(search);
  std::sort(vertices.begin(), vertices.end());
  out.vertices = std::move(vertices);

  std::map<PseudoVertex, std::size_t> index;
  for (std::size_t i = 0; i < out.vertices.size(); ++i) index.emplace(out.vertices[i], i);
  std::vector<std::vector<std::size_t>> succ(out.vertices.size());
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    const PseudoVertex& v = out.vertices[i];
    std::size_t expandable = 0;
    for (std::size_t p = 0; p < v.height(); ++p) {
      if (s.is_point(s.class_rep(v.pieces()[p].cls))) continue;
      ++expandable;
      auto it = index.find(simple_expand(s, v, p));
      if (it != index.end()) {
        succ[i].push_back(it->second);
        out.covers.emplace_back(i, it->second);
      }
    }
    out.max_successors = std::max(out.max_successors, expandable);
    if (count_predecessors) out.max_predecessors = std::max(out.max_predecessors, nerve(s, v, cap).vertices.size());
  }
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    std::vector<bool> seen(out.vertices.size(), false);
    std::vector<std::size_t> stack = succ[i];
    while (!stack.empty()) {
      std::size_t j = stack.back();
      stack.pop_back();
      if (seen[j]) continue;
      seen[j] = true;
      out.comparable.emplace_back(i, j);
      for (std::size_t k : succ[j]) stack.push_back(k);
    }
  }
  std::sort(out.covers.begin(), out.covers.end());
  std::sort(out.comparable.begin(), out.comparable.end());
  return out;
}

}  // namespace simgroup
