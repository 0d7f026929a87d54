#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "simgroup/complex.hpp"
#include "simgroup/error.hpp"
#include "simgroup/homology.hpp"
#include "simgroup/zipper.hpp"
#include "support/oracle.hpp"

using namespace simgroup;

namespace {

Word w(const char* s) { return Word::parse(s); }

std::shared_ptr<const VdhStructure> v2() {
  static const auto s = make_vdh_structure(2, PermGroup::trivial(2));
  return s;
}

GroupPtr trivial2() {
  static const GroupPtr H = share_group(PermGroup::trivial(2));
  return H;
}

PseudoVertex positive(const SimStructure& s, std::vector<Word> blocks) {
  return positive_vertex(s, make_partition(s, std::move(blocks)));
}

PseudoVertex vertex_of(const VdhStructure& s, const TableElement& g) {
  return PseudoVertex({piece_from_columns(s, g.columns())});
}

TableElement swap_element() {
  Perm id = Perm::identity(2);
  return TableElement(2, trivial2(), {Column{w("1"), id, w("2")}, Column{w("2"), id, w("1")}});
}

std::vector<Word> comb(std::size_t h) {
  std::vector<Word> blocks{Word{}};
  while (blocks.size() < h) {
    Word x = blocks.front();
    blocks.erase(blocks.begin());
    blocks.insert(blocks.begin(), {x.child(1), x.child(2)});
  }
  return blocks;
}

// Complete binary prefix codes with exactly k words.
std::vector<std::vector<Word>> all_codes(std::size_t k) {
  std::set<std::vector<Word>> level{{Word{}}};
  for (std::size_t n = 1; n < k; ++n) {
    std::set<std::vector<Word>> next;
    for (const auto& code : level) {
      for (std::size_t i = 0; i < code.size(); ++i) {
        std::vector<Word> c = code;
        Word x = c[i];
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
        c.push_back(x.child(1));
        c.push_back(x.child(2));
        std::sort(c.begin(), c.end());
        next.insert(c);
      }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

// Independent count of the vertices of V_2 with trivial H, height ≤ n, every
// column path and image ball of length ≤ D. A piece is an embedding of the
// Cantor set, identified by where it sends each ball of length D; those
// images have length ≤ 2D, and a vertex is a set of pieces whose images tile
// the words of length 2D.
struct SublevelOracle {
  std::size_t vertices = 0;
  std::size_t covers = 0;
  std::map<std::size_t, std::size_t> by_height;
};

SublevelOracle sublevel_oracle(std::size_t n, std::size_t D) {
  using Key = std::vector<Word>;  // image of each length-D ball, in order
  const std::vector<Word> level = oracle::words(2, D);
  const std::vector<Word> cells = oracle::words(2, 2 * D);
  std::vector<std::vector<Word>> codes;
  for (std::size_t k = 1; k <= level.size(); ++k) {
    for (auto& c : all_codes(k)) {
      if (std::all_of(c.begin(), c.end(), [D](const Word& x) { return x.size() <= D; })) codes.push_back(c);
    }
  }
  std::vector<Word> balls;
  for (std::size_t len = 0; len <= D; ++len) {
    for (const Word& x : oracle::words(2, len)) balls.push_back(x);
  }
  std::set<Key> pieces;
  for (const auto& dom : codes) {
    // Assignments of pairwise disjoint balls to the domain blocks.
    std::vector<Word> img(dom.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == dom.size()) {
        Key key;
        for (const Word& x : level) {
          for (std::size_t j = 0; j < dom.size(); ++j) {
            if (dom[j].is_prefix_of(x)) key.push_back(img[j] + x.suffix_from(dom[j].size()));
          }
        }
        pieces.insert(key);
        return;
      }
      for (const Word& b : balls) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) ok = !img[j].is_prefix_of(b) && !b.is_prefix_of(img[j]);
        if (!ok) continue;
        img[i] = b;
        rec(i + 1);
      }
    };
    rec(0);
  }
  std::vector<Key> list(pieces.begin(), pieces.end());
  std::map<Key, std::size_t> index;
  std::vector<std::vector<std::size_t>> covered(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    index[list[i]] = i;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (const Word& y : list[i]) {
        if (y.is_prefix_of(cells[c])) covered[i].push_back(c);
      }
    }
  }
  std::set<std::vector<std::size_t>> verts;
  std::vector<std::size_t> chosen;
  std::vector<bool> used(cells.size(), false);
  std::size_t filled = 0;
  std::function<void(std::size_t)> search = [&](std::size_t start) {
    if (filled == cells.size()) {
      verts.insert(chosen);
      return;
    }
    if (chosen.size() == n) return;
    for (std::size_t i = start; i < list.size(); ++i) {
      if (std::any_of(covered[i].begin(), covered[i].end(), [&](std::size_t c) { return used[c]; })) continue;
      for (std::size_t c : covered[i]) used[c] = true;
      filled += covered[i].size();
      chosen.push_back(i);
      search(i + 1);
      chosen.pop_back();
      filled -= covered[i].size();
      for (std::size_t c : covered[i]) used[c] = false;
    }
  };
  search(0);
  SublevelOracle out;
  out.vertices = verts.size();
  for (const auto& v : verts) ++out.by_height[v.size()];
  // Simple expansion replaces f by x -> f(1x) and x -> f(2x).
  auto restrict_key = [&](const Key& f, int j) {
    Key g;
    for (const Word& x : level) {
      Word y = Word{j} + x;
      auto at = std::find(level.begin(), level.end(), y.prefix(D)) - level.begin();
      g.push_back(f[static_cast<std::size_t>(at)] + y.suffix_from(D));
    }
    return g;
  };
  for (const auto& v : verts) {
    for (std::size_t i : v) {
      std::vector<std::size_t> next;
      for (std::size_t o : v) {
        if (o != i) next.push_back(o);
      }
      bool ok = true;
      for (int j = 1; j <= 2 && ok; ++j) {
        auto it = index.find(restrict_key(list[i], j));
        ok = it != index.end();
        if (ok) next.push_back(it->second);
      }
      std::sort(next.begin(), next.end());
      if (ok && verts.count(next) > 0) ++out.covers;
    }
  }
  return out;
}

}  // namespace

TEST(Complex, SimpleExpandOfRoot) {
  PseudoVertex root({inclusion_piece(*v2(), Ball{})});
  EXPECT_TRUE(is_vertex(*v2(), root));
  EXPECT_TRUE(is_positive(root));
  PseudoVertex e = simple_expand(*v2(), root, 0);
  EXPECT_EQ(e, positive(*v2(), {w("1"), w("2")}));
  EXPECT_TRUE(is_positive(e));
  EXPECT_EQ(e.height(), 2u);
  EXPECT_TRUE(expands_to(*v2(), root, e));
  EXPECT_FALSE(expands_to(*v2(), e, root));
}

TEST(Complex, FiniteSpaceExpansion) {
  auto s = make_finite_structure(3, PermGroup::trivial(3));
  PseudoVertex root({inclusion_piece(*s, Ball{})});
  PseudoVertex pts = simple_expand(*s, root, 0);
  EXPECT_EQ(pts.height(), 3u);
  EXPECT_TRUE(is_vertex(*s, pts));
  for (const Piece& p : pts.pieces()) EXPECT_TRUE(s->is_point(s->class_rep(p.cls)));
  EXPECT_THROW(simple_expand(*s, pts, 0), ContractError);
  EXPECT_EQ(expa(*s, pts), pts);
}

TEST(Complex, SwapVertexDepth) {
  PseudoVertex v = vertex_of(*v2(), swap_element());
  EXPECT_EQ(v.height(), 1u);
  EXPECT_EQ(depth(v), 1u);
  EXPECT_FALSE(is_positive(v));
  PseudoVertex p = expand_to_positive(*v2(), v);
  EXPECT_EQ(p.height(), 2u);
  EXPECT_EQ(depth(p), 0u);
  EXPECT_TRUE(expands_to(*v2(), v, p));
  PseudoVertex pos = positive(*v2(), {w("11"), w("12"), w("2")});
  EXPECT_EQ(expand_to_positive(*v2(), pos), pos);
  EXPECT_EQ(depth(pos), 0u);
}

TEST(Complex, DepthDecreasesUnderExpa) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    TableElement g = random_table(2, trivial2(), 8, rng);
    PseudoVertex v = vertex_of(*v2(), g);
    ASSERT_TRUE(is_vertex(*v2(), v));
    PseudoVertex e = expa(*v2(), v);
    if (depth(v) > 0) {
      EXPECT_LT(depth(e), depth(v));
    } else {
      EXPECT_EQ(depth(e), 0u);
    }
    EXPECT_TRUE(is_vertex(*v2(), e));
    EXPECT_TRUE(expands_to(*v2(), v, e));
    PseudoVertex p = expand_to_positive(*v2(), v);
    EXPECT_EQ(depth(p), 0u);
    EXPECT_TRUE(is_positive(p));
    EXPECT_TRUE(expands_to(*v2(), v, p));
  }
}

TEST(Complex, PiecesAreCanonicalUnderPrecomposition) {
  auto s = make_vdh_structure(3, PermGroup::symmetric(3));
  GroupPtr H = share_group(PermGroup::symmetric(3));
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    TableElement g = random_table(3, H, 7, rng);
    Piece p = piece_from_columns(*s, g.columns());
    for (const Perm& h : H->elements()) {
      std::vector<PieceColumn> cols = precompose(*s, p.columns, s->make_map(Ball{}, Ball{}, h));
      EXPECT_EQ(canonical_piece(*s, Ball{}, cols), p);
    }
  }
}

TEST(Complex, UpperBoundIsRefinement) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = make_partition(*v2(), random_complete_code(2, 1 + rng() % 6, rng));
    auto b = make_partition(*v2(), random_complete_code(2, 1 + rng() % 6, rng));
    PseudoVertex va = positive_vertex(*v2(), a);
    PseudoVertex vb = positive_vertex(*v2(), b);
    PseudoVertex u = upper_bound(*v2(), va, vb);
    EXPECT_EQ(u, positive_vertex(*v2(), refine(a, b)));
    EXPECT_TRUE(expands_to(*v2(), va, u));
    EXPECT_TRUE(expands_to(*v2(), vb, u));
    EXPECT_EQ(upper_bound(*v2(), va, va), va);
  }
  // Non-positive vertices.
  for (int trial = 0; trial < 50; ++trial) {
    PseudoVertex a = vertex_of(*v2(), random_table(2, trivial2(), 5, rng));
    PseudoVertex b = vertex_of(*v2(), random_table(2, trivial2(), 5, rng));
    PseudoVertex u = upper_bound(*v2(), a, b);
    EXPECT_TRUE(expands_to(*v2(), a, u));
    EXPECT_TRUE(expands_to(*v2(), b, u));
  }
}

TEST(Complex, ContractionOfTheFirstExpansion) {
  PseudoVertex root({inclusion_piece(*v2(), Ball{})});
  PseudoVertex e = simple_expand(*v2(), root, 0);
  std::vector<std::size_t> both{0, 1};
  std::vector<PseudoVertex> back = simple_contract(*v2(), e, both);
  // With trivial H the two halves merge in two orders: identity and swap.
  ASSERT_EQ(back.size(), 2u);
  EXPECT_NE(std::find(back.begin(), back.end(), root), back.end());
  EXPECT_NE(std::find(back.begin(), back.end(), vertex_of(*v2(), swap_element())), back.end());
  for (const PseudoVertex& u : back) EXPECT_TRUE(expands_to(*v2(), u, e));
}

TEST(Complex, ContractionNeedsAFullFamily) {
  auto s = make_finite_structure(3, PermGroup::trivial(3));
  PseudoVertex pts = simple_expand(*s, PseudoVertex({inclusion_piece(*s, Ball{})}), 0);
  std::vector<std::size_t> pair{0, 1};
  EXPECT_TRUE(simple_contract(*s, pts, pair).empty());
  std::vector<std::size_t> all{0, 1, 2};
  // One vertex per bijection onto the three points.
  EXPECT_EQ(simple_contract(*s, pts, all).size(), 6u);
}

TEST(Complex, ContractionsExpandBack) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    PseudoVertex v = positive(*v2(), random_complete_code(2, 3 + rng() % 3, rng));
    for (std::size_t i = 0; i < v.height(); ++i) {
      for (std::size_t j = i + 1; j < v.height(); ++j) {
        std::vector<std::size_t> sub{i, j};
        for (const Contraction& c : simple_contractions(*v2(), v, sub)) {
          PseudoVertex u = apply_contraction(v, c);
          EXPECT_EQ(u.height() + 1, v.height());
          auto at = std::find(u.pieces().begin(), u.pieces().end(), c.merged) - u.pieces().begin();
          EXPECT_EQ(simple_expand(*v2(), u, static_cast<std::size_t>(at)), v);
        }
      }
    }
  }
}

TEST(Complex, GreatestLowerBound) {
  PseudoVertex v = positive(*v2(), comb(5));
  std::vector<std::size_t> a{0, 1};
  std::vector<std::size_t> b{2, 3};
  std::vector<std::size_t> c{1, 2};
  Contraction ca = simple_contractions(*v2(), v, a).front();
  Contraction cb = simple_contractions(*v2(), v, b).back();
  Contraction cc = simple_contractions(*v2(), v, c).front();

  std::vector<Contraction> one{ca};
  EXPECT_EQ(glb(v, one), apply_contraction(v, ca));
  std::vector<Contraction> overlap{ca, cc};
  EXPECT_FALSE(glb(v, overlap).has_value());

  std::vector<Contraction> pair{ca, cb};
  auto g = glb(v, pair);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->height(), v.height() - 2);
  PseudoVertex ua = apply_contraction(v, ca);
  PseudoVertex ub = apply_contraction(v, cb);
  EXPECT_TRUE(expands_to(*v2(), *g, ua));
  EXPECT_TRUE(expands_to(*v2(), *g, ub));
  EXPECT_TRUE(expands_to(*v2(), *g, v));
}

TEST(Complex, GlbIsGreatest) {
  // Every common lower bound of two disjoint contractions of a height-4
  // vertex lies below their glb. Lower bounds come from contracting v twice.
  PseudoVertex v = positive(*v2(), {w("11"), w("12"), w("21"), w("22")});
  std::vector<std::size_t> a{0, 1};
  std::vector<std::size_t> b{2, 3};
  for (const Contraction& ca : simple_contractions(*v2(), v, a)) {
    for (const Contraction& cb : simple_contractions(*v2(), v, b)) {
      std::vector<Contraction> pair{ca, cb};
      PseudoVertex g = *glb(v, pair);
      PseudoVertex ua = apply_contraction(v, ca);
      PseudoVertex ub = apply_contraction(v, cb);
      std::vector<PseudoVertex> lower{g};
      std::vector<std::size_t> all{0, 1};
      for (const PseudoVertex& x : simple_contract(*v2(), g, all)) lower.push_back(x);
      for (const PseudoVertex& x : lower) {
        ASSERT_TRUE(expands_to(*v2(), x, ua));
        ASSERT_TRUE(expands_to(*v2(), x, ub));
        EXPECT_TRUE(expands_to(*v2(), x, g));
      }
    }
  }
}

TEST(Complex, NerveBasics) {
  PseudoVertex root({inclusion_piece(*v2(), Ball{})});
  EXPECT_EQ(nerve(*v2(), root).vertices.size(), 0u);

  // Two merges of the depth-1 halves: identity order and swapped order.
  NerveComplex n2 = nerve(*v2(), positive(*v2(), {w("1"), w("2")}));
  EXPECT_EQ(n2.vertices.size(), 2u);
  EXPECT_TRUE(n2.flag.edges.empty());

  for (std::size_t h = 2; h <= 6; ++h) {
    NerveComplex n = nerve(*v2(), positive(*v2(), comb(h)));
    EXPECT_EQ(n.vertices.size(), h * (h - 1));
    // Edges are exactly the disjoint pairs.
    std::set<std::pair<std::size_t, std::size_t>> edges(n.flag.edges.begin(), n.flag.edges.end());
    for (std::size_t i = 0; i < n.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < n.vertices.size(); ++j) {
        const auto& si = n.vertices[i].subset;
        const auto& sj = n.vertices[j].subset;
        bool disjoint = std::none_of(si.begin(), si.end(), [&](std::size_t x) {
          return std::find(sj.begin(), sj.end(), x) != sj.end();
        });
        EXPECT_EQ(edges.count({i, j}) > 0, disjoint);
      }
    }
  }
}

TEST(Complex, NerveConnectivityForLargeHeights) {
  for (std::size_t h = 2; h <= 8; ++h) {
    std::vector<std::vector<Word>> parts = all_codes(h);
    if (h >= 7) parts.resize(20);
    for (const auto& p : parts) {
      NerveComplex n = nerve(*v2(), positive(*v2(), p));
      EXPECT_GT(n.vertices.size(), 0u);
      if (h >= 6) {
        EXPECT_EQ(connectivity_check(n.flag, 0).verdict, Verdict::pass) << "height " << h;
      }
    }
  }
  // Small heights are nonempty but not connected.
  EXPECT_EQ(connectivity_check(nerve(*v2(), positive(*v2(), comb(3))).flag, 0).verdict, Verdict::fail);
}

TEST(Complex, NerveOfFiniteSpace) {
  auto s = make_finite_structure(3, PermGroup::trivial(3));
  PseudoVertex pts = simple_expand(*s, PseudoVertex({inclusion_piece(*s, Ball{})}), 0);
  EXPECT_EQ(nerve(*s, pts).vertices.size(), 6u);
}

TEST(Complex, HomologyNegativeControl) {
  FlagComplex square = cycle_graph(4);
  ConnectivityResult r = connectivity_check(square, 1);
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_EQ(reduced_homology(square, 1)[1].rank, 1u);
  EXPECT_EQ(connectivity_check(square, 0).verdict, Verdict::pass);

  // A triangle's flag completion is a disc.
  EXPECT_EQ(connectivity_check(cycle_graph(3), 1).verdict, Verdict::pass);
  EXPECT_EQ(connectivity_check(FlagComplex{}, -1).verdict, Verdict::fail);
  FlagComplex two{2, {}};
  EXPECT_EQ(connectivity_check(two, -1).verdict, Verdict::pass);
  EXPECT_EQ(connectivity_check(two, 0).verdict, Verdict::fail);
}

TEST(Complex, HomologyOfOctahedron) {
  // The 2-sphere as a flag complex: every pair except antipodes is an edge.
  FlagComplex oct{6, {}};
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      if (j != i + 3) oct.edges.emplace_back(i, j);
    }
  }
  auto h = reduced_homology(oct, 2);
  EXPECT_TRUE(h[0].vanishes());
  EXPECT_TRUE(h[1].vanishes());
  EXPECT_EQ(h[2].rank, 1u);
  EXPECT_EQ(connectivity_check(oct, 1).verdict, Verdict::pass);
}

TEST(Complex, HomologyOfTorus) {
  // 4x4 grid on the torus with one diagonal per square; this triangulation is flag.
  FlagComplex torus{16, {}};
  auto id = [](int i, int j) { return static_cast<std::size_t>(((i + 4) % 4) * 4 + (j + 4) % 4); };
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
        std::size_t a = id(i, j);
        std::size_t b = id(i + di, j + dj);
        torus.edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  }
  auto h = reduced_homology(torus, 2);
  EXPECT_TRUE(h[0].vanishes());
  EXPECT_EQ(h[1].rank, 2u);
  EXPECT_EQ(h[2].rank, 1u);
  for (const auto& g : h) EXPECT_TRUE(g.exact);
  for (const auto& g : h) EXPECT_TRUE(g.torsion.empty());
}

TEST(Complex, HomologyEulerCharacteristic) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    FlagComplex c{9, {}};
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = i + 1; j < 9; ++j) {
        if (rng() % 100 < 55) c.edges.emplace_back(i, j);
      }
    }
    const int top = 8;
    auto h = reduced_homology(c, top);
    long long chi = -1;  // reduced
    long long betti = 0;
    for (int q = 0; q <= top; ++q) {
      long long n = static_cast<long long>(cliques(c, static_cast<std::size_t>(q) + 1, 100000).size());
      chi += (q % 2 == 0) ? n : -n;
      betti += (q % 2 == 0) ? static_cast<long long>(h[static_cast<std::size_t>(q)].rank)
                            : -static_cast<long long>(h[static_cast<std::size_t>(q)].rank);
    }
    EXPECT_EQ(chi, betti);
    EXPECT_EQ(h[0].rank + 1, count_components(c));
  }
}

TEST(Complex, FiniteSpaceSublevel) {
  for (int n = 3; n <= 4; ++n) {
    std::size_t fact = n == 3 ? 6 : 24;
    auto s = make_finite_structure(n, PermGroup::trivial(n));
    SublevelComplex k = enumerate_sublevel(*s, static_cast<std::size_t>(n), 1);
    EXPECT_EQ(k.vertices.size(), fact + 1);
    EXPECT_EQ(k.covers.size(), fact);
    // Cone: every edge ends at the single height-n vertex.
    std::set<std::size_t> targets;
    for (const auto& [a, b] : k.covers) targets.insert(b);
    ASSERT_EQ(targets.size(), 1u);
    EXPECT_EQ(k.vertices[*targets.begin()].height(), static_cast<std::size_t>(n));

    auto sym = make_finite_structure(n, PermGroup::symmetric(n));
    SublevelComplex ks = enumerate_sublevel(*sym, static_cast<std::size_t>(n), 1);
    EXPECT_EQ(ks.vertices.size(), 2u);
    EXPECT_EQ(ks.covers.size(), 1u);
  }
}

TEST(Complex, FiniteSpaceComplexIsFinite) {
  auto s = make_finite_structure(3, PermGroup::trivial(3));
  EXPECT_EQ(enumerate_sublevel(*s, 6, 1).vertices.size(), 7u);
  EXPECT_EQ(enumerate_sublevel(*s, 6, 3).vertices.size(), 7u);
  // V_2 keeps growing with the window.
  EXPECT_LT(enumerate_sublevel(*v2(), 3, 1).vertices.size(), enumerate_sublevel(*v2(), 3, 2).vertices.size());
}

TEST(Complex, Vd2SublevelMatchesOracle) {
  for (std::size_t D = 1; D <= 2; ++D) {
    SublevelComplex k = enumerate_sublevel(*v2(), 3, D);
    SublevelOracle o = sublevel_oracle(3, D);
    EXPECT_EQ(k.vertices.size(), o.vertices) << "window " << D;
    EXPECT_EQ(k.covers.size(), o.covers) << "window " << D;
    std::map<std::size_t, std::size_t> heights;
    for (const PseudoVertex& v : k.vertices) ++heights[v.height()];
    EXPECT_EQ(heights, o.by_height) << "window " << D;
  }
  EXPECT_EQ(enumerate_sublevel(*v2(), 3, 2).vertices.size(), 112u);
}

TEST(Complex, SublevelIsAPoset) {
  SublevelComplex k = enumerate_sublevel(*v2(), 3, 2);
  std::set<std::pair<std::size_t, std::size_t>> rel(k.comparable.begin(), k.comparable.end());
  for (const auto& [a, b] : k.comparable) {
    EXPECT_EQ(rel.count({b, a}), 0u);
    EXPECT_LT(k.vertices[a].height(), k.vertices[b].height());
    EXPECT_TRUE(expands_to(*v2(), k.vertices[a], k.vertices[b]));
  }
  for (const auto& [a, b] : k.covers) {
    EXPECT_EQ(rel.count({a, b}), 1u);
    EXPECT_EQ(k.vertices[a].height() + 1, k.vertices[b].height());
  }
  // Transitivity.
  for (const auto& [a, b] : k.comparable) {
    for (const auto& [c, d] : k.comparable) {
      if (b == c) {
        EXPECT_EQ(rel.count({a, d}), 1u);
      }
    }
  }
  EXPECT_LE(k.max_successors, 3u);
  EXPECT_GT(k.max_predecessors, 0u);
}

TEST(Complex, ZipperActionProperties) {
  SublevelComplex k = enumerate_sublevel(*v2(), 3, 2);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    TableElement g = random_table(2, trivial2(), 5, rng);
    std::vector<PseudoVertex> moved;
    for (const PseudoVertex& v : k.vertices) {
      PseudoVertex gv = act(*v2(), g, v);
      EXPECT_EQ(gv.height(), v.height());
      EXPECT_TRUE(is_vertex(*v2(), gv));
      moved.push_back(gv);
    }
    for (const auto& [a, b] : k.covers) EXPECT_TRUE(expands_to(*v2(), moved[a], moved[b]));
    // Acting by the inverse undoes the action.
    ReducedTable inv = invert(g);
    for (std::size_t i = 0; i < k.vertices.size(); ++i) EXPECT_EQ(act(*v2(), inv, moved[i]), k.vertices[i]);
  }
}

TEST(Complex, SimplexStabilizersFixVertices) {
  // An element mapping an edge {v < w} onto itself fixes both ends.
  SublevelComplex k = enumerate_sublevel(*v2(), 3, 2);
  std::size_t setwise = 0;
  for (std::size_t e = 0; e < k.covers.size(); e += 7) {
    const auto& [a, b] = k.covers[e];
    const std::set<PseudoVertex> edge{k.vertices[a], k.vertices[b]};
    for (const ReducedTable& g : stabilizer(*v2(), k.vertices[b])) {
      PseudoVertex ga = act(*v2(), g, k.vertices[a]);
      PseudoVertex gb = act(*v2(), g, k.vertices[b]);
      if (std::set<PseudoVertex>{ga, gb} != edge) continue;
      ++setwise;
      EXPECT_EQ(ga, k.vertices[a]);
      EXPECT_EQ(gb, k.vertices[b]);
    }
  }
  EXPECT_GT(setwise, 0u);
}

TEST(Complex, StabilizerOfHeightTwo) {
  PseudoVertex v = positive(*v2(), {w("1"), w("2")});
  std::vector<ReducedTable> st = stabilizer(*v2(), v);
  ASSERT_EQ(st.size(), 2u);
  std::set<std::vector<Column>> got;
  for (const ReducedTable& g : st) got.insert(g.columns());
  EXPECT_EQ(got.count(reduce(TableElement::identity(2, trivial2())).columns()), 1u);
  EXPECT_EQ(got.count(reduce(swap_element()).columns()), 1u);
  for (const ReducedTable& g : st) EXPECT_EQ(act(*v2(), g, v), v);
}

TEST(Complex, StabilizerSizes) {
  // For trivial H the stabilizer of a height-k vertex permutes its pieces: k! elements.
  for (std::size_t h = 1; h <= 4; ++h) EXPECT_EQ(stabilizer(*v2(), positive(*v2(), comb(h))).size(), oracle::all_bijections(static_cast<int>(h)).size());
  // With H = Σ_2 each piece also carries a choice from H.
  auto s = make_vdh_structure(2, PermGroup::symmetric(2));
  EXPECT_EQ(stabilizer(*s, positive(*s, comb(2))).size(), 8u);
}

TEST(Complex, SingleOrbitPerHeight) {
  std::mt19937_64 rng(31);
  for (std::size_t h = 1; h <= 6; ++h) {
    PseudoVertex base = positive(*v2(), comb(h));
    for (int trial = 0; trial < 10; ++trial) {
      PseudoVertex v = act(*v2(), random_table(2, trivial2(), 6, rng), positive(*v2(), random_complete_code(2, h, rng)));
      EXPECT_EQ(orbit_invariant(v), orbit_invariant(base));
      auto g = orbit_transporter(*v2(), base, v);
      ASSERT_TRUE(g.has_value());
      EXPECT_EQ(act(*v2(), *g, base), v);
    }
  }
  EXPECT_FALSE(orbit_transporter(*v2(), positive(*v2(), comb(2)), positive(*v2(), comb(3))).has_value());
}

TEST(Complex, FiniteSpaceOrbitBound) {
  // Two classes, so at most k+1 orbits of height-k vertices.
  auto s = make_finite_structure(3, PermGroup::trivial(3));
  SublevelComplex k = enumerate_sublevel(*s, 3, 1);
  std::map<std::size_t, std::set<std::vector<int>>> orbits;
  for (const PseudoVertex& v : k.vertices) orbits[v.height()].insert(orbit_invariant(v));
  for (const auto& [h, set] : orbits) EXPECT_LE(set.size(), h + 1);
}

TEST(Complex, FixedVertexOfSwap) {
  TableElement g = swap_element();
  std::vector<TableElement> gens{g};
  PseudoVertex v = fixed_vertex(*v2(), gens);
  EXPECT_TRUE(is_positive(v));
  EXPECT_TRUE(is_vertex(*v2(), v));
  EXPECT_EQ(act(*v2(), g, v), v);
}

TEST(Complex, FixedVertexOfRandomFiniteGroups) {
  auto s = make_vdh_structure(2, PermGroup::symmetric(2));
  GroupPtr H = share_group(PermGroup::symmetric(2));
  std::mt19937_64 rng(77);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 20; ++trial) {
    // Torsion elements: conjugates of elements permuting a partition.
    TableElement c = random_table(2, H, 5, rng);
    std::vector<Word> code = random_complete_code(2, 1 + rng() % 4, rng);
    std::vector<Word> target = code;
    std::shuffle(target.begin(), target.end(), rng);
    std::vector<Column> cols;
    for (std::size_t i = 0; i < code.size(); ++i) cols.push_back(Column{code[i], H->elements()[rng() % 2], target[i]});
    TableElement t(2, H, cols);
    std::vector<TableElement> gens{compose(compose(c, t), invert(c))};
    if (rng() % 2 == 0) gens.push_back(t);
    std::vector<ReducedTable> closure;
    try {
      closure = finite_closure(gens, 48);
    } catch (const CapExceeded&) {
      continue;
    }
    ++tested;
    PseudoVertex v = fixed_vertex(*s, gens);
    EXPECT_TRUE(is_vertex(*s, v));
    for (const TableElement& g : gens) EXPECT_EQ(act(*s, g, v), v);
  }
  EXPECT_EQ(tested, 20);
}

TEST(Complex, FiniteClosureCap) {
  Perm id = Perm::identity(2);
  // x -> 1x on the left half, a shift of infinite order.
  TableElement shift(2, trivial2(),
                     {Column{w("1"), id, w("11")}, Column{w("21"), id, w("12")}, Column{w("22"), id, w("2")}});
  std::vector<TableElement> gens{shift};
  EXPECT_THROW(finite_closure(gens, 100), CapExceeded);
  std::vector<TableElement> sw{swap_element()};
  EXPECT_EQ(finite_closure(sw).size(), 2u);
}
