#include "simgroup/sim_structure.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "simgroup/error.hpp"

namespace simgroup {

std::string SimStructure::class_name(int cls) const { return "c" + std::to_string(cls); }

bool SimStructure::is_ball(const Ball& b) const {
  Ball cur;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < 1 || static_cast<std::size_t>(b[i]) > num_children(cur)) return false;
    cur.push_back(b[i]);
  }
  return true;
}

std::vector<Ball> SimStructure::max_proper_subballs(const Ball& b) const {
  std::vector<Ball> out;
  const std::size_t k = num_children(b);
  for (std::size_t j = 1; j <= k; ++j) out.push_back(b.child(static_cast<int>(j)));
  return out;
}

SimMap SimStructure::restrict_along(const SimMap& h, const Word& path) const {
  SimMap cur = h;
  for (std::size_t i = 0; i < path.size(); ++i) cur = restrict(cur, static_cast<std::size_t>(path[i]));
  return cur;
}

bool SimStructure::is_sim_map(const SimMap& h) const {
  auto maps = sim_maps(h.domain, h.codomain);
  return std::find(maps.begin(), maps.end(), h) != maps.end();
}

std::vector<Ball> SimStructure::balls_to_depth(std::size_t depth) const {
  std::vector<Ball> out{root_ball()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() >= depth) continue;
    for (Ball& c : max_proper_subballs(out[i])) out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------

VdhStructure::VdhStructure(int d, PermGroup H) : d_(d), H_(std::move(H)) {
  if (d_ < 2) throw InputError("arity must be at least 2");
  if (H_.degree() != d_) throw InputError("group degree does not match arity");
  const auto& el = H_.elements();
  inverse_label_.resize(el.size());
  for (std::size_t i = 0; i < el.size(); ++i) inverse_label_[i] = static_cast<std::uint32_t>(H_.index_of(el[i].inverse()));
  if (el.size() <= 720) {
    product_label_.assign(el.size(), std::vector<std::uint32_t>(el.size()));
    for (std::size_t i = 0; i < el.size(); ++i) {
      for (std::size_t j = 0; j < el.size(); ++j) {
        product_label_[i][j] = static_cast<std::uint32_t>(H_.index_of(el[i] * el[j]));
      }
    }
  }
}

std::string VdhStructure::name() const {
  return "V_" + std::to_string(d_) + "(H), |H|=" + std::to_string(H_.order());
}

SimMap VdhStructure::make_map(const Ball& from, const Ball& to, const Perm& sigma) const {
  return SimMap{from, to, static_cast<std::uint32_t>(H_.index_of(sigma))};
}

std::vector<SimMap> VdhStructure::sim_maps(const Ball& from, const Ball& to) const {
  std::vector<SimMap> out;
  out.reserve(H_.order());
  for (std::size_t i = 0; i < H_.order(); ++i) out.push_back(SimMap{from, to, static_cast<std::uint32_t>(i)});
  return out;
}

SimMap VdhStructure::identity(const Ball& b) const { return SimMap{b, b, 0}; }

SimMap VdhStructure::compose(const SimMap& second, const SimMap& first) const {
  if (first.codomain != second.domain) throw ContractError("sim maps are not composable");
  std::uint32_t label = product_label_.empty()
                            ? static_cast<std::uint32_t>(H_.index_of(perm_of(second) * perm_of(first)))
                            : product_label_[second.label][first.label];
  return SimMap{first.domain, second.codomain, label};
}

SimMap VdhStructure::inverse(const SimMap& h) const { return SimMap{h.codomain, h.domain, inverse_label_[h.label]}; }

SimMap VdhStructure::restrict(const SimMap& h, std::size_t child) const {
  const int j = static_cast<int>(child);
  return SimMap{h.domain.child(j), h.codomain.child(perm_of(h)(j)), h.label};
}

// ---------------------------------------------------------------------------

FiniteStructure::FiniteStructure(int n, PermGroup G) : n_(n), G_(std::move(G)) {
  if (n_ < 1) throw InputError("finite space must be nonempty");
  if (G_.degree() != n_) throw InputError("group degree does not match number of points");
}

std::string FiniteStructure::name() const {
  return "finite X, n=" + std::to_string(n_) + ", |G|=" + std::to_string(G_.order());
}

std::size_t FiniteStructure::num_children(const Ball& b) const {
  return b.empty() && n_ >= 2 ? static_cast<std::size_t>(n_) : 0;
}

int FiniteStructure::sim_class(const Ball& b) const { return b.empty() ? 0 : 1; }

Ball FiniteStructure::class_rep(int cls) const { return cls == 0 ? Ball{} : Ball{1}; }

std::vector<SimMap> FiniteStructure::sim_maps(const Ball& from, const Ball& to) const {
  if (from.empty() != to.empty()) return {};
  if (!from.empty()) return {SimMap{from, to, 0}};
  std::vector<SimMap> out;
  for (std::size_t i = 0; i < G_.order(); ++i) out.push_back(SimMap{from, to, static_cast<std::uint32_t>(i)});
  return out;
}

SimMap FiniteStructure::identity(const Ball& b) const { return SimMap{b, b, 0}; }

SimMap FiniteStructure::compose(const SimMap& second, const SimMap& first) const {
  if (first.codomain != second.domain) throw ContractError("sim maps are not composable");
  if (!first.domain.empty()) return SimMap{first.domain, second.codomain, 0};
  const auto& el = G_.elements();
  return SimMap{{}, {}, static_cast<std::uint32_t>(G_.index_of(el[second.label] * el[first.label]))};
}

SimMap FiniteStructure::inverse(const SimMap& h) const {
  if (!h.domain.empty()) return SimMap{h.codomain, h.domain, 0};
  return SimMap{{}, {}, static_cast<std::uint32_t>(G_.index_of(G_.elements()[h.label].inverse()))};
}

SimMap FiniteStructure::restrict(const SimMap& h, std::size_t child) const {
  if (!h.domain.empty() || n_ < 2) throw ContractError("cannot restrict a map on a point");
  const int j = static_cast<int>(child);
  return SimMap{Ball{j}, Ball{G_.elements()[h.label](j)}, 0};
}

std::shared_ptr<const VdhStructure> make_vdh_structure(int d, PermGroup H) {
  return std::make_shared<const VdhStructure>(d, std::move(H));
}

std::shared_ptr<const FiniteStructure> make_finite_structure(int n, PermGroup G) {
  return std::make_shared<const FiniteStructure>(n, std::move(G));
}

// ---------------------------------------------------------------------------

namespace {

bool complete_under(const SimStructure& s, const Ball& node, const std::vector<Ball>& sorted, std::size_t lo,
                    std::size_t hi) {
  if (lo == hi) return false;
  if (sorted[lo] == node) return hi - lo == 1;
  const std::size_t k = s.num_children(node);
  if (k == 0) return false;
  const std::size_t depth = node.size();
  std::size_t pos = lo;
  for (std::size_t j = 1; j <= k; ++j) {
    std::size_t end = pos;
    while (end < hi && sorted[end].size() > depth && static_cast<std::size_t>(sorted[end][depth]) == j) ++end;
    if (!complete_under(s, node.child(static_cast<int>(j)), sorted, pos, end)) return false;
    pos = end;
  }
  return pos == hi;
}

}  // namespace

bool is_ball_partition(const SimStructure& s, std::vector<Ball> blocks) {
  return is_partition_of(s, s.root_ball(), std::move(blocks));
}

bool is_partition_of(const SimStructure& s, const Ball& base, std::vector<Ball> blocks) {
  std::sort(blocks.begin(), blocks.end());
  for (const Ball& b : blocks) {
    if (!base.is_prefix_of(b) || !s.is_ball(b)) return false;
  }
  return complete_under(s, base, blocks, 0, blocks.size());
}

BallPartition make_partition(const SimStructure& s, std::vector<Ball> blocks) {
  std::sort(blocks.begin(), blocks.end());
  if (!is_ball_partition(s, blocks)) throw InputError("balls do not partition the space");
  return BallPartition{std::move(blocks)};
}

BallPartition refine(const BallPartition& p, const BallPartition& q) {
  std::vector<Ball> out;
  for (const Ball& a : p.blocks) {
    for (const Ball& b : q.blocks) {
      if (a.is_prefix_of(b)) {
        out.push_back(b);
      } else if (b.is_prefix_of(a)) {
        out.push_back(a);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return BallPartition{std::move(out)};
}

std::vector<Ball> merge_siblings(const SimStructure& s, std::vector<Ball> balls) {
  std::sort(balls.begin(), balls.end());
  balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      if (balls[i].empty() || balls[i].back() != 1) continue;
      Ball parent = balls[i].parent();
      const std::size_t k = s.num_children(parent);
      if (i + k > balls.size()) continue;
      bool family = true;
      for (std::size_t j = 0; j < k && family; ++j) family = balls[i + j] == parent.child(static_cast<int>(j + 1));
      if (!family) continue;
      balls.erase(balls.begin() + static_cast<std::ptrdiff_t>(i), balls.begin() + static_cast<std::ptrdiff_t>(i + k));
      balls.insert(balls.begin() + static_cast<std::ptrdiff_t>(i), parent);
      changed = true;
      break;
    }
  }
  return balls;
}

// ---------------------------------------------------------------------------

bool SimAxiomReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

namespace {

std::string describe(const SimMap& h) {
  std::ostringstream os;
  os << "[" << h.domain.to_string() << " -> " << h.codomain.to_string() << " #" << h.label << "]";
  return os.str();
}

bool listed(const std::vector<SimMap>& maps, const SimMap& h) {
  return std::find(maps.begin(), maps.end(), h) != maps.end();
}

void fail(AxiomCheck& check, std::string witness) {
  if (check.passed) {
    check.passed = false;
    check.witness = std::move(witness);
  }
}

}  // namespace

SimAxiomReport verify_sim_axioms(const SimStructure& s, std::size_t depth, std::size_t max_balls) {
  std::vector<Ball> balls = s.balls_to_depth(depth);
  if (balls.size() > max_balls) balls.resize(max_balls);

  AxiomCheck finiteness{"Finiteness", true, {}};
  AxiomCheck identities{"Identities", true, {}};
  AxiomCheck inverses{"Inverses", true, {}};
  AxiomCheck compositions{"Compositions", true, {}};
  AxiomCheck restrictions{"Restrictions", true, {}};
  AxiomCheck classes{"Classes", true, {}};

  const std::size_t nb = balls.size();
  std::vector<std::vector<std::vector<SimMap>>> maps(nb, std::vector<std::vector<SimMap>>(nb));
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      maps[i][j] = s.sim_maps(balls[i], balls[j]);
      for (const SimMap& h : maps[i][j]) {
        if (h.domain != balls[i] || h.codomain != balls[j]) fail(finiteness, describe(h) + " has wrong endpoints");
      }
      bool same = s.sim_class(balls[i]) == s.sim_class(balls[j]);
      if (same != !maps[i][j].empty()) {
        fail(classes, balls[i].to_string() + " vs " + balls[j].to_string() + ": class and Sim disagree");
      }
      if (s.num_children(balls[i]) != s.num_children(balls[j]) && !maps[i][j].empty()) {
        fail(classes, balls[i].to_string() + " vs " + balls[j].to_string() + ": child counts differ");
      }
    }
  }

  for (std::size_t i = 0; i < nb; ++i) {
    if (!listed(maps[i][i], s.identity(balls[i]))) fail(identities, "identity on " + balls[i].to_string() + " missing");
    for (std::size_t j = 0; j < nb; ++j) {
      for (const SimMap& h : maps[i][j]) {
        SimMap inv = s.inverse(h);
        if (!listed(maps[j][i], inv)) {
          fail(inverses, "inverse of " + describe(h) + " not listed");
        } else if (s.compose(inv, h) != s.identity(balls[i]) || s.compose(h, inv) != s.identity(balls[j])) {
          fail(inverses, "inverse of " + describe(h) + " does not cancel");
        }
        for (std::size_t c = 1; c <= s.num_children(balls[i]); ++c) {
          SimMap r = s.restrict(h, c);
          if (r.codomain.empty() || r.codomain.parent() != balls[j] || !s.is_sim_map(r)) {
            fail(restrictions, "restriction of " + describe(h) + " to child " + std::to_string(c));
          }
        }
        for (std::size_t k = 0; k < nb; ++k) {
          for (const SimMap& g : maps[j][k]) {
            if (!listed(maps[i][k], s.compose(g, h))) fail(compositions, describe(g) + " o " + describe(h));
          }
        }
      }
    }
  }
  return SimAxiomReport{{finiteness, identities, inverses, compositions, restrictions, classes}};
}

}  // namespace simgroup
