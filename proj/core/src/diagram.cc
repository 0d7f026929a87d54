#include "simgroup/diagram.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "simgroup/error.hpp"

namespace simgroup {

std::vector<WireEnds> wire_ends(const BraidedDiagram& dg) {
  const std::size_t n = dg.num_wires();
  std::vector<WireEnds> ends(n);
  std::vector<int> tops(n, 0);
  std::vector<int> bottoms(n, 0);
  auto check = [n](int w) {
    if (w < 0 || static_cast<std::size_t>(w) >= n) throw InputError("wire id " + std::to_string(w) + " out of range");
    return static_cast<std::size_t>(w);
  };
  for (std::size_t i = 0; i < dg.frame_top.size(); ++i) {
    auto w = check(dg.frame_top[i]);
    ends[w].top = WireEnd{-1, static_cast<int>(i)};
    ++tops[w];
  }
  for (std::size_t i = 0; i < dg.frame_bottom.size(); ++i) {
    auto w = check(dg.frame_bottom[i]);
    ends[w].bottom = WireEnd{-1, static_cast<int>(i)};
    ++bottoms[w];
  }
  for (std::size_t t = 0; t < dg.transistors.size(); ++t) {
    const Transistor& tr = dg.transistors[t];
    for (std::size_t i = 0; i < tr.top.size(); ++i) {
      auto w = check(tr.top[i]);
      ends[w].bottom = WireEnd{static_cast<int>(t), static_cast<int>(i)};
      ++bottoms[w];
    }
    for (std::size_t i = 0; i < tr.bottom.size(); ++i) {
      auto w = check(tr.bottom[i]);
      ends[w].top = WireEnd{static_cast<int>(t), static_cast<int>(i)};
      ++tops[w];
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (tops[w] != 1 || bottoms[w] != 1) {
      throw InputError("wire " + std::to_string(w) + " has " + std::to_string(tops[w]) + " top and " +
                       std::to_string(bottoms[w]) + " bottom contacts");
    }
  }
  return ends;
}

std::vector<Symbol> contact_label(const BraidedDiagram& dg, const std::vector<int>& wires) {
  std::vector<Symbol> out;
  for (int w : wires) out.push_back(dg.wire_labels.at(static_cast<std::size_t>(w)));
  return out;
}

std::vector<Symbol> top_label(const BraidedDiagram& dg) { return contact_label(dg, dg.frame_top); }
std::vector<Symbol> bottom_label(const BraidedDiagram& dg) { return contact_label(dg, dg.frame_bottom); }

namespace {

// Transistors ordered so that every transistor comes after all transistors above it.
std::vector<int> top_down_order(const BraidedDiagram& dg, const std::vector<WireEnds>& ends) {
  const std::size_t nt = dg.transistors.size();
  std::vector<int> indegree(nt, 0);
  for (std::size_t t = 0; t < nt; ++t) {
    for (int w : dg.transistors[t].top) {
      if (ends[static_cast<std::size_t>(w)].top.transistor >= 0) ++indegree[t];
    }
  }
  std::vector<int> order;
  for (std::size_t t = 0; t < nt; ++t) {
    if (indegree[t] == 0) order.push_back(static_cast<int>(t));
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : dg.transistors[static_cast<std::size_t>(order[i])].bottom) {
      int below = ends[static_cast<std::size_t>(w)].bottom.transistor;
      if (below >= 0 && --indegree[static_cast<std::size_t>(below)] == 0) order.push_back(below);
    }
  }
  return order;
}

}  // namespace

DiagramCheck validate(const BraidedDiagram& dg, const SemigroupPresentation& p) {
  std::vector<WireEnds> ends;
  try {
    ends = wire_ends(dg);
  } catch (const InputError& e) {
    return DiagramCheck{false, "port injectivity", e.what()};
  }
  for (Symbol s : dg.wire_labels) {
    if (s < 0 || static_cast<std::size_t>(s) >= p.num_symbols()) {
      return DiagramCheck{false, "labels", "label " + std::to_string(s) + " is not a symbol"};
    }
  }
  for (std::size_t t = 0; t < dg.transistors.size(); ++t) {
    const Transistor& tr = dg.transistors[t];
    if (tr.top.empty() || tr.bottom.empty()) {
      return DiagramCheck{false, "transistor labels", "transistor " + std::to_string(t) + " has an empty contact"};
    }
    if (!p.relates(contact_label(dg, tr.top), contact_label(dg, tr.bottom))) {
      return DiagramCheck{false, "transistor labels", "transistor " + std::to_string(t) + " is not a relation"};
    }
  }
  if (top_down_order(dg, ends).size() != dg.transistors.size()) {
    return DiagramCheck{false, "acyclicity", "transistor order has a cycle"};
  }
  return DiagramCheck{};
}

BraidedDiagram identity_diagram(const std::vector<Symbol>& word) {
  BraidedDiagram dg;
  dg.wire_labels = word;
  for (std::size_t i = 0; i < word.size(); ++i) {
    dg.frame_top.push_back(static_cast<int>(i));
    dg.frame_bottom.push_back(static_cast<int>(i));
  }
  return dg;
}

BraidedDiagram concatenate(const BraidedDiagram& upper, const BraidedDiagram& lower) {
  if (bottom_label(upper) != top_label(lower)) throw ContractError("diagram labels do not match for concatenation");
  BraidedDiagram out = upper;
  const int offset = static_cast<int>(upper.num_wires());
  // Lower wires attached to the shared contact become the matching upper wires.
  std::vector<int> remap(lower.num_wires(), -1);
  for (std::size_t i = 0; i < lower.frame_top.size(); ++i) {
    remap[static_cast<std::size_t>(lower.frame_top[i])] = upper.frame_bottom[i];
  }
  int next = offset;
  for (std::size_t w = 0; w < lower.num_wires(); ++w) {
    if (remap[w] == -1) {
      remap[w] = next++;
      out.wire_labels.push_back(lower.wire_labels[w]);
    }
  }
  auto map_list = [&](const std::vector<int>& ws) {
    std::vector<int> r;
    for (int w : ws) r.push_back(remap[static_cast<std::size_t>(w)]);
    return r;
  };
  for (const Transistor& t : lower.transistors) out.transistors.push_back(Transistor{map_list(t.top), map_list(t.bottom)});
  out.frame_bottom = map_list(lower.frame_bottom);
  return out;
}

BraidedDiagram inverse(const BraidedDiagram& dg) {
  BraidedDiagram out = dg;
  std::swap(out.frame_top, out.frame_bottom);
  for (Transistor& t : out.transistors) std::swap(t.top, t.bottom);
  return out;
}

std::vector<Dipole> find_dipoles(const BraidedDiagram& dg) {
  std::vector<WireEnds> ends = wire_ends(dg);
  std::vector<Dipole> out;
  for (std::size_t t2 = 0; t2 < dg.transistors.size(); ++t2) {
    const Transistor& upper = dg.transistors[t2];
    if (upper.bottom.empty()) continue;
    int t1 = ends[static_cast<std::size_t>(upper.bottom.front())].bottom.transistor;
    if (t1 < 0) continue;
    const Transistor& lower = dg.transistors[static_cast<std::size_t>(t1)];
    if (lower.top != upper.bottom) continue;
    if (contact_label(dg, lower.bottom) != contact_label(dg, upper.top)) continue;
    out.push_back(Dipole{t1, static_cast<int>(t2)});
  }
  return out;
}

BraidedDiagram remove_dipole(const BraidedDiagram& dg, const Dipole& dp) {
  const Transistor& lower = dg.transistors.at(static_cast<std::size_t>(dp.lower));
  const Transistor& upper = dg.transistors.at(static_cast<std::size_t>(dp.upper));
  if (lower.top != upper.bottom || contact_label(dg, lower.bottom) != contact_label(dg, upper.top)) {
    throw ContractError("not a dipole");
  }
  // Wire lower.bottom[i] is replaced by upper.top[i]; the middle wires vanish.
  std::vector<int> replace(dg.num_wires(), -2);
  for (std::size_t w = 0; w < dg.num_wires(); ++w) replace[w] = static_cast<int>(w);
  for (int w : upper.bottom) replace[static_cast<std::size_t>(w)] = -1;
  for (std::size_t i = 0; i < lower.bottom.size(); ++i) {
    replace[static_cast<std::size_t>(lower.bottom[i])] = upper.top[i];
  }
  std::vector<int> new_id(dg.num_wires(), -1);
  BraidedDiagram out;
  for (std::size_t w = 0; w < dg.num_wires(); ++w) {
    if (replace[w] == static_cast<int>(w)) {
      new_id[w] = static_cast<int>(out.wire_labels.size());
      out.wire_labels.push_back(dg.wire_labels[w]);
    }
  }
  auto map_list = [&](const std::vector<int>& ws) {
    std::vector<int> r;
    for (int w : ws) r.push_back(new_id[static_cast<std::size_t>(replace[static_cast<std::size_t>(w)])]);
    return r;
  };
  out.frame_top = map_list(dg.frame_top);
  out.frame_bottom = map_list(dg.frame_bottom);
  for (std::size_t t = 0; t < dg.transistors.size(); ++t) {
    if (static_cast<int>(t) == dp.lower || static_cast<int>(t) == dp.upper) continue;
    out.transistors.push_back(Transistor{map_list(dg.transistors[t].top), map_list(dg.transistors[t].bottom)});
  }
  return out;
}

BraidedDiagram canonical_form(const BraidedDiagram& dg) {
  std::vector<WireEnds> ends = wire_ends(dg);
  std::vector<int> wire_id(dg.num_wires(), -1);
  std::vector<int> tr_id(dg.transistors.size(), -1);
  std::vector<int> wire_order;
  std::vector<int> tr_order;
  // Explicit stack of wires still to visit, leftmost on top.
  std::vector<int> stack(dg.frame_top.rbegin(), dg.frame_top.rend());
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    if (wire_id[static_cast<std::size_t>(w)] >= 0) continue;
    wire_id[static_cast<std::size_t>(w)] = static_cast<int>(wire_order.size());
    wire_order.push_back(w);
    int t = ends[static_cast<std::size_t>(w)].bottom.transistor;
    if (t >= 0 && tr_id[static_cast<std::size_t>(t)] < 0) {
      tr_id[static_cast<std::size_t>(t)] = static_cast<int>(tr_order.size());
      tr_order.push_back(t);
      const auto& below = dg.transistors[static_cast<std::size_t>(t)].bottom;
      for (auto it = below.rbegin(); it != below.rend(); ++it) stack.push_back(*it);
    }
  }
  if (wire_order.size() != dg.num_wires() || tr_order.size() != dg.transistors.size()) {
    throw InputError("diagram has parts unreachable from the top of the frame");
  }
  auto map_list = [&](const std::vector<int>& ws) {
    std::vector<int> r;
    for (int w : ws) r.push_back(wire_id[static_cast<std::size_t>(w)]);
    return r;
  };
  BraidedDiagram out;
  for (int w : wire_order) out.wire_labels.push_back(dg.wire_labels[static_cast<std::size_t>(w)]);
  for (int t : tr_order) {
    const Transistor& tr = dg.transistors[static_cast<std::size_t>(t)];
    out.transistors.push_back(Transistor{map_list(tr.top), map_list(tr.bottom)});
  }
  out.frame_top = map_list(dg.frame_top);
  out.frame_bottom = map_list(dg.frame_bottom);
  return out;
}

bool equivalent(const BraidedDiagram& a, const BraidedDiagram& b) { return canonical_form(a) == canonical_form(b); }

BraidedDiagram reduce(const BraidedDiagram& dg) {
  BraidedDiagram cur = dg;
  while (true) {
    std::vector<Dipole> dps = find_dipoles(cur);
    if (dps.empty()) break;
    cur = remove_dipole(cur, dps.front());
  }
  return canonical_form(cur);
}

std::vector<BraidedDiagram> reduction_outcomes(const BraidedDiagram& dg, std::size_t state_cap) {
  std::vector<BraidedDiagram> results;
  std::vector<BraidedDiagram> frontier{canonical_form(dg)};
  auto key = [](const BraidedDiagram& d) {
    std::ostringstream os;
    for (Symbol s : d.wire_labels) os << s << ',';
    os << '|';
    for (const Transistor& t : d.transistors) {
      for (int w : t.top) os << w << ',';
      os << '/';
      for (int w : t.bottom) os << w << ',';
      os << ';';
    }
    os << '|';
    for (int w : d.frame_top) os << w << ',';
    os << '|';
    for (int w : d.frame_bottom) os << w << ',';
    return os.str();
  };
  std::set<std::string> seen{key(frontier.front())};
  std::set<std::string> terminal;
  while (!frontier.empty()) {
    BraidedDiagram cur = std::move(frontier.back());
    frontier.pop_back();
    std::vector<Dipole> dps = find_dipoles(cur);
    if (dps.empty()) {
      if (terminal.insert(key(cur)).second) results.push_back(cur);
      continue;
    }
    for (const Dipole& dp : dps) {
      BraidedDiagram next = canonical_form(remove_dipole(cur, dp));
      if (seen.insert(key(next)).second) {
        if (seen.size() > state_cap) throw CapExceeded("too many intermediate diagrams");
        frontier.push_back(std::move(next));
      }
    }
  }
  return results;
}

// ---------------------------------------------------------------------------

namespace {

class EndsStructure final : public SimStructure {
 public:
  EndsStructure(SemigroupPresentation p, Symbol start) : p_(std::move(p)), start_(start) {
    if (!p_.is_tree_like()) throw ContractError("presentation is not tree-like");
    if (start_ < 0 || static_cast<std::size_t>(start_) >= p_.num_symbols()) throw InputError("unknown start symbol");
    class_of_.assign(p_.num_symbols(), -1);
    std::vector<std::pair<Symbol, Ball>> queue{{start_, Ball{}}};
    class_of_[static_cast<std::size_t>(start_)] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto [sym, ball] = queue[i];
      symbol_of_.push_back(sym);
      reps_.push_back(ball);
      if (const auto* rhs = p_.expansion_of(sym)) {
        for (std::size_t j = 0; j < rhs->size(); ++j) {
          Symbol c = (*rhs)[j];
          if (class_of_[static_cast<std::size_t>(c)] < 0) {
            class_of_[static_cast<std::size_t>(c)] = static_cast<int>(queue.size());
            queue.emplace_back(c, ball.child(static_cast<int>(j + 1)));
          }
        }
      }
    }
  }

  std::string name() const override { return "ends of <" + p_.name(start_) + ">"; }

  Symbol label(const Ball& b) const {
    Symbol s = start_;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto* rhs = p_.expansion_of(s);
      if (rhs == nullptr || b[i] < 1 || static_cast<std::size_t>(b[i]) > rhs->size()) {
        throw ContractError("not a ball: " + b.to_string());
      }
      s = (*rhs)[static_cast<std::size_t>(b[i] - 1)];
    }
    return s;
  }

  std::size_t num_children(const Ball& b) const override {
    const auto* rhs = p_.expansion_of(label(b));
    return rhs == nullptr ? 0 : rhs->size();
  }
  int sim_class(const Ball& b) const override { return class_of_[static_cast<std::size_t>(label(b))]; }
  int num_classes() const override { return static_cast<int>(reps_.size()); }
  Ball class_rep(int cls) const override { return reps_.at(static_cast<std::size_t>(cls)); }
  std::string class_name(int cls) const override { return p_.name(symbol_of_.at(static_cast<std::size_t>(cls))); }

  std::vector<SimMap> sim_maps(const Ball& from, const Ball& to) const override {
    if (label(from) != label(to)) return {};
    return {SimMap{from, to, 0}};
  }
  SimMap identity(const Ball& b) const override { return SimMap{b, b, 0}; }
  SimMap compose(const SimMap& second, const SimMap& first) const override {
    if (first.codomain != second.domain) throw ContractError("sim maps are not composable");
    return SimMap{first.domain, second.codomain, 0};
  }
  SimMap inverse(const SimMap& h) const override { return SimMap{h.codomain, h.domain, 0}; }
  SimMap restrict(const SimMap& h, std::size_t child) const override {
    const int j = static_cast<int>(child);
    return SimMap{h.domain.child(j), h.codomain.child(j), 0};
  }

 private:
  SemigroupPresentation p_;
  Symbol start_;
  std::vector<int> class_of_;
  std::vector<Symbol> symbol_of_;
  std::vector<Ball> reps_;
};

// Presents `base` with the maximal proper subballs of each ball permuted.
class ReorderedStructure final : public SimStructure {
 public:
  ReorderedStructure(std::shared_ptr<const SimStructure> base, ChildOrder order)
      : base_(std::move(base)), order_(std::move(order)) {}

  std::string name() const override { return base_->name() + " (reordered)"; }

  Ball to_base(const Ball& b) const {
    Ball cur;
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::vector<std::size_t> perm = order_(cur);
      cur.push_back(static_cast<int>(perm.at(static_cast<std::size_t>(b[i] - 1))));
    }
    return cur;
  }
  Ball from_base(const Ball& b) const {
    Ball cur;
    Ball out;
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::vector<std::size_t> perm = order_(cur);
      auto it = std::find(perm.begin(), perm.end(), static_cast<std::size_t>(b[i]));
      out.push_back(static_cast<int>(it - perm.begin()) + 1);
      cur.push_back(b[i]);
    }
    return out;
  }
  SimMap to_base(const SimMap& h) const { return SimMap{to_base(h.domain), to_base(h.codomain), h.label}; }
  SimMap from_base(const SimMap& h) const { return SimMap{from_base(h.domain), from_base(h.codomain), h.label}; }

  std::size_t num_children(const Ball& b) const override { return base_->num_children(to_base(b)); }
  int sim_class(const Ball& b) const override { return base_->sim_class(to_base(b)); }
  int num_classes() const override { return base_->num_classes(); }
  Ball class_rep(int cls) const override { return from_base(base_->class_rep(cls)); }
  std::string class_name(int cls) const override { return base_->class_name(cls); }
  std::vector<SimMap> sim_maps(const Ball& from, const Ball& to) const override {
    std::vector<SimMap> out;
    for (const SimMap& h : base_->sim_maps(to_base(from), to_base(to))) out.push_back(SimMap{from, to, h.label});
    return out;
  }
  SimMap identity(const Ball& b) const override { return from_base(base_->identity(to_base(b))); }
  SimMap compose(const SimMap& second, const SimMap& first) const override {
    return from_base(base_->compose(to_base(second), to_base(first)));
  }
  SimMap inverse(const SimMap& h) const override { return from_base(base_->inverse(to_base(h))); }
  SimMap restrict(const SimMap& h, std::size_t child) const override {
    Ball dom = to_base(h.domain);
    std::size_t base_child = order_(dom).at(child - 1);
    return from_base(base_->restrict(SimMap{dom, to_base(h.codomain), h.label}, base_child));
  }

 private:
  std::shared_ptr<const SimStructure> base_;
  ChildOrder order_;
};

}  // namespace

std::shared_ptr<const SimStructure> ends_space(const SemigroupPresentation& p, Symbol start) {
  return std::make_shared<const EndsStructure>(p, start);
}

std::shared_ptr<const SimStructure> reorder_children(std::shared_ptr<const SimStructure> base, ChildOrder order) {
  return std::make_shared<const ReorderedStructure>(std::move(base), std::move(order));
}

std::shared_ptr<const SimStructure> make_linear_order(std::shared_ptr<const SimStructure> s) {
  const SimStructure* raw = s.get();
  ChildOrder order = [raw](const Ball& b) {
    const std::size_t k = raw->num_children(b);
    Ball rep = raw->class_rep(raw->sim_class(b));
    std::vector<SimMap> maps = raw->sim_maps(b, rep);
    if (maps.size() != 1) throw ContractError("linear order needs exactly one similarity to each class representative");
    std::vector<std::size_t> perm(k, 0);
    for (std::size_t c = 1; c <= k; ++c) {
      SimMap r = raw->restrict(maps.front(), c);
      perm.at(static_cast<std::size_t>(r.codomain.back() - 1)) = c;
    }
    return perm;
  };
  return reorder_children(std::move(s), std::move(order));
}

bool is_small(const SimStructure& s, std::size_t depth) {
  std::vector<Ball> balls = s.balls_to_depth(depth);
  if (balls.size() > 64) balls.resize(64);
  for (int c = 0; c < s.num_classes(); ++c) balls.push_back(s.class_rep(c));
  for (const Ball& a : balls) {
    for (const Ball& b : balls) {
      std::vector<SimMap> maps = s.sim_maps(a, b);
      if (maps.size() > 1) return false;
      for (const SimMap& h : maps) {
        for (std::size_t j = 1; j <= s.num_children(a); ++j) {
          if (static_cast<std::size_t>(s.restrict(h, j).codomain.back()) != j) return false;
        }
      }
    }
  }
  return true;
}

SemigroupPresentation build_psim(const SimStructure& s) {
  if (!is_small(s)) throw ContractError("structure is not small");
  std::vector<std::string> names;
  std::vector<Relation> rels;
  for (int c = 0; c < s.num_classes(); ++c) {
    names.push_back(s.class_name(c));
    Ball rep = s.class_rep(c);
    if (s.is_point(rep)) continue;
    Relation r{{c}, {}};
    for (const Ball& child : s.max_proper_subballs(rep)) r.rhs.push_back(s.sim_class(child));
    rels.push_back(std::move(r));
  }
  return SemigroupPresentation(std::move(names), std::move(rels));
}

// ---------------------------------------------------------------------------

void check_triple(const SimStructure& s, const DefiningTriple& t) {
  if (t.domain.size() != t.range.size() || t.bijection.size() != t.domain.size()) {
    throw InputError("triple sizes disagree");
  }
  if (!is_ball_partition(s, t.domain) || !is_ball_partition(s, t.range)) throw InputError("triple is not on partitions");
  std::vector<bool> hit(t.range.size(), false);
  for (std::size_t i = 0; i < t.bijection.size(); ++i) {
    std::size_t j = t.bijection[i];
    if (j >= t.range.size() || hit[j]) throw InputError("triple map is not a bijection");
    hit[j] = true;
    if (s.sim_class(t.domain[i]) != s.sim_class(t.range[j])) throw InputError("triple pairs dissimilar balls");
  }
}

BraidedDiagram partition_diagram(const SimStructure& s, std::vector<Ball> partition) {
  std::sort(partition.begin(), partition.end());
  if (!is_ball_partition(s, partition)) throw InputError("not a partition");
  BraidedDiagram dg;
  dg.frame_bottom.assign(partition.size(), -1);
  auto new_wire = [&](const Ball& b) {
    dg.wire_labels.push_back(s.sim_class(b));
    return static_cast<int>(dg.wire_labels.size() - 1);
  };
  // Depth-first so that bottom slots follow the order of the partition.
  std::vector<std::pair<Ball, int>> stack{{Ball{}, new_wire(Ball{})}};
  dg.frame_top.push_back(0);
  while (!stack.empty()) {
    auto [b, w] = stack.back();
    stack.pop_back();
    auto it = std::lower_bound(partition.begin(), partition.end(), b);
    if (it != partition.end() && *it == b) {
      dg.frame_bottom[static_cast<std::size_t>(it - partition.begin())] = w;
      continue;
    }
    Transistor t{{w}, {}};
    std::vector<Ball> kids = s.max_proper_subballs(b);
    for (const Ball& k : kids) t.bottom.push_back(new_wire(k));
    for (std::size_t i = kids.size(); i-- > 0;) stack.emplace_back(kids[i], t.bottom[i]);
    dg.transistors.push_back(std::move(t));
  }
  return dg;
}

BraidedDiagram triple_to_diagram(const SimStructure& s, const DefiningTriple& t) {
  check_triple(s, t);
  // Positions of the blocks in sorted order.
  std::vector<Ball> dom_sorted = t.domain;
  std::vector<Ball> rng_sorted = t.range;
  std::sort(dom_sorted.begin(), dom_sorted.end());
  std::sort(rng_sorted.begin(), rng_sorted.end());
  auto pos = [](const std::vector<Ball>& v, const Ball& b) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), b) - v.begin());
  };
  // Middle diagram: wire per range block, top in range order, bottom at its preimage's slot.
  BraidedDiagram mid;
  const std::size_t n = t.domain.size();
  mid.frame_top.resize(n);
  mid.frame_bottom.resize(n);
  mid.wire_labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t top_slot = pos(rng_sorted, t.range[t.bijection[i]]);
    std::size_t bottom_slot = pos(dom_sorted, t.domain[i]);
    mid.wire_labels[top_slot] = s.sim_class(t.range[t.bijection[i]]);
    mid.frame_top[top_slot] = static_cast<int>(top_slot);
    mid.frame_bottom[bottom_slot] = static_cast<int>(top_slot);
  }
  BraidedDiagram upper = partition_diagram(s, t.range);
  BraidedDiagram lower = inverse(partition_diagram(s, t.domain));
  return concatenate(concatenate(upper, mid), lower);
}

DefiningTriple diagram_to_triple(const SimStructure& s, const BraidedDiagram& dg) {
  std::vector<WireEnds> ends = wire_ends(dg);
  if (dg.frame_top.size() != 1 || dg.frame_bottom.size() != 1 || dg.wire_labels[static_cast<std::size_t>(dg.frame_top[0])] != 0 ||
      dg.wire_labels[static_cast<std::size_t>(dg.frame_bottom[0])] != 0) {
    throw ContractError("expected a ([X],[X])-diagram");
  }
  const std::size_t nw = dg.num_wires();
  const std::size_t nt = dg.transistors.size();
  std::vector<std::optional<Ball>> upper(nw);
  std::vector<std::optional<Ball>> lower(nw);
  upper[static_cast<std::size_t>(dg.frame_top[0])] = Ball{};
  lower[static_cast<std::size_t>(dg.frame_bottom[0])] = Ball{};
  std::vector<bool> positive(nt);
  for (std::size_t t = 0; t < nt; ++t) positive[t] = dg.transistors[t].top.size() == 1;
  std::vector<bool> done(nt, false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t t = 0; t < nt; ++t) {
      if (done[t]) continue;
      const Transistor& tr = dg.transistors[t];
      const std::vector<int>& from = positive[t] ? tr.top : tr.bottom;
      const std::vector<int>& to = positive[t] ? tr.bottom : tr.top;
      auto& side = positive[t] ? upper : lower;
      if (from.size() != 1 || !side[static_cast<std::size_t>(from[0])]) continue;
      Ball b = *side[static_cast<std::size_t>(from[0])];
      if (s.num_children(b) != to.size()) throw ContractError("transistor does not match the ball tree");
      for (std::size_t j = 0; j < to.size(); ++j) side[static_cast<std::size_t>(to[j])] = b.child(static_cast<int>(j + 1));
      done[t] = true;
      progress = true;
    }
  }
  for (std::size_t t = 0; t < nt; ++t) {
    if (!done[t]) throw ContractError("diagram is not positive over negative");
  }
  DefiningTriple out;
  std::vector<Ball> range_blocks;
  std::vector<std::pair<Ball, Ball>> pairs;  // (domain ball, range ball)
  for (std::size_t w = 0; w < nw; ++w) {
    const WireEnds& e = ends[w];
    bool top_side = e.top.transistor < 0 || positive[static_cast<std::size_t>(e.top.transistor)];
    bool bottom_side = e.bottom.transistor < 0 || !positive[static_cast<std::size_t>(e.bottom.transistor)];
    if (!(top_side && bottom_side)) continue;
    if (!upper[w] || !lower[w]) throw ContractError("diagram is not positive over negative");
    for (const auto* b : {&*upper[w], &*lower[w]}) {
      if (s.sim_class(*b) != dg.wire_labels[w]) throw ContractError("wire label disagrees with its ball");
    }
    pairs.emplace_back(*lower[w], *upper[w]);
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [d, r] : pairs) {
    out.domain.push_back(d);
    range_blocks.push_back(r);
  }
  out.range = range_blocks;
  std::sort(out.range.begin(), out.range.end());
  for (const Ball& r : range_blocks) {
    out.bijection.push_back(static_cast<std::size_t>(std::lower_bound(out.range.begin(), out.range.end(), r) - out.range.begin()));
  }
  check_triple(s, out);
  return out;
}

DefiningTriple triple_from_table(const TableElement& g) {
  if (!g.group().is_trivial()) throw ContractError("defining triples need a trivial middle row group");
  std::vector<Column> cols = g.columns();
  std::sort(cols.begin(), cols.end());
  DefiningTriple t;
  for (const Column& c : cols) {
    t.domain.push_back(c.v);
    t.range.push_back(c.u);
  }
  std::sort(t.range.begin(), t.range.end());
  for (const Column& c : cols) {
    t.bijection.push_back(static_cast<std::size_t>(std::lower_bound(t.range.begin(), t.range.end(), c.u) - t.range.begin()));
  }
  return t;
}

TableElement table_from_triple(int d, GroupPtr H, const DefiningTriple& t) {
  std::vector<Column> cols;
  Perm id = Perm::identity(d);
  for (std::size_t i = 0; i < t.domain.size(); ++i) cols.push_back(Column{t.domain[i], id, t.range.at(t.bijection[i])});
  return TableElement(d, std::move(H), std::move(cols));
}

}  // namespace simgroup
