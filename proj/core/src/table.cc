#include "simgroup/table.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "simgroup/error.hpp"

namespace simgroup {

GroupPtr share_group(PermGroup H) { return std::make_shared<const PermGroup>(std::move(H)); }

namespace {

Word apply_letterwise(const Perm& h, const Word& w) {
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(h(w[i]));
  return out;
}

void check_letters(const Word& w, int d) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 1 || w[i] > d) throw InputError("letter " + std::to_string(w[i]) + " outside 1.." + std::to_string(d));
  }
}

}  // namespace

TableElement::TableElement(int d, GroupPtr H, std::vector<Column> columns)
    : d_(d), H_(std::move(H)), columns_(std::move(columns)) {
  if (d_ < 2) throw InputError("arity must be at least 2");
  if (!H_ || H_->degree() != d_) throw InputError("group degree does not match arity");
  if (columns_.empty()) throw InputError("table has no columns");
  std::vector<Word> tops;
  std::vector<Word> bottoms;
  for (const Column& c : columns_) {
    check_letters(c.v, d_);
    check_letters(c.u, d_);
    if (c.h.degree() != d_) throw InputError("middle-row permutation has wrong degree");
    if (!H_->contains(c.h)) throw InputError("middle-row permutation " + c.h.to_cycle_string() + " not in H");
    tops.push_back(c.v);
    bottoms.push_back(c.u);
  }
  if (!is_complete_prefix_code(tops, d_)) throw InputError("top row is not a complete prefix code");
  if (!is_complete_prefix_code(bottoms, d_)) throw InputError("bottom row is not a complete prefix code");
}

TableElement TableElement::identity(int d, GroupPtr H) {
  Perm id = Perm::identity(d);
  return TableElement(d, std::move(H), {Column{Word{}, id, Word{}}});
}

std::size_t TableElement::depth() const {
  std::size_t m = 0;
  for (const Column& c : columns_) m = std::max(m, c.v.size());
  return m;
}

bool TableElement::operator==(const TableElement& other) const {
  if (d_ != other.d_ || columns_ != other.columns_) return false;
  return H_ == other.H_ || *H_ == *other.H_;
}

// ---------------------------------------------------------------------------

std::vector<MergeFamily> mergeable_families(int d, std::span<const Column> columns) {
  std::map<Word, const Column*> by_top;
  for (const Column& c : columns) by_top.emplace(c.v, &c);
  std::vector<MergeFamily> out;
  for (const Column& c : columns) {
    if (c.v.empty() || c.v.back() != 1 || c.u.empty()) continue;
    Word p = c.v.parent();
    Word q = c.u.parent();
    bool ok = true;
    for (int j = 1; j <= d && ok; ++j) {
      auto it = by_top.find(p.child(j));
      ok = it != by_top.end() && it->second->h == c.h && it->second->u == q.child(c.h(j));
    }
    if (ok) out.push_back(MergeFamily{p, c.h, q});
  }
  return out;
}

std::vector<Column> merge_family(int d, std::vector<Column> columns, const MergeFamily& family) {
  std::size_t before = columns.size();
  std::erase_if(columns, [&](const Column& c) { return !c.v.empty() && c.v.parent() == family.parent_v; });
  if (before - columns.size() != static_cast<std::size_t>(d)) throw ContractError("not a sibling family of the table");
  columns.push_back(Column{family.parent_v, family.h, family.parent_u});
  return columns;
}

TableElement split(const TableElement& g, std::size_t index) {
  if (index >= g.size()) throw ContractError("column index out of range");
  std::vector<Column> cols;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Column& c = g.columns()[i];
    if (i != index) {
      cols.push_back(c);
      continue;
    }
    for (int j = 1; j <= g.arity(); ++j) cols.push_back(Column{c.v.child(j), c.h, c.u.child(c.h(j))});
  }
  return TableElement(TableElement::Unchecked{}, g.arity(), g.group_ptr(), std::move(cols));
}

ReducedTable reduce(const TableElement& g) {
  std::vector<Column> cols = g.columns();
  const int d = g.arity();
  while (true) {
    std::vector<MergeFamily> fams = mergeable_families(d, cols);
    if (fams.empty()) break;
    // Families found in one pass are disjoint, so they can be merged together.
    for (const MergeFamily& f : fams) cols = merge_family(d, std::move(cols), f);
  }
  std::sort(cols.begin(), cols.end());
  return ReducedTable(TableElement(TableElement::Unchecked{}, d, g.group_ptr(), std::move(cols)));
}

std::vector<Column> compose_columns(int d, std::span<const Column> outer, std::span<const Column> inner) {
  std::map<Word, const Column*> by_top;
  std::size_t outer_depth = 0;
  for (const Column& c : outer) {
    by_top.emplace(c.v, &c);
    outer_depth = std::max(outer_depth, c.v.size());
  }
  std::vector<Column> out;
  std::vector<Column> work(inner.rbegin(), inner.rend());
  while (!work.empty()) {
    Column c = std::move(work.back());
    work.pop_back();
    const Column* hit = nullptr;
    std::size_t len = 0;
    for (len = 0; len <= c.u.size(); ++len) {
      auto it = by_top.find(c.u.prefix(len));
      if (it != by_top.end()) {
        hit = it->second;
        break;
      }
    }
    if (hit != nullptr) {
      out.push_back(Column{c.v, hit->h * c.h, hit->u + apply_letterwise(hit->h, c.u.suffix_from(len))});
      continue;
    }
    if (c.u.size() >= outer_depth) throw ContractError("outer map undefined on ball " + c.u.to_string());
    for (int j = d; j >= 1; --j) work.push_back(Column{c.v.child(j), c.h, c.u.child(c.h(j))});
  }
  return out;
}

ReducedTable compose(const TableElement& outer, const TableElement& inner) {
  if (outer.arity() != inner.arity()) throw InputError("arity mismatch");
  if (!(outer.group() == inner.group())) throw InputError("group mismatch");
  return reduce(TableElement(outer.arity(), outer.group_ptr(),
                             compose_columns(outer.arity(), outer.columns(), inner.columns())));
}

ReducedTable invert(const TableElement& g) {
  std::vector<Column> cols;
  for (const Column& c : g.columns()) cols.push_back(Column{c.u, c.h.inverse(), c.v});
  return reduce(TableElement(g.arity(), g.group_ptr(), std::move(cols)));
}

Word apply_prefix(const TableElement& g, const Word& w) {
  for (const Column& c : g.columns()) {
    if (c.v.is_prefix_of(w)) return c.u + apply_letterwise(c.h, w.suffix_from(c.v.size()));
  }
  throw InsufficientDepth("no column covers " + (w.empty() ? std::string("ε") : w.to_string()));
}

Parity parity(const TableElement& g) {
  const auto& cols = g.columns();
  std::vector<std::size_t> by_v(cols.size());
  std::iota(by_v.begin(), by_v.end(), 0);
  std::sort(by_v.begin(), by_v.end(), [&](std::size_t a, std::size_t b) { return cols[a].v < cols[b].v; });
  std::vector<std::size_t> by_u = by_v;
  std::sort(by_u.begin(), by_u.end(), [&](std::size_t a, std::size_t b) { return cols[a].u < cols[b].u; });
  std::vector<int> u_rank(cols.size());
  for (std::size_t i = 0; i < by_u.size(); ++i) u_rank[by_u[i]] = static_cast<int>(i) + 1;
  std::vector<int> images;
  for (std::size_t idx : by_v) images.push_back(u_rank[idx]);
  return Perm::from_images(std::move(images)).is_even() ? Parity::even : Parity::odd;
}

bool in_vprime(const TableElement& g) {
  if (g.arity() % 2 == 0 || g.group().contains_odd()) return true;
  return parity(g) == Parity::even;
}

std::vector<Word> sibling_ladder(int d, const Word& r) {
  std::vector<Word> out;
  for (std::size_t k = 0; k < r.size(); ++k) {
    Word p = r.prefix(k);
    for (int j = 1; j <= d; ++j) {
      if (j != r[k]) out.push_back(p.child(j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TableElement lambda_embed(const Word& r, const TableElement& g) {
  const int d = g.arity();
  std::vector<Column> cols;
  for (const Column& c : g.columns()) cols.push_back(Column{r + c.v, c.h, r + c.u});
  Perm id = Perm::identity(d);
  for (const Word& w : sibling_ladder(d, r)) cols.push_back(Column{w, id, w});
  return TableElement(d, g.group_ptr(), std::move(cols));
}

TableElement ball_transporter(int d, GroupPtr H, const Word& r, const Word& s) {
  if (r.empty() || s.empty()) throw ContractError("ball transporter needs proper balls");
  if (r == s) return TableElement::identity(d, std::move(H));
  std::vector<Word> lr = sibling_ladder(d, r);
  std::vector<Word> ls = sibling_ladder(d, s);
  auto grow = [d](std::vector<Word>& code) {
    Word last = code.back();
    code.pop_back();
    for (int j = 1; j <= d; ++j) code.push_back(last.child(j));
  };
  while (lr.size() < ls.size()) grow(lr);
  while (ls.size() < lr.size()) grow(ls);
  Perm id = Perm::identity(d);
  std::vector<Column> cols{Column{r, id, s}};
  for (std::size_t i = 0; i < lr.size(); ++i) cols.push_back(Column{lr[i], id, ls[i]});
  TableElement t(d, H, cols);
  if (d % 2 == 1 && parity(t) == Parity::odd) {
    std::swap(cols[cols.size() - 1].u, cols[cols.size() - 2].u);
    t = TableElement(d, std::move(H), std::move(cols));
  }
  return t;
}

std::vector<Word> random_complete_code(int d, std::size_t size, std::mt19937_64& rng) {
  if (size == 0 || (size - 1) % static_cast<std::size_t>(d - 1) != 0) {
    throw ContractError("code size must be 1 mod d-1");
  }
  std::vector<Word> code{Word{}};
  while (code.size() < size) {
    std::uniform_int_distribution<std::size_t> pick(0, code.size() - 1);
    std::size_t i = pick(rng);
    Word w = code[i];
    code.erase(code.begin() + static_cast<std::ptrdiff_t>(i));
    for (int j = 1; j <= d; ++j) code.push_back(w.child(j));
  }
  std::sort(code.begin(), code.end());
  return code;
}

TableElement random_table(int d, GroupPtr H, std::size_t max_columns, std::mt19937_64& rng) {
  const std::size_t step = static_cast<std::size_t>(d - 1);
  const std::size_t max_k = max_columns > 1 ? (max_columns - 1) / step : 0;
  std::size_t k = std::uniform_int_distribution<std::size_t>(0, max_k)(rng);
  std::size_t size = 1 + k * step;
  std::vector<Word> top = random_complete_code(d, size, rng);
  std::vector<Word> bottom = random_complete_code(d, size, rng);
  std::shuffle(bottom.begin(), bottom.end(), rng);
  std::uniform_int_distribution<std::size_t> pick(0, H->order() - 1);
  std::vector<Column> cols;
  for (std::size_t i = 0; i < size; ++i) cols.push_back(Column{top[i], H->elements()[pick(rng)], bottom[i]});
  return TableElement(d, std::move(H), std::move(cols));
}

}  // namespace simgroup
