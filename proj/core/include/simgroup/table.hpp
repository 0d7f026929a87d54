#pragma once

#include <compare>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "simgroup/perm.hpp"
#include "simgroup/word.hpp"

namespace simgroup {

// One column (v, h, u): the element sends v·x to u·h(x), h acting letterwise.
struct Column {
  Word v;
  Perm h;
  Word u;

  auto operator<=>(const Column&) const = default;
};

using GroupPtr = std::shared_ptr<const PermGroup>;

GroupPtr share_group(PermGroup H);

class ReducedTable;

// Element of V_d(H) given by a table whose top and bottom rows are complete
// prefix codes. Not necessarily reduced.
class TableElement {
 public:
  // Validates the codes, the letters and membership of every h in H.
  TableElement(int d, GroupPtr H, std::vector<Column> columns);

  static TableElement identity(int d, GroupPtr H);

  int arity() const { return d_; }
  const PermGroup& group() const { return *H_; }
  const GroupPtr& group_ptr() const { return H_; }
  const std::vector<Column>& columns() const { return columns_; }
  std::size_t size() const { return columns_.size(); }
  // Length of the longest top-row word.
  std::size_t depth() const;

  bool operator==(const TableElement& other) const;

 private:
  struct Unchecked {};
  TableElement(Unchecked, int d, GroupPtr H, std::vector<Column> columns)
      : d_(d), H_(std::move(H)), columns_(std::move(columns)) {}
  friend class ReducedTable;
  friend TableElement split(const TableElement&, std::size_t);
  friend ReducedTable reduce(const TableElement&);

  int d_;
  GroupPtr H_;
  std::vector<Column> columns_;
};

// A table with no mergeable sibling family, columns sorted by top row.
// Two elements are equal iff their reduced tables are equal.
class ReducedTable {
 public:
  const TableElement& table() const { return table_; }
  operator const TableElement&() const { return table_; }  // NOLINT(google-explicit-constructor)
  const std::vector<Column>& columns() const { return table_.columns(); }
  int arity() const { return table_.arity(); }
  std::size_t size() const { return table_.size(); }
  std::size_t depth() const { return table_.depth(); }

  bool operator==(const ReducedTable& other) const { return table_ == other.table_; }
  bool operator<(const ReducedTable& other) const { return table_.columns() < other.table_.columns(); }

 private:
  explicit ReducedTable(TableElement t) : table_(std::move(t)) {}
  friend ReducedTable reduce(const TableElement&);
  TableElement table_;
};

// A sibling family {(p·j, h, q·h(j)) : j = 1..d} that merges into (p, h, q).
struct MergeFamily {
  Word parent_v;
  Perm h;
  Word parent_u;
};

std::vector<MergeFamily> mergeable_families(int d, std::span<const Column> columns);
std::vector<Column> merge_family(int d, std::vector<Column> columns, const MergeFamily& family);

// Replaces column `index` (0-based) by its d children.
TableElement split(const TableElement& g, std::size_t index);
ReducedTable reduce(const TableElement& g);
// outer ∘ inner: apply `inner` first.
ReducedTable compose(const TableElement& outer, const TableElement& inner);
ReducedTable invert(const TableElement& g);

// Composes column lists. `inner` may describe a partial map; every bottom-row
// ball of `inner` must be covered by top-row balls of `outer`.
std::vector<Column> compose_columns(int d, std::span<const Column> outer, std::span<const Column> inner);

// Image of the ball wA^ω; throws InsufficientDepth when no column top row is a prefix of w.
Word apply_prefix(const TableElement& g, const Word& w);

enum class Parity { even, odd };
Parity parity(const TableElement& g);
bool in_vprime(const TableElement& g);

// λ_r(g): g acting inside rA^ω, identity elsewhere.
TableElement lambda_embed(const Word& r, const TableElement& g);
// Element of V'_d with identity middle row mapping r·x to s·x.
TableElement ball_transporter(int d, GroupPtr H, const Word& r, const Word& s);

// Complement of the ball rA^ω as the balls r_{<k}·j with j != r_k.
std::vector<Word> sibling_ladder(int d, const Word& r);

// Random complete prefix code of exactly `size` words; size must be 1 mod (d-1).
std::vector<Word> random_complete_code(int d, std::size_t size, std::mt19937_64& rng);
// Random element with at most `max_columns` columns, not reduced.
TableElement random_table(int d, GroupPtr H, std::size_t max_columns, std::mt19937_64& rng);

}  // namespace simgroup
