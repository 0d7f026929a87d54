#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace simgroup {

using Symbol = int;

struct Relation {
  std::vector<Symbol> lhs;
  std::vector<Symbol> rhs;

  bool operator==(const Relation&) const = default;
};

// Semigroup presentation <S | R>. Text form: one relation per line,
// "x = x x"; a line without '=' only declares its symbols; '#' starts a comment.
class SemigroupPresentation {
 public:
  SemigroupPresentation() = default;
  SemigroupPresentation(std::vector<std::string> symbols, std::vector<Relation> relations);

  static SemigroupPresentation parse(std::string_view text);
  std::string to_text() const;

  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<Relation>& relations() const { return relations_; }
  std::size_t num_symbols() const { return symbols_.size(); }
  const std::string& name(Symbol s) const { return symbols_.at(static_cast<std::size_t>(s)); }
  // Throws InputError for unknown names.
  Symbol symbol(std::string_view name) const;

  // Left sides are single symbols, right sides have length at least 2, and
  // each symbol heads at most one relation.
  bool is_tree_like() const;
  // Right side of the relation headed by `s`, or nullptr.
  const std::vector<Symbol>* expansion_of(Symbol s) const;
  bool relates(const std::vector<Symbol>& top, const std::vector<Symbol>& bottom) const;

  bool operator==(const SemigroupPresentation&) const = default;

 private:
  std::vector<std::string> symbols_;
  std::vector<Relation> relations_;
};

}  // namespace simgroup
