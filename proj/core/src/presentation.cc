#include "simgroup/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "simgroup/error.hpp"

namespace simgroup {

SemigroupPresentation::SemigroupPresentation(std::vector<std::string> symbols, std::vector<Relation> relations)
    : symbols_(std::move(symbols)), relations_(std::move(relations)) {
  for (const Relation& r : relations_) {
    if (r.lhs.empty() || r.rhs.empty()) throw InputError("relation sides must be nonempty");
    for (Symbol s : r.lhs) {
      if (s < 0 || static_cast<std::size_t>(s) >= symbols_.size()) throw InputError("relation uses unknown symbol");
    }
    for (Symbol s : r.rhs) {
      if (s < 0 || static_cast<std::size_t>(s) >= symbols_.size()) throw InputError("relation uses unknown symbol");
    }
  }
}

SemigroupPresentation SemigroupPresentation::parse(std::string_view text) {
  std::vector<std::string> symbols;
  std::vector<Relation> relations;
  auto intern = [&](const std::string& name) {
    auto it = std::find(symbols.begin(), symbols.end(), name);
    if (it != symbols.end()) return static_cast<Symbol>(it - symbols.begin());
    symbols.push_back(name);
    return static_cast<Symbol>(symbols.size() - 1);
  };
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    auto words = [&](const std::string& part) {
      std::istringstream ws(part);
      std::vector<Symbol> out;
      std::string tok;
      while (ws >> tok) out.push_back(intern(tok));
      return out;
    };
    if (eq == std::string::npos) {
      words(line);
      continue;
    }
    if (line.find('=', eq + 1) != std::string::npos) {
      throw InputError("line " + std::to_string(lineno) + ": more than one '='");
    }
    std::vector<Symbol> lhs = words(line.substr(0, eq));
    std::vector<Symbol> rhs = words(line.substr(eq + 1));
    if (lhs.empty() || rhs.empty()) throw InputError("line " + std::to_string(lineno) + ": empty side");
    relations.push_back(Relation{std::move(lhs), std::move(rhs)});
  }
  return SemigroupPresentation(std::move(symbols), std::move(relations));
}

std::string SemigroupPresentation::to_text() const {
  std::ostringstream os;
  // Declare symbols first so that parsing reproduces the symbol order.
  bool first_decl = true;
  for (const std::string& s : symbols_) {
    os << (first_decl ? "" : " ") << s;
    first_decl = false;
  }
  os << '\n';
  for (const Relation& r : relations_) {
    for (std::size_t i = 0; i < r.lhs.size(); ++i) os << (i ? " " : "") << name(r.lhs[i]);
    os << " =";
    for (Symbol s : r.rhs) os << ' ' << name(s);
    os << '\n';
  }
  return os.str();
}

Symbol SemigroupPresentation::symbol(std::string_view nm) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), nm);
  if (it == symbols_.end()) throw InputError("unknown symbol '" + std::string(nm) + "'");
  return static_cast<Symbol>(it - symbols_.begin());
}

bool SemigroupPresentation::is_tree_like() const {
  std::vector<bool> headed(symbols_.size(), false);
  for (const Relation& r : relations_) {
    if (r.lhs.size() != 1 || r.rhs.size() < 2) return false;
    auto s = static_cast<std::size_t>(r.lhs.front());
    if (headed[s]) return false;
    headed[s] = true;
  }
  return true;
}

const std::vector<Symbol>* SemigroupPresentation::expansion_of(Symbol s) const {
  for (const Relation& r : relations_) {
    if (r.lhs.size() == 1 && r.lhs.front() == s) return &r.rhs;
  }
  return nullptr;
}

bool SemigroupPresentation::relates(const std::vector<Symbol>& top, const std::vector<Symbol>& bottom) const {
  return std::any_of(relations_.begin(), relations_.end(), [&](const Relation& r) {
    return (r.lhs == top && r.rhs == bottom) || (r.lhs == bottom && r.rhs == top);
  });
}

}  // namespace simgroup
