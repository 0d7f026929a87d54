#pragma once

// Brute-force reference implementations used to check the library. They
// deliberately avoid the library's own algorithms.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "simgroup/perm.hpp"
#include "simgroup/table.hpp"

namespace oracle {

using simgroup::Column;
using simgroup::Perm;
using simgroup::Word;

// All bijections of 1..d as image vectors.
inline std::vector<std::vector<int>> all_bijections(int d) {
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i] - 1)];
  return out;
}

// Closure by repeated products until nothing new appears.
inline std::set<std::vector<int>> closure(int d, const std::vector<std::vector<int>>& gens) {
  std::vector<int> id(static_cast<std::size_t>(d));
  std::iota(id.begin(), id.end(), 1);
  std::set<std::vector<int>> g{id};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(g.begin(), g.end());
    for (const auto& a : cur) {
      for (const auto& b : gens) {
        if (g.insert(compose(a, b)).second) grew = true;
      }
    }
  }
  return g;
}

inline int inversions_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  }
  return inv % 2 ? -1 : 1;
}

// g(v·x) = u·h(x): find the column whose top word is a prefix of w by scanning.
inline std::optional<Word> eval(const std::vector<Column>& cols, const Word& w) {
  for (const Column& c : cols) {
    if (c.v.size() > w.size()) continue;
    bool prefix = true;
    for (std::size_t i = 0; i < c.v.size(); ++i) prefix = prefix && c.v[i] == w[i];
    if (!prefix) continue;
    Word out = c.u;
    for (std::size_t i = c.v.size(); i < w.size(); ++i) out.push_back(c.h(w[i]));
    return out;
  }
  return std::nullopt;
}

inline std::vector<Word> words(int d, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    for (const Word& w : out) {
      for (int a = 1; a <= d; ++a) {
        Word x = w;
        x.push_back(a);
        next.push_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::size_t max_depth(const std::vector<Column>& cols) {
  std::size_t m = 0;
  for (const Column& c : cols) m = std::max({m, c.v.size(), c.u.size()});
  return m;
}

// Two column lists define the same map on every word of length len.
inline bool same_map(int d, const std::vector<Column>& a, const std::vector<Column>& b, std::size_t len) {
  for (const Word& w : words(d, len)) {
    if (eval(a, w) != eval(b, w)) return false;
  }
  return true;
}

}  // namespace oracle
