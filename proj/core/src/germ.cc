#include "simgroup/germ.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "simgroup/error.hpp"

namespace simgroup {

EventuallyPeriodicPoint normalize_point(const Word& u, const Word& v) {
  if (v.empty()) throw ContractError("period must be nonempty");
  const std::size_t n = v.size();
  std::size_t p = n;
  for (std::size_t q = 1; q < n; ++q) {
    if (n % q != 0) continue;
    bool periodic = true;
    for (std::size_t i = q; i < n && periodic; ++i) periodic = v[i] == v[i - q];
    if (periodic) {
      p = q;
      break;
    }
  }
  Word period = v.prefix(p);
  Word pre = u;
  // u·a·(w·a)^ω == u·(a·w)^ω, so absorb a trailing letter of the preperiod.
  while (!pre.empty() && pre.back() == period.back()) {
    Word rotated{period.back()};
    rotated = rotated + period.prefix(period.size() - 1);
    period = rotated;
    pre = pre.parent();
  }
  return EventuallyPeriodicPoint{pre, period};
}

PermGroup eventual_isotropy(const PermGroup& H, std::span<const int> symbols) {
  for (int a : symbols) {
    if (a < 1 || a > H.degree()) throw InputError("symbol " + std::to_string(a) + " out of range");
  }
  return pointwise_stabilizer(H, symbols);
}

namespace {

bool realises_shift(const Perm& h, const Word& v, std::size_t k) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (h(v[i]) != v[(i + k) % n]) return false;
  }
  return true;
}

std::vector<int> symbols_of(const Word& w) {
  std::vector<int> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_point(const PermGroup& H, const EventuallyPeriodicPoint& x) {
  if (x.period.empty()) throw ContractError("period must be nonempty");
  if (x.period.max_letter() > H.degree() || x.preperiod.max_letter() > H.degree()) {
    throw InputError("point uses a letter outside 1.." + std::to_string(H.degree()));
  }
}

}  // namespace

std::vector<int> phi_image_shifts(const PermGroup& H, const EventuallyPeriodicPoint& x) {
  check_point(H, x);
  std::vector<int> out;
  for (std::size_t k = 1; k <= x.period.size(); ++k) {
    for (const Perm& h : H.elements()) {
      if (realises_shift(h, x.period, k)) {
        out.push_back(static_cast<int>(k));
        break;
      }
    }
  }
  return out;
}

PhiImage phi_image_generator(const PermGroup& H, const EventuallyPeriodicPoint& x) {
  check_point(H, x);
  auto key = [](const Perm& p) { return std::make_tuple(p.moved_points().size(), p.moved_points(), p.images()); };
  for (std::size_t k = 1; k <= x.period.size(); ++k) {
    const Perm* best = nullptr;
    for (const Perm& h : H.elements()) {
      if (!realises_shift(h, x.period, k)) continue;
      if (best == nullptr || key(h) < key(*best)) best = &h;
    }
    if (best != nullptr) return PhiImage{static_cast<int>(k), *best};
  }
  // k = |v| is always realised by the identity.
  throw ContractError("no shift realised");
}

std::string to_string(GermStructure s) {
  switch (s) {
    case GermStructure::trivial:
      return "trivial";
    case GermStructure::isotropy:
      return "Hx";
    case GermStructure::cyclic:
      return "Z";
    case GermStructure::direct_product:
      return "Hx⊕Z";
    case GermStructure::semidirect_product:
      return "Hx⋊Z";
  }
  return "?";
}

bool GermDescriptor::twist_acts_trivially() const {
  Perm ti = twist.inverse();
  return std::all_of(hx.elements().begin(), hx.elements().end(),
                     [&](const Perm& c) { return twist * c * ti == c; });
}

GermStructure GermDescriptor::structure() const {
  if (ell == 0) return hx.is_trivial() ? GermStructure::trivial : GermStructure::isotropy;
  if (hx.is_trivial()) return GermStructure::cyclic;
  return twist_acts_trivially() ? GermStructure::direct_product : GermStructure::semidirect_product;
}

GermDescriptor germ_group(const PermGroup& H, const EventuallyPeriodicPoint& x) {
  check_point(H, x);
  EventuallyPeriodicPoint n = normalize_point(x.preperiod, x.period);
  std::vector<int> syms = symbols_of(n.period);
  PhiImage phi = phi_image_generator(H, n);
  GermDescriptor out{eventual_isotropy(H, syms), phi.ell, phi.witness};
  // Witnesses form a coset of H_x; prefer one that centralises H_x so that a
  // direct product is reported as such.
  if (!out.twist_acts_trivially()) {
    for (const Perm& k : out.hx.elements()) {
      GermDescriptor alt{out.hx, out.ell, phi.witness * k};
      if (alt.twist_acts_trivially()) return alt;
    }
  }
  return out;
}

GermDescriptor germ_group(const PermGroup& H, std::span<const int> symbols) {
  std::vector<int> syms(symbols.begin(), symbols.end());
  std::sort(syms.begin(), syms.end());
  syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
  if (syms.size() < 2) throw ContractError("a point with one recurring symbol is eventually periodic");
  return GermDescriptor{eventual_isotropy(H, syms), 0, Perm::identity(H.degree())};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::uint16_t>> multiplication_table(const PermGroup& G) {
  const auto& el = G.elements();
  std::vector<std::vector<std::uint16_t>> mul(el.size(), std::vector<std::uint16_t>(el.size()));
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = 0; j < el.size(); ++j) mul[i][j] = static_cast<std::uint16_t>(G.index_of(el[i] * el[j]));
  }
  return mul;
}

// Breadth-first numbering from the identity under right multiplication by
// the generators; empty if they do not generate.
std::vector<std::uint16_t> bfs_order(const std::vector<std::vector<std::uint16_t>>& mul,
                                     const std::vector<std::uint16_t>& gens) {
  const std::size_t n = mul.size();
  std::vector<std::uint16_t> order{0};  // index 0 is the identity
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::uint16_t g : gens) {
      std::uint16_t y = mul[order[i]][g];
      if (!seen[y]) {
        seen[y] = true;
        order.push_back(y);
      }
    }
  }
  if (order.size() != n) return {};
  return order;
}

bool next_tuple(std::vector<std::uint16_t>& t, std::size_t n) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < n) return true;
    t[i] = 0;
  }
  return false;
}

}  // namespace

std::string GroupLabel::short_id() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint16_t x : table) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << order << '#' << std::hex << std::setw(8) << std::setfill('0') << (h & 0xffffffffULL);
  return os.str();
}

GroupLabel isomorphism_label(const PermGroup& G) {
  const std::size_t n = G.order();
  if (n == 1) return GroupLabel{1, {0}};
  if (n > 65535) throw CapExceeded("group too large for canonical labelling");
  auto mul = multiplication_table(G);
  std::vector<std::uint16_t> best;
  for (std::size_t r = 1; best.empty(); ++r) {
    std::vector<std::uint16_t> tuple(r, 0);
    do {
      std::vector<std::uint16_t> order = bfs_order(mul, tuple);
      if (order.empty()) continue;
      std::vector<std::uint16_t> number(n);
      for (std::size_t i = 0; i < n; ++i) number[order[i]] = static_cast<std::uint16_t>(i);
      std::vector<std::uint16_t> table;
      table.reserve(n * n);
      bool worse = false;
      bool better = best.empty();
      for (std::size_t a = 0; a < n && !worse; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          std::uint16_t v = number[mul[order[a]][order[b]]];
          if (!better) {
            std::size_t pos = table.size();
            if (v > best[pos]) {
              worse = true;
              break;
            }
            if (v < best[pos]) better = true;
          }
          table.push_back(v);
        }
      }
      if (!worse && better) best = std::move(table);
    } while (next_tuple(tuple, n));
  }
  return GroupLabel{n, std::move(best)};
}

bool are_isomorphic(const PermGroup& a, const PermGroup& b) { return isomorphism_label(a) == isomorphism_label(b); }

bool find_isomorphism(const PermGroup& a, const PermGroup& b) {
  if (a.order() != b.order()) return false;
  const std::size_t n = a.order();
  std::vector<Perm> gens = a.generators();
  if (gens.empty()) return true;
  std::vector<std::size_t> gen_idx;
  for (const Perm& g : gens) gen_idx.push_back(a.index_of(g));
  auto mul_a = multiplication_table(a);
  auto mul_b = multiplication_table(b);
  std::vector<std::uint16_t> images(gens.size(), 0);
  do {
    bool orders_match = true;
    for (std::size_t i = 0; i < gens.size() && orders_match; ++i) {
      orders_match = gens[i].order() == b.elements()[images[i]].order();
    }
    if (!orders_match) continue;
    std::vector<int> phi(n, -1);
    std::vector<bool> used(n, false);
    phi[0] = 0;
    used[0] = true;
    std::vector<std::size_t> queue{0};
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q) {
      std::size_t x = queue[q];
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        std::size_t y = mul_a[x][gen_idx[i]];
        int img = mul_b[static_cast<std::size_t>(phi[x])][images[i]];
        if (phi[y] == -1) {
          if (used[static_cast<std::size_t>(img)]) {
            ok = false;
            break;
          }
          phi[y] = img;
          used[static_cast<std::size_t>(img)] = true;
          queue.push_back(y);
        } else if (phi[y] != img) {
          ok = false;
        }
      }
    }
    if (ok) return true;
  } while (next_tuple(images, n));
  return false;
}

std::string GermLabel::describe() const {
  std::string h = hx.order == 1 ? "" : "H[" + hx.short_id() + "]";
  if (!has_z) return h.empty() ? "1" : h;
  if (h.empty()) return "Z";
  bool trivial = std::all_of(twist_orbits.begin(), twist_orbits.end(), [](int s) { return s == 1; });
  if (trivial) return h + "⊕Z";
  std::ostringstream os;
  os << h << "⋊Z{";
  for (std::size_t i = 0; i < twist_orbits.size(); ++i) os << (i ? "," : "") << twist_orbits[i];
  os << "}";
  return os.str();
}

GermLabel germ_label(const GermDescriptor& g) {
  GermLabel label{isomorphism_label(g.hx), g.ell > 0, {}};
  if (g.ell > 0) {
    Perm ti = g.twist.inverse();
    std::vector<bool> seen(g.hx.order(), false);
    for (std::size_t i = 0; i < g.hx.order(); ++i) {
      if (seen[i]) continue;
      int size = 0;
      Perm c = g.hx.elements()[i];
      for (std::size_t j = g.hx.index_of(c); !seen[j]; j = g.hx.index_of(c)) {
        seen[j] = true;
        ++size;
        c = g.twist * c * ti;
      }
      label.twist_orbits.push_back(size);
    }
    std::sort(label.twist_orbits.begin(), label.twist_orbits.end());
  }
  return label;
}

std::vector<Word> primitive_necklaces(int d, std::size_t max_len) {
  // Duval's algorithm: Lyndon words in lexicographic order.
  std::vector<Word> out;
  if (max_len == 0) return out;
  std::vector<int> w{0};
  while (!w.empty()) {
    ++w.back();
    Word word;
    for (int x : w) word.push_back(x);
    out.push_back(word);
    const std::size_t m = w.size();
    while (w.size() < max_len) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == d) w.pop_back();
  }
  return out;
}

GermFingerprint germ_fingerprint(int d, const PermGroup& H, std::size_t max_period) {
  if (H.degree() != d) throw InputError("group degree does not match arity");
  GermFingerprint fp;
  for (unsigned mask = 1; mask < (1U << d); ++mask) {
    std::vector<int> syms;
    for (int a = 1; a <= d; ++a) {
      if (mask & (1U << (a - 1))) syms.push_back(a);
    }
    if (syms.size() < 2) continue;
    fp.labels.insert(germ_label(germ_group(H, syms)));
  }
  for (const Word& w : primitive_necklaces(d, max_period)) {
    fp.labels.insert(germ_label(germ_group(H, EventuallyPeriodicPoint{Word{}, w})));
  }
  return fp;
}

}  // namespace simgroup
