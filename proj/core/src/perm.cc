#include "simgroup/perm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "simgroup/error.hpp"

namespace simgroup {

Perm Perm::identity(int degree) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 1);
  return Perm(std::move(images));
}

Perm Perm::from_images(std::vector<int> images) {
  const int d = static_cast<int>(images.size());
  std::vector<bool> seen(images.size(), false);
  for (int x : images) {
    if (x < 1 || x > d || seen[static_cast<std::size_t>(x - 1)]) {
      throw InputError("not a permutation of 1.." + std::to_string(d));
    }
    seen[static_cast<std::size_t>(x - 1)] = true;
  }
  return Perm(std::move(images));
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree()) throw InputError("permutation degree mismatch");
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(rhs.images_[i]);
  return Perm(std::move(out));
}

Perm Perm::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  return Perm(std::move(out));
}

Perm Perm::pow(long long k) const {
  Perm base = k < 0 ? inverse() : *this;
  unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
  Perm result = identity(degree());
  while (e > 0) {
    if (e & 1ULL) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

int Perm::sign() const {
  std::vector<bool> seen(images_.size(), false);
  int s = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j] - 1)) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

int Perm::order() const {
  std::vector<bool> seen(images_.size(), false);
  long long ord = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j] - 1)) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return static_cast<int>(ord);
}

std::vector<int> Perm::moved_points() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

std::string Perm::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == static_cast<int>(i) + 1) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j] - 1)) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Perm commutator(const Perm& a, const Perm& b) { return a * b * a.inverse() * b.inverse(); }

// ---------------------------------------------------------------------------

PermGroup PermGroup::closure(int degree, std::span<const Perm> generators) {
  std::set<Perm> seen{Perm::identity(degree)};
  std::vector<Perm> frontier{Perm::identity(degree)};
  for (const Perm& g : generators) {
    if (g.degree() != degree) throw InputError("generator degree mismatch");
  }
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier) {
      for (const Perm& g : generators) {
        Perm y = x * g;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return PermGroup(degree, std::vector<Perm>(seen.begin(), seen.end()));
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {Perm::identity(degree)}); }

PermGroup PermGroup::symmetric(int degree) {
  std::vector<Perm> all;
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 1);
  do {
    all.push_back(Perm::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return PermGroup(degree, std::move(all));
}

PermGroup PermGroup::alternating(int degree) {
  std::vector<Perm> even;
  const PermGroup all = symmetric(degree);
  for (const Perm& p : all.elements()) {
    if (p.is_even()) even.push_back(p);
  }
  return PermGroup(degree, std::move(even));
}

PermGroup PermGroup::from_elements(int degree, std::vector<Perm> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || !elements.front().is_identity()) throw ContractError("element list lacks the identity");
  return PermGroup(degree, std::move(elements));
}

bool PermGroup::contains(const Perm& p) const { return std::binary_search(elements_.begin(), elements_.end(), p); }

std::size_t PermGroup::index_of(const Perm& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) throw ContractError("permutation " + p.to_cycle_string() + " not in group");
  return static_cast<std::size_t>(it - elements_.begin());
}

bool PermGroup::is_abelian() const {
  for (const Perm& a : elements_) {
    for (const Perm& b : elements_) {
      if (a * b != b * a) return false;
    }
  }
  return true;
}

bool PermGroup::contains_odd() const {
  return std::any_of(elements_.begin(), elements_.end(), [](const Perm& p) { return !p.is_even(); });
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (degree_ != other.degree_) return false;
  return std::all_of(elements_.begin(), elements_.end(), [&](const Perm& p) { return other.contains(p); });
}

bool PermGroup::is_normal_in(const PermGroup& other) const {
  if (!is_subgroup_of(other)) return false;
  for (const Perm& g : other.elements_) {
    Perm gi = g.inverse();
    for (const Perm& n : elements_) {
      if (!contains(g * n * gi)) return false;
    }
  }
  return true;
}

std::vector<Perm> PermGroup::generators() const {
  std::vector<Perm> gens;
  std::size_t reached = 1;
  // Prefer elements of large order; they tend to give shorter generating sets.
  std::vector<Perm> candidates(elements_.begin(), elements_.end());
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Perm& a, const Perm& b) { return a.order() > b.order(); });
  for (const Perm& p : candidates) {
    if (reached == elements_.size()) break;
    gens.push_back(p);
    std::size_t now = closure(degree_, gens).order();
    if (now == reached) {
      gens.pop_back();
    } else {
      reached = now;
    }
  }
  return gens;
}

PermGroup stabilizer(const PermGroup& group, int letter) {
  if (letter < 1 || letter > group.degree()) throw InputError("letter " + std::to_string(letter) + " out of range");
  std::vector<Perm> out;
  for (const Perm& p : group.elements()) {
    if (p(letter) == letter) out.push_back(p);
  }
  return PermGroup::from_elements(group.degree(), std::move(out));
}

PermGroup pointwise_stabilizer(const PermGroup& group, std::span<const int> letters) {
  for (int a : letters) {
    if (a < 1 || a > group.degree()) throw InputError("letter " + std::to_string(a) + " out of range");
  }
  std::vector<Perm> out;
  for (const Perm& p : group.elements()) {
    if (std::all_of(letters.begin(), letters.end(), [&](int a) { return p(a) == a; })) out.push_back(p);
  }
  return PermGroup::from_elements(group.degree(), std::move(out));
}

PermGroup intersection(const PermGroup& a, const PermGroup& b) {
  std::vector<Perm> out;
  for (const Perm& p : a.elements()) {
    if (b.contains(p)) out.push_back(p);
  }
  return PermGroup::from_elements(a.degree(), std::move(out));
}

PermGroup subgroup_generated(const PermGroup& ambient, std::span<const Perm> generators) {
  return PermGroup::closure(ambient.degree(), generators);
}

PermGroup commutator_subgroup(const PermGroup& group) {
  std::set<Perm> comms;
  for (const Perm& a : group.elements()) {
    for (const Perm& b : group.elements()) comms.insert(commutator(a, b));
  }
  std::vector<Perm> gens(comms.begin(), comms.end());
  return PermGroup::closure(group.degree(), gens);
}

std::vector<Perm> power_set(const PermGroup& group, int k) {
  std::set<Perm> out;
  for (const Perm& p : group.elements()) out.insert(p.pow(k));
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------

AbelianQuotient::AbelianQuotient(PermGroup H, PermGroup N) : H_(std::move(H)), N_(std::move(N)) {
  if (!N_.is_normal_in(H_)) throw ContractError("kernel is not a normal subgroup");
  rep_of_.resize(H_.order());
  std::set<Perm> reps;
  for (std::size_t i = 0; i < H_.order(); ++i) {
    const Perm& h = H_.elements()[i];
    Perm best = h * N_.elements().front();
    for (const Perm& n : N_.elements()) best = std::min(best, h * n);
    rep_of_[i] = best;
    reps.insert(best);
  }
  classes_.assign(reps.begin(), reps.end());
  for (const Perm& a : classes_) {
    for (const Perm& b : classes_) {
      if (canonical(a * b) != canonical(b * a)) throw ContractError("quotient is not abelian");
    }
  }
}

Perm AbelianQuotient::canonical(const Perm& h) const { return rep_of_[H_.index_of(h)]; }

Perm AbelianQuotient::add(const Perm& a, const Perm& b) const { return canonical(a * b); }

Perm AbelianQuotient::multiple(const Perm& a, long long k) const { return canonical(a.pow(k)); }

Perm AbelianQuotient::negate(const Perm& a) const { return canonical(a.inverse()); }

int AbelianQuotient::element_order(const Perm& a) const {
  Perm z = zero();
  Perm x = canonical(a);
  int k = 1;
  while (x != z) {
    x = add(x, a);
    ++k;
  }
  return k;
}

namespace {

std::vector<int> prime_factors(std::size_t n) {
  std::vector<int> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<int>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

}  // namespace

std::vector<int> AbelianQuotient::invariants() const {
  const std::size_t n = order();
  if (n == 1) return {};
  // For each prime p, |G[p^k]| determines the number of cyclic p-factors of
  // order at least p^k.
  std::vector<std::vector<int>> exponents_by_prime;  // descending exponents
  std::vector<int> primes = prime_factors(n);
  for (int p : primes) {
    std::vector<std::size_t> counts{1};
    long long pk = 1;
    while (true) {
      pk *= p;
      std::size_t c = 0;
      for (const Perm& q : classes_) {
        if (multiple(q, pk) == zero()) ++c;
      }
      if (c == counts.back()) break;
      counts.push_back(c);
    }
    std::vector<int> at_least;  // at_least[k-1] = #factors with exponent >= k
    for (std::size_t k = 1; k < counts.size(); ++k) {
      std::size_t ratio = counts[k] / counts[k - 1];
      int r = 0;
      while (ratio > 1) {
        ratio /= static_cast<std::size_t>(p);
        ++r;
      }
      at_least.push_back(r);
    }
    std::vector<int> exps;
    for (int j = 1; j <= (at_least.empty() ? 0 : at_least.front()); ++j) {
      int e = 0;
      for (int r : at_least) {
        if (r >= j) ++e;
      }
      exps.push_back(e);
    }
    exponents_by_prime.push_back(exps);
  }
  std::size_t width = 0;
  for (const auto& e : exponents_by_prime) width = std::max(width, e.size());
  std::vector<int> factors(width, 1);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto& exps = exponents_by_prime[i];
    for (std::size_t j = 0; j < exps.size(); ++j) {
      int pe = 1;
      for (int t = 0; t < exps[j]; ++t) pe *= primes[i];
      factors[j] *= pe;
    }
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

std::vector<int> quotient_abelian_invariants(const PermGroup& H, const PermGroup& N) {
  return AbelianQuotient(H, N).invariants();
}

}  // namespace simgroup
