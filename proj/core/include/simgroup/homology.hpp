#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace simgroup {

// Clique complex of a simple graph.
struct FlagComplex {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

FlagComplex cycle_graph(std::size_t n);

// All cliques with `size` vertices, each sorted, in lexicographic order.
// Throws CapExceeded beyond `cap` cliques.
std::vector<std::vector<std::size_t>> cliques(const FlagComplex& c, std::size_t size, std::size_t cap);

std::size_t count_components(const FlagComplex& c);

struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<long long> torsion;  // elementary divisors > 1
  bool exact = true;               // false if torsion could not be certified

  bool vanishes() const { return rank == 0 && torsion.empty(); }
};

// Reduced integral homology in degrees 0..max_degree.
std::vector<HomologyGroup> reduced_homology(const FlagComplex& c, int max_degree, std::size_t simplex_cap = 2000000);

enum class Verdict { pass, fail, skipped };
std::string to_string(Verdict v);

struct ConnectivityResult {
  int k = -1;
  Verdict verdict = Verdict::skipped;
  std::vector<HomologyGroup> homology;
  std::string detail;
};

// k = -1: nonempty. k = 0: connected. k ≥ 1: nonempty and reduced
// homology vanishes through degree k.
ConnectivityResult connectivity_check(const FlagComplex& c, int k, std::size_t simplex_cap = 2000000);

}  // namespace simgroup
