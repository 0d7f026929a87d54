#pragma once

#include <optional>
#include <vector>

#include "simgroup/perm.hpp"
#include "simgroup/table.hpp"

namespace simgroup {

// Normal subgroup N of H with V_d(H)^ab ≅ H/N (up to the index-2 correction
// when d is odd and H lies in A_d):
//   d even: N = <[H,H], H^(d-1)>
//   d odd:  N = <[H,H], (H ∩ A_d)^(d-1)>
PermGroup abelianization_kernel(int d, const PermGroup& H);

struct AbelianizationResult {
  int d = 0;
  AbelianQuotient quotient;   // H/N
  std::vector<int> invariants;
  int vprime_index = 1;       // [V_d(H) : V_d(H)'] is 2 iff d odd and H ≤ A_d
  // (d-1)·φ(h0) for the lexicographically least odd h0, present iff d odd and H has odd elements.
  std::optional<Perm> z;
  int z_order = 1;
};

AbelianizationResult abelianization(int d, const PermGroup& H);

// Image of g in H/N: the sum of φ(h_i) over the columns, plus z when the
// stripped table is odd (d odd, H not in A_d).
Perm phi_hat(const TableElement& g, const AbelianizationResult& ab);

struct SimplicityReport {
  int d = 0;
  std::size_t group_order = 0;
  std::vector<int> invariants;
  std::size_t quotient_order = 1;
  int vprime_index = 1;
  // Index of the simple commutator subgroup [V_d(H), V_d(H)].
  std::size_t simple_subgroup_index = 1;
};

SimplicityReport simplicity_report(int d, const PermGroup& H);

}  // namespace simgroup
