#include "simgroup/abelianization.hpp"

#include "simgroup/error.hpp"

namespace simgroup {

PermGroup abelianization_kernel(int d, const PermGroup& H) {
  if (H.degree() != d) throw InputError("group degree does not match arity");
  std::vector<Perm> gens = commutator_subgroup(H).elements();
  if (d % 2 == 0) {
    for (const Perm& p : power_set(H, d - 1)) gens.push_back(p);
  } else {
    for (const Perm& p : power_set(intersection(H, PermGroup::alternating(d)), d - 1)) gens.push_back(p);
  }
  return PermGroup::closure(d, gens);
}

AbelianizationResult abelianization(int d, const PermGroup& H) {
  AbelianizationResult r{d, AbelianQuotient(H, abelianization_kernel(d, H)), {}, 1, std::nullopt, 1};
  r.invariants = r.quotient.invariants();
  if (d % 2 == 1) {
    if (!H.contains_odd()) {
      r.vprime_index = 2;
    } else {
      for (const Perm& h : H.elements()) {
        if (!h.is_even()) {
          r.z = r.quotient.multiple(h, d - 1);
          break;
        }
      }
      r.z_order = r.quotient.element_order(*r.z);
    }
  }
  return r;
}

Perm phi_hat(const TableElement& g, const AbelianizationResult& ab) {
  if (g.arity() != ab.d || !(g.group() == ab.quotient.group())) throw InputError("element does not match group");
  Perm sum = ab.quotient.zero();
  for (const Column& c : g.columns()) sum = ab.quotient.add(sum, c.h);
  if (ab.z && parity(g) == Parity::odd) sum = ab.quotient.add(sum, *ab.z);
  return sum;
}

SimplicityReport simplicity_report(int d, const PermGroup& H) {
  AbelianizationResult ab = abelianization(d, H);
  SimplicityReport r;
  r.d = d;
  r.group_order = H.order();
  r.invariants = ab.invariants;
  r.quotient_order = ab.quotient.order();
  r.vprime_index = ab.vprime_index;
  r.simple_subgroup_index = r.quotient_order * static_cast<std::size_t>(r.vprime_index);
  return r;
}

}  // namespace simgroup
