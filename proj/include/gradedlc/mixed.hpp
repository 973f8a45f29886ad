#pragma once

#include "gradedlc/complex.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gradedlc {

class TruncationInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Z^free_rank + (finite p-group) + Z(p^inf)^divisible_corank.
//
// The Artinian part is handled through its Pontryagin dual, a finitely
// generated Z_p-module presented over Z: Z(p^inf) <-> Z_p, Z/p^k <-> Z/p^k.
struct MixedAbGroup {
  std::size_t free_rank = 0;
  IntVector torsion;
  std::size_t divisible_corank = 0;
  Integer p = 2;
  unsigned trunc_exponent = 1;

  /// Dual of X (x) Z_p for a finitely generated X: free rank becomes corank, p-parts of torsion survive.
  static MixedAbGroup from_dual(const FinAbGroup& dual, const Integer& p, unsigned trunc_exponent);
  /// Presentation of the dual, for groups with free_rank == 0.
  FinAbGroup dual_presentation() const;

  bool is_zero() const { return free_rank == 0 && torsion.empty() && divisible_corank == 0; }
  /// dim_{F_p} G[p]
  std::size_t socle_dimension() const { return divisible_corank + torsion.size(); }
  /// dim_{F_p} G/pG
  std::size_t cokernel_dimension() const { return free_rank + torsion.size(); }
  bool p_injective() const { return divisible_corank == 0 && torsion.empty(); }
  bool p_surjective() const { return free_rank == 0 && torsion.empty(); }
  /// Every finite summand has exponent below p^N, so a Z/p^N quotient cannot be mistaken for Z(p^inf).
  bool stable_at_truncation() const;

  std::string str() const;

  friend bool operator==(const MixedAbGroup& a, const MixedAbGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion && a.divisible_corank == b.divisible_corank &&
           a.p == b.p;
  }
};

// A homomorphism of Artinian p-groups carried by its dual: dual : target^dual -> source^dual.
struct MixedGroupMap {
  MixedAbGroup source;
  MixedAbGroup target;
  GroupMap dual;

  static MixedGroupMap scalar(const MixedAbGroup& g, const Integer& k);
};

struct MixedKernelCokernel {
  MixedAbGroup kernel;
  MixedAbGroup cokernel;
  bool stable = true;
};

/// Throws std::invalid_argument for groups with Z summands.
MixedKernelCokernel kernel_cokernel(const MixedGroupMap& f);

// Chain-level model of H^q(cone(K -> K[1/p])) for a complex K of f.g. groups,
// obtained as the image of H^q(Cone_N) -> H^q(Cone_2N) with Cone_M = cone(p^M : K -> K).
struct TruncatedDegree {
  int degree = 0;
  MixedAbGroup group;
  /// Image of the projection H^q(Cone_N) -> H^q(K); equals the p-primary torsion of H^q(K).
  FinAbGroup image_in_base;
};

/// Degrees K.min .. K.max + 1. Throws TruncationInstability when an invariant exceeds p^N.
std::vector<TruncatedDegree> truncated_p_cone(const GroupComplex& k, const Integer& p, unsigned trunc_exponent);

}  // namespace gradedlc
