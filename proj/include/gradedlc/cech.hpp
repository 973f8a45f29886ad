#pragma once

#include "gradedlc/complex.hpp"
#include "gradedlc/mixed.hpp"
#include "gradedlc/monomial.hpp"
#include "gradedlc/window.hpp"

#include <optional>
#include <span>
#include <vector>

namespace gradedlc {

constexpr std::size_t kMaxGenerators = 16;

/// Subset of generator indices: generator k is bit k (0-based).
using GeneratorSet = std::uint32_t;

// Graded piece of the Cech complex on a generator sequence m_1..m_r, at the
// degree class sigma. Degree-k basis: the k-subsets F with sigma inside the
// support of lcm(m_F), in increasing order of the bitmask F.
struct GradedCechPiece {
  std::size_t n = 0;
  std::vector<Mask> generators;
  Mask sigma = 0;
  std::vector<std::vector<GeneratorSet>> basis;  // basis[k], k = 0..r
  FreeComplex complex;                           // degrees 0..r

  std::size_t index_of(GeneratorSet f) const;  // position inside basis[|F|]; throws if absent
};

/// Works on any generator sequence, minimal or not.
GradedCechPiece graded_cech(std::span<const Mask> generators, std::size_t n, Mask sigma);
GradedCechPiece graded_cech(const MonomialIdeal& ideal, Mask sigma);

/// Inclusion C(sigma) -> C(sigma \ {i}); i is 1-based and must lie in sigma.
ChainMap action_map(const GradedCechPiece& from, const GradedCechPiece& to, std::size_t i);
ChainMap action_map(const MonomialIdeal& ideal, Mask sigma, std::size_t i);

/// The same complex with coefficients in Z/l.
GroupComplex reduce_mod(const FreeComplex& c, const Integer& l);

// Graded piece of the Cech complex of I + (p): the cone of C -> C[1/p].
// Cohomology is produced two independent ways: exactly through the dual
// chain complex, and by the truncated chain-level cone at N and N + 1
// (built on the unit-pivot reduction of the piece).
struct ConeWithP {
  GradedCechPiece base;
  Integer p;
  unsigned trunc_exponent = 1;
  std::vector<MixedAbGroup> groups;              // degrees 0..r+1, exact route
  std::vector<TruncatedDegree> truncated;        // at N
  std::vector<TruncatedDegree> truncated_next;   // at N + 1
  bool stable = true;                            // all three agree

  const MixedAbGroup& group(int degree) const;
};

/// Throws std::invalid_argument when p is not prime.
ConeWithP cone_with_p(const MonomialIdeal& ideal, Mask sigma, const Integer& p, unsigned trunc_exponent);
/// Exact route only: H^q(cone) is dual to H_{q-1} of Hom(C, Z), localized at p.
std::vector<MixedAbGroup> cone_groups_by_duality(const FreeComplex& c, const Integer& p, unsigned trunc_exponent);

// Koszul cohomology H^k(x_tau; M) of a window module. Only classes sigma
// containing tau can carry cohomology; there the complex is the tau-cube
// K^k = sum over A in tau, |A| = k, of G_{sigma \ A}.
struct KoszulData {
  Mask tau = 0;
  std::vector<Mask> classes;                          // every sigma containing tau, ascending
  std::vector<std::vector<FinAbGroup>> cohomology;    // [class][k], k = 0..|tau|; integral or mod-l input
  std::vector<std::vector<MixedAbGroup>> mixed;       // [class][k]; mixed input
  /// With p: dim_{F_p} H^i(p, x_tau; M) = dim coker(p | H^{i-1}) + dim ker(p | H^i), i = 0..|tau|+1.
  std::vector<std::vector<std::size_t>> with_p;
};

GroupComplex koszul_cube(const WindowModule& m, Mask tau, Mask sigma);
/// Dual of the cube of a mixed module, as a cochain complex in degrees -|tau|..0.
GroupComplex koszul_cube_dual(const MixedWindowModule& m, Mask tau, Mask sigma);

KoszulData koszul_on_module(const WindowModule& m, Mask tau, std::optional<Integer> p = std::nullopt);
KoszulData koszul_on_module(const MixedWindowModule& m, Mask tau);

}  // namespace gradedlc
