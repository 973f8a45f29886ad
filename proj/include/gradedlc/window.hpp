#pragma once

#include "gradedlc/mixed.hpp"
#include "gradedlc/monomial.hpp"

#include <string>
#include <vector>

namespace gradedlc {

enum class Coefficients { integers, mod_prime };

// A Z^n-graded module presented by its 2^n degree classes. The piece in
// multidegree a is G_sigma for sigma = {i : a_i < 0}; x_i acts as the identity
// unless a_i = -1, where it acts by u_{sigma,i} : G_sigma -> G_{sigma \ {i}}.
struct WindowModule {
  std::size_t n = 0;
  Coefficients coefficients = Coefficients::integers;
  Integer characteristic = 0;                  // the prime l for mod_prime
  std::vector<FinAbGroup> groups;              // indexed by the mask sigma
  std::vector<std::vector<GroupMap>> actions;  // actions[sigma][i-1], defined for i in sigma

  static WindowModule zero(std::size_t n, Coefficients c = Coefficients::integers, const Integer& l = 0);

  const FinAbGroup& group(Mask sigma) const { return groups[sigma]; }
  const GroupMap& action(Mask sigma, std::size_t i) const;
  bool is_zero() const;
  /// Shapes, well-definedness and commuting squares. Throws std::invalid_argument.
  void validate() const;
};

// Artinian p-primary window module, held through the Pontryagin duals of its
// pieces: X_sigma is a f.g. abelian group and the piece is (X_sigma (x) Z_p)^dual.
// Dual actions run the other way: X_{sigma \ {i}} -> X_sigma.
struct MixedWindowModule {
  std::size_t n = 0;
  Integer p = 2;
  unsigned trunc_exponent = 1;
  std::vector<MixedAbGroup> groups;
  std::vector<FinAbGroup> duals;
  std::vector<std::vector<GroupMap>> dual_actions;  // dual_actions[sigma][i-1]

  const GroupMap& dual_action(Mask sigma, std::size_t i) const;
  bool is_zero() const;
  void validate() const;
};

}  // namespace gradedlc
