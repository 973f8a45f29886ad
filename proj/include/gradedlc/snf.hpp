#pragma once

#include "gradedlc/int_matrix.hpp"

namespace gradedlc {

enum class Transforms : unsigned { none = 0, left = 1, right = 2, both = 3 };

constexpr bool tracks_left(Transforms t) { return (static_cast<unsigned>(t) & 1U) != 0; }
constexpr bool tracks_right(Transforms t) { return (static_cast<unsigned>(t) & 2U) != 0; }

enum class SnfArithmetic {
  automatic,    // checked 64-bit first, GMP on overflow
  bigint_only,
};

// D = U * A * V with U, V unimodular. Inverses are carried along so callers can
// move between bases without a second solve. Unrequested transforms are left empty.
struct SnfDecomposition {
  IntMatrix source;
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix right;
  IntMatrix right_inverse;
  std::size_t rank = 0;
  bool used_bigint = false;

  /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank.
  IntVector invariants() const;
};

SnfDecomposition snf(const IntMatrix& a, Transforms track = Transforms::both,
                     SnfArithmetic arithmetic = SnfArithmetic::automatic);

}  // namespace gradedlc
