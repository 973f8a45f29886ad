#pragma once

#include "gradedlc/int_matrix.hpp"
#include "gradedlc/snf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gradedlc {

/// Generator orders of a diagonal presentation Z^g / diag(orders); 0 marks a free generator.
using Orders = std::vector<Integer>;

/// Columns o_k * e_k for every generator of finite order.
IntMatrix relation_matrix(const Orders& orders);

// Z^free_rank + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... and every t_i > 1.
// Generators are ordered free part first, then torsion ascending.
struct FinAbGroup {
  std::size_t free_rank = 0;
  IntVector torsion;
  /// Optional: column k is a representative of generator k in some ambient lattice.
  IntMatrix basis_lift;

  static FinAbGroup free(std::size_t rank);
  static FinAbGroup cyclic(const Integer& order);
  /// Canonical form of the group presented by arbitrary generator orders.
  static FinAbGroup from_orders(const Orders& orders);

  std::size_t generators() const { return free_rank + torsion.size(); }
  Integer order_of(std::size_t generator) const;
  Orders orders() const;
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool has_torsion_prime(const Integer& p) const;
  /// dim over F_p of G/pG.
  std::size_t mod_p_dimension(const Integer& p) const;
  /// dim over F_p of the p-torsion G[p].
  std::size_t p_torsion_rank(const Integer& p) const;

  std::string str() const;

  /// Isomorphism type only; lifts are ignored.
  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

/// Reduces column entries modulo the orders of the corresponding generators.
void reduce_modulo(IntMatrix& m, const Orders& orders);
void reduce_modulo(IntVector& v, const Orders& orders);

// Homomorphism on chosen generators: column k is the image of source generator k.
struct GroupMap {
  FinAbGroup source;
  FinAbGroup target;
  IntMatrix matrix;

  static GroupMap make(FinAbGroup source, FinAbGroup target, IntMatrix matrix);
  static GroupMap identity(const FinAbGroup& g);
  static GroupMap scalar(const FinAbGroup& g, const Integer& k);
  static GroupMap zero(const FinAbGroup& source, const FinAbGroup& target);

  bool is_zero() const { return matrix.is_zero(); }
  IntVector apply(const IntVector& x) const;

  friend bool operator==(const GroupMap& a, const GroupMap& b) {
    return a.source == b.source && a.target == b.target && a.matrix == b.matrix;
  }
};

GroupMap compose(const GroupMap& second, const GroupMap& first);

// A saturated-or-not sublattice L of Z^m with a basis and a coordinate rule:
// for x in L, coords(x) = (coordinate_rows * x) / divisors componentwise.
struct LatticeBasis {
  std::size_t ambient = 0;
  IntMatrix basis;
  IntMatrix coordinate_rows;
  IntVector divisors;
  IntMatrix complement_rows;

  static LatticeBasis span(const IntMatrix& generators);
  static LatticeBasis nullspace(const IntMatrix& a);
  static LatticeBasis whole(std::size_t m);

  std::size_t rank() const { return basis.cols(); }
  std::optional<IntVector> coordinates(const IntVector& x) const;
};

// L / N for lattices N <= L <= Z^m, in canonical FinAbGroup form.
struct Subquotient {
  FinAbGroup group;
  LatticeBasis outer;
  IntMatrix reexpress;  // generators x rank(L)

  /// Throws if x is not in L.
  IntVector coordinates(const IntVector& x) const;
};

Subquotient make_subquotient(LatticeBasis outer, const IntMatrix& inner_generators);

/// {v : m v lies in the relation lattice of target_orders}.
LatticeBasis preimage_lattice(const IntMatrix& m, const Orders& target_orders);

struct KernelCokernel {
  FinAbGroup kernel;     // basis_lift: source generator coordinates
  FinAbGroup cokernel;   // basis_lift: target generator coordinates
};

KernelCokernel kernel_cokernel(const GroupMap& f);
/// Image as a subgroup of the target (basis_lift in target coordinates).
FinAbGroup image(const GroupMap& f);

enum class CoefficientRing { rationals, prime_field, p_inverted };

struct CoefficientChange {
  CoefficientRing ring;
  Integer prime;           // unused for rationals
  std::size_t dimension;   // rank / F_l-dimension / rank of free part after inverting p
  IntVector surviving_torsion;  // only for p_inverted
};

/// Throws std::invalid_argument when a prime is required and not prime.
CoefficientChange change_coefficients(const FinAbGroup& g, CoefficientRing ring, const Integer& prime = 0);

}  // namespace gradedlc
