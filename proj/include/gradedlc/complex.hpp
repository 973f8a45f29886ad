#pragma once

#include "gradedlc/abelian.hpp"

#include <vector>

namespace gradedlc {

// Cochain complex of free abelian groups C^{min} -> ... -> C^{max}.
struct FreeComplex {
  int min_degree = 0;
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> differentials;  // differentials[k] : C^{min+k} -> C^{min+k+1}

  int max_degree() const { return min_degree + static_cast<int>(ranks.size()) - 1; }
  std::size_t rank_at(int degree) const;
  /// Throws std::invalid_argument on shape errors or d o d != 0.
  void validate() const;
  /// Hom(-, Z) reindexed as a cochain complex: degree -k holds (C^k)^*.
  FreeComplex dual() const;
};

// Homotopy-equivalent complex obtained by cancelling pairs of basis elements
// joined by a +-1 entry, with the two comparison chain maps when tracked.
struct ReducedComplex {
  FreeComplex complex;
  std::vector<IntMatrix> to_reduced;    // f_k : C^k -> C'^k
  std::vector<IntMatrix> from_reduced;  // g_k : C'^k -> C^k
};

ReducedComplex reduce_units(const FreeComplex& c, bool track = true);

// Cochain complex whose terms are diagonally presented groups Z^g / diag(orders).
struct GroupComplex {
  int min_degree = 0;
  std::vector<Orders> terms;
  std::vector<IntMatrix> maps;

  static GroupComplex from_free(const FreeComplex& c);
  int max_degree() const { return min_degree + static_cast<int>(terms.size()) - 1; }
  void validate() const;
};

struct CohomologyGroup {
  int degree = 0;
  Subquotient presentation;
  const FinAbGroup& group() const { return presentation.group; }
};

/// One entry per degree, min_degree .. max_degree.
std::vector<CohomologyGroup> complex_cohomology(const FreeComplex& c);
/// When every term is an F_l-vector space (l a prime below 2^31) the default
/// runs row reduction over F_l instead of integral normal forms.
std::vector<CohomologyGroup> complex_cohomology(const GroupComplex& c, bool field_shortcut = true);

// Degreewise matrices between complexes spanning the same degree range.
struct ChainMap {
  int min_degree = 0;
  std::vector<IntMatrix> components;
};

/// Throws std::invalid_argument unless f commutes with the differentials (modulo target relations).
void check_chain_map(const GroupComplex& source, const GroupComplex& target, const ChainMap& f);

std::vector<GroupMap> induced_on_cohomology(const ChainMap& f, const std::vector<CohomologyGroup>& source,
                                            const std::vector<CohomologyGroup>& target);
std::vector<GroupMap> induced_on_cohomology(const ChainMap& f, const FreeComplex& source, const FreeComplex& target);

ChainMap compose(const ChainMap& second, const ChainMap& first);

/// Cone^q = C^q + D^{q-1}, d(c, e) = (dc, f(c) - de). Degrees min .. max+1.
GroupComplex mapping_cone(const GroupComplex& c, const GroupComplex& d, const ChainMap& f);

}  // namespace gradedlc
