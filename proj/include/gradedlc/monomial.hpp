#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gradedlc {

/// Subset of {1..n}: variable i is bit i-1.
using Mask = std::uint32_t;

constexpr std::size_t kHardVariableLimit = 24;
constexpr std::size_t kDefaultMaxVariables = 14;

inline bool contains(Mask outer, Mask inner) { return (outer & inner) == inner; }
inline Mask full_mask(std::size_t n) { return n == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n) - 1); }
inline Mask variable_bit(std::size_t i) { return Mask{1} << (i - 1); }  // i is 1-based
int popcount(Mask m);

/// "{1,2,3}" style rendering, 1-based.
std::string mask_str(Mask m);
std::vector<int> mask_elements(Mask m);  // 1-based, ascending
Mask mask_from_elements(const std::vector<int>& elements);

/// Descending lexicographic order on exponent vectors (x1 > x2 > ...).
bool lex_greater(Mask a, Mask b);

// Squarefree monomial ideal in Z[x1..xn]. Generators are minimal and sorted
// by lex_greater. No generators: the zero ideal. A single generator 0 (the
// monomial 1): the unit ideal.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  /// Minimalizes and sorts; masks must fit in n variables.
  static MonomialIdeal from_generators(std::size_t n, std::vector<Mask> generators);
  static MonomialIdeal zero(std::size_t n) { return from_generators(n, {}); }
  static MonomialIdeal unit(std::size_t n) { return from_generators(n, {0}); }

  std::size_t variables() const { return n_; }
  const std::vector<Mask>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_[0] == 0; }
  /// Whether the squarefree monomial with support m lies in the ideal.
  bool contains_monomial(Mask m) const;
  std::vector<std::vector<int>> exponent_vectors() const;
  /// Set the listed variables to 1 (localize at their product) and minimalize.
  MonomialIdeal localized_at(Mask inverted) const;
  MonomialIdeal permuted(const std::vector<int>& perm) const;  // variable i -> perm[i-1] (1-based)
  std::string str() const;

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) { return a.n_ == b.n_ && a.gens_ == b.gens_; }

 private:
  std::size_t n_ = 0;
  std::vector<Mask> gens_;
};

/// Union of the supports of the chosen generators (0-based indices into gens).
Mask lcm_support(std::span<const Mask> generators, std::span<const std::size_t> chosen);
Mask lcm_support(const MonomialIdeal& ideal, std::span<const std::size_t> chosen);

struct DegreeClass {
  Mask sigma = 0;
  friend bool operator==(const DegreeClass&, const DegreeClass&) = default;
};

/// All subsets of {1..n} ordered by size, then lexicographically. Throws std::length_error when n > max_variables.
std::vector<DegreeClass> all_degree_classes(std::size_t n, std::size_t max_variables = kDefaultMaxVariables);

struct SimplicialComplex {
  std::size_t vertices = 0;
  std::vector<Mask> facets;  // mutually non-contained; empty list = void complex

  /// Faces form the complement of the ideal: a set is a face iff its monomial is not in I.
  static SimplicialComplex from_stanley_reisner(const MonomialIdeal& ideal);
  MonomialIdeal stanley_reisner_ideal() const;
  bool is_face(Mask m) const;
  /// Largest facet size: the Krull dimension of k[Delta]; -1 for the void complex.
  int krull_dimension() const;
};

/// The ten generators of the Reisner ideal, in the customary order mu_1 = x1x2x3, ..., mu_10 = x3x4x6
/// (not the canonical order: mu_7 and mu_8 trade places there).
std::vector<Mask> reisner_generators_listed();
MonomialIdeal builtin_reisner();

struct NamedIdeal {
  std::string name;
  MonomialIdeal ideal;
  Mask inverted = 0;          // monomial made invertible (0 = none)
  std::string reference;      // independently listed value, when there is one
  bool matches_reference = true;
};

struct AuxiliaryIdeals {
  std::vector<NamedIdeal> tails;      // a_j = (mu_{j+1}, ..., mu_10), 1 <= j <= 7
  std::vector<NamedIdeal> tail_loc;   // b_j = a_j localized at mu_j
  std::vector<NamedIdeal> heads;      // c_j = (mu_1, ..., mu_{j-1}), 3 <= j <= 10
  std::vector<NamedIdeal> head_loc;   // d_j = c_j localized at mu_j, 4 <= j <= 10
};

AuxiliaryIdeals reisner_auxiliary_ideals();

struct ParsedIdeal {
  MonomialIdeal ideal;
  std::string name;
  bool radical_taken = false;
};

/// Parses {"variables": n, "generators": [[e_1..e_n], ...], "name": "..."}.
/// Exponents above 1 are replaced by 1 (radical). Throws std::invalid_argument on malformed input.
ParsedIdeal parse_ideal(const std::string& text, std::size_t max_variables = kDefaultMaxVariables);
std::string ideal_to_json(const MonomialIdeal& ideal, const std::string& name = "");

}  // namespace gradedlc
