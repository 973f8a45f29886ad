#pragma once

#include "gradedlc/lcmod.hpp"

#include <string>
#include <vector>

namespace gradedlc {

struct BassVector {
  GradedPrime location;
  bool equal_characteristic = false;  // over F_l[x] instead of Z[x]
  std::vector<std::size_t> mu;        // mu^0, mu^1, ...

  /// Largest i with mu^i != 0, or -1.
  int top() const;
  bool is_zero() const { return top() < 0; }
};

/// Over S = Z[x]. Integral and mod-l modules: (tau, 0) or (tau, l); mod-l modules only at their own l.
/// Computed from the tau-cube at class tau, i.e. after inverting every variable outside tau.
BassVector bass_numbers(const WindowModule& h, const GradedPrime& location);
/// Mixed modules live over their own p only.
BassVector bass_numbers(const MixedWindowModule& h, const GradedPrime& location);
/// Over F_l[x] for a mod-l module: dimensions of the Koszul cohomology on x_tau.
BassVector bass_numbers_equal_char(const WindowModule& h, Mask tau);
/// Same numbers as bass_numbers at a characteristic-l location, from the Koszul complex on (l, x_tau) itself.
BassVector bass_numbers_direct(const WindowModule& h, const GradedPrime& location);

enum class TableKind { standard, mixed_quotient, mixed_ring };

// lambda[i][j], 0 <= i, j < size. For standard and mixed_quotient tables size = d + 1
// with d = dim A, A = (S/(I + pS)) at m; for mixed_ring, size = d + 2 (R_Q has dimension d + 1).
struct LyubeznikTable {
  TableKind kind = TableKind::standard;
  Integer p = 2;
  int d = 0;
  std::size_t n = 0;
  MonomialIdeal ideal;
  std::vector<std::vector<std::size_t>> lambda;
  std::vector<std::string> violations;  // highest-number and vanishing-column checks

  std::size_t size() const { return lambda.size(); }
  std::size_t at(std::size_t i, std::size_t j) const { return lambda.at(i).at(j); }
};

/// Throws std::invalid_argument for the unit ideal.
LyubeznikTable standard_lyubeznik_table(LocalCohomology& lc, const Integer& p);
LyubeznikTable mixed_lyubeznik_table(LocalCohomology& lc, const Integer& p, std::optional<unsigned> trunc = std::nullopt);
LyubeznikTable mixed_ring_lyubeznik_table(LocalCohomology& lc, const Integer& p);

struct TableComparison {
  bool agree = true;                 // all three coincide entrywise
  std::vector<std::string> differences;
};

/// lambda_{i,j}(A), lambda~_{i,j}(A), lambda~_{i+1,j+1}(R_Q).
TableComparison compare_tables(const LyubeznikTable& standard, const LyubeznikTable& mixed, const LyubeznikTable& ring);

struct InjectiveDimensionReport {
  std::vector<BassVector> bass;  // every graded prime in the support, one representative for generic l
  Integer generic_prime = 0;     // stands in for every prime outside the relevant set
  std::vector<Integer> relevant_primes;
  int injdim_lower = -1;         // max i with mu^i != 0 over the graded primes
  int injdim_upper = -1;         // graded bound: lower, or lower + 1 when non-graded primes can contribute
  std::optional<int> dimsupp;    // over S
  std::optional<int> dimsupp_local;  // at the location passed in, usually m = (p, x)
  GradedPrime local_at;
  bool bound_holds = true;           // injdim_lower <= dimsupp_local
  bool relaxed_bound_holds = true;    // injdim_lower <= dimsupp_local + 1
  std::vector<std::string> good_prime_violations;  // injdim_Q > dimsupp_Q at some Q not over W
  std::size_t good_primes_checked = 0;
};

/// Throws std::invalid_argument for the zero module. W is the bad-prime set used for the good-prime check.
InjectiveDimensionReport injective_dimension_report(const WindowModule& h, const Integer& p, const std::set<Integer>& w);
InjectiveDimensionReport injective_dimension_report(const MixedWindowModule& h);

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct IdentityCheck {
  std::string name;
  std::string statement;
  CheckStatus status = CheckStatus::pass;
  std::size_t comparisons = 0;
  std::string note;
  std::vector<std::string> witnesses;
};

struct IdentityReport {
  Integer p = 2;
  std::set<Integer> bad_primes;           // W for H^j_I(S)
  std::set<Integer> iterated_bad_primes;  // W including H^i_n H^j_I(S)
  std::vector<IdentityCheck> checks;
  bool all_passed() const;                // skipped checks do not count against
};

IdentityReport verify_identities(LocalCohomology& lc, const Integer& p);

}  // namespace gradedlc
