#pragma once

#include "gradedlc/cech.hpp"
#include "gradedlc/parallel.hpp"
#include "gradedlc/window.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gradedlc {

/// H^j_{I+pS}(S) for j = 0..r+1, all at one truncation exponent.
struct MixedFamily {
  Integer p = 2;
  unsigned requested_trunc = 0;   // 0: none requested
  unsigned trunc_exponent = 1;    // the exponent finally used
  bool bumped = false;
  bool stable = true;             // exact route and truncations N, N+1 agree everywhere
  std::vector<MixedWindowModule> modules;
  std::vector<std::string> notes;
};

// Shared per-ideal cache of Cech pieces and their cohomology. Everything is
// computed on first use. Not safe for concurrent use from several threads;
// its own loops run under the execution policy.
class LocalCohomology {
 public:
  /// With reduce_complexes, every Cech piece is first replaced by a smaller homotopy-equivalent complex.
  explicit LocalCohomology(MonomialIdeal ideal, ExecutionPolicy policy = {}, bool reduce_complexes = true);

  const MonomialIdeal& ideal() const { return ideal_; }
  std::size_t variables() const { return ideal_.variables(); }
  /// Number of generators r; H^j_I(S) vanishes for j > r.
  std::size_t top_degree() const { return ideal_.generators().size(); }
  const ExecutionPolicy& policy() const { return policy_; }

  const GradedCechPiece& piece(Mask sigma);
  /// The complex the cohomology is computed from: the Cech piece or its reduction.
  const FreeComplex& working_complex(Mask sigma);
  /// H^j_I(S), j = 0..r.
  const std::vector<WindowModule>& integral();
  /// H^j_I(S/lS) = H^j of the Cech complex over Z/l, j = 0..r.
  const std::vector<WindowModule>& modular(const Integer& l);
  /// Throws TruncationInstability when no exponent up to the bump limit is stable.
  const MixedFamily& plus_p(const Integer& p, std::optional<unsigned> trunc = std::nullopt);

  /// 1 + largest exponent of p in any torsion invariant of the Cech cohomology.
  unsigned required_truncation(const Integer& p);
  std::set<Integer> bad_primes();

 private:
  void ensure_pieces();
  void ensure_dual();
  /// The action x_i on the working complexes, C(sigma) -> C(sigma \ {i}).
  ChainMap working_action(Mask sigma, std::size_t i) const;
  IntMatrix lift_to_cech(Mask sigma, int degree, const IntMatrix& lift) const;

  MonomialIdeal ideal_;
  ExecutionPolicy policy_;
  bool reduce_ = true;
  std::vector<GradedCechPiece> pieces_;
  std::vector<ReducedComplex> reduced_;
  std::vector<std::vector<CohomologyGroup>> cohomology_;
  std::vector<std::vector<CohomologyGroup>> dual_cohomology_;
  bool have_dual_ = false;
  std::optional<std::vector<WindowModule>> integral_;
  std::map<Integer, std::vector<WindowModule>> modular_;
  std::map<std::pair<Integer, unsigned>, MixedFamily> mixed_;
};

std::vector<WindowModule> local_cohomology(const MonomialIdeal& ideal, ExecutionPolicy policy = {});
std::vector<WindowModule> local_cohomology_mod(const MonomialIdeal& ideal, const Integer& l, ExecutionPolicy policy = {});
MixedFamily local_cohomology_plus_p(const MonomialIdeal& ideal, const Integer& p, std::optional<unsigned> trunc = std::nullopt,
                                    ExecutionPolicy policy = {});
std::set<Integer> bad_primes(const MonomialIdeal& ideal, ExecutionPolicy policy = {});

// ---- multiplication by p ----

struct PWitness {
  Mask sigma = 0;
  std::size_t generator = 0;  // index into the piece's generators
  std::string element;        // human-readable description
};

struct MultPStatus {
  bool injective = true;
  bool surjective = true;
  std::optional<PWitness> not_injective;
  std::optional<PWitness> not_surjective;
};

MultPStatus mult_p_status(const WindowModule& h, const Integer& p);
MultPStatus mult_p_status(const MixedWindowModule& h);

// ---- graded primes, support, associated primes ----

/// P_tau = (x_i : i in tau), plus the prime integer when characteristic > 0.
struct GradedPrime {
  Mask tau = 0;
  Integer characteristic = 0;

  std::size_t height() const { return static_cast<std::size_t>(popcount(tau)) + (characteristic == 0 ? 0 : 1); }
  bool contained_in(const GradedPrime& q) const;
  std::string str() const;

  friend bool operator==(const GradedPrime& a, const GradedPrime& b) {
    return a.tau == b.tau && a.characteristic == b.characteristic;
  }
  friend bool operator<(const GradedPrime& a, const GradedPrime& b) {
    if (a.tau != b.tau) return a.tau < b.tau;
    return a.characteristic < b.characteristic;
  }
};

// Support of a graded module over S = Z[x1..xn] among the graded primes.
// (tau, 0) entries stand for characteristic 0; (tau, l) for the listed primes.
// Primes l not listed in `special` behave like characteristic 0 entries
// (which force every (tau, l)) unless the module is l'-torsion for a single l'.
struct SupportDescriptor {
  std::size_t n = 0;
  std::set<Mask> rational;
  std::map<Integer, std::set<Mask>> special;
  /// Set for modules killed by one prime: nothing lives over any other characteristic.
  std::optional<Integer> only_characteristic;

  bool contains(const GradedPrime& q) const;
  bool empty() const;
  /// Minimal members over characteristic 0 and the special primes.
  std::vector<GradedPrime> listed() const;
  /// dim Supp over S (n + 1 dimensional); nullopt for the zero module.
  std::optional<int> dimension() const;
  /// dim Supp of the localization at q.
  std::optional<int> local_dimension(const GradedPrime& q) const;
};

SupportDescriptor support(const WindowModule& h);
SupportDescriptor support(const MixedWindowModule& h);

/// Invert x_i: classes containing i take the piece of sigma \ {i}.
WindowModule localize(const WindowModule& h, std::size_t i);
MixedWindowModule localize(const MixedWindowModule& h, std::size_t i);

struct AssPrimeSet {
  std::vector<GradedPrime> primes;  // sorted, distinct
};

AssPrimeSet associated_primes(const WindowModule& h);
AssPrimeSet associated_primes(const MixedWindowModule& h);

// ---- iterated local cohomology ----

/// H^i_n(H) with n = (x1..xn): supported in the single class {1..n}.
WindowModule iterated_at_n(const WindowModule& h, std::size_t i);

struct IteratedAtM {
  std::size_t i = 0;
  Integer p = 2;
  MixedAbGroup group;                      // H^i_m(H), m = n + (p)
  FinAbGroup previous, current;            // H^{i-1}_n(H), H^i_n(H)
  bool localization_injective = true;      // no p-torsion in H^{i-1}_n(H) or H^i_n(H)
  std::string path;                        // "split" or "full-cone"
  std::optional<MixedAbGroup> split_value;
  std::optional<MixedAbGroup> cone_value;
  bool paths_agree = true;                 // meaningful when both were computed
  bool injective = false;                  // injective as an S-module: the p-surjectivity criterion
  std::optional<std::string> witness;
};

/// H must be integral. Both paths run whenever the split path is available.
IteratedAtM iterated_at_m(const WindowModule& h, const Integer& p, std::size_t i);
/// The m-supported module H^i_m(H) seen as a window module over Z(p^inf)-type pieces.
MixedWindowModule iterated_module_at_m(const IteratedAtM& it, std::size_t n);
/// H^i_m of a p-torsion module H equals H^i_n: cohomology of the full cube of H.
MixedAbGroup iterated_at_m(const MixedWindowModule& h, std::size_t i);

// ---- exactness audits ----

struct ClassAudit {
  Mask sigma = 0;
  MixedAbGroup expected;  // coker of localization on H^{j-1} plus p-torsion of H^j
  MixedAbGroup actual;    // piece of H^j_{I+pS}
  bool exact = true;
};

// ... -> H^{j-1}_I -> H^{j-1}_I[1/p] -> H^j_{I+pS} -> H^j_I -> H^j_I[1/p] -> ...
struct SequenceAudit {
  std::size_t j = 0;
  Integer p = 2;
  bool left_injective = true;     // H^{j-1}_I -> H^{j-1}_I[1/p]
  bool right_vanishes = true;     // H^j_I[1/p] = 0
  std::vector<ClassAudit> classes;
  bool exact = true;              // every class agrees
};

SequenceAudit audit_localization_sequence(LocalCohomology& lc, const Integer& p, std::size_t j);

// 0 -> H^j_I -p-> H^j_I -> H^j_I(S/pS) -> 0 for p outside W, class by class.
struct ReductionAudit {
  Integer p = 2;
  bool applicable = true;  // p not bad
  bool holds = true;
  std::vector<std::string> failures;
};

ReductionAudit audit_reduction_sequence(LocalCohomology& lc, const Integer& p);

}  // namespace gradedlc
