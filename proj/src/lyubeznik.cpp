#include "gradedlc/lyubeznik.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gradedlc {

int BassVector::top() const {
  for (std::size_t i = mu.size(); i-- > 0;)
    if (mu[i] != 0) return static_cast<int>(i);
  return -1;
}

namespace {

std::vector<FinAbGroup> cube_cohomology(const WindowModule& h, Mask tau) {
  std::vector<FinAbGroup> out;
  for (const auto& c : complex_cohomology(koszul_cube(h, tau, tau))) out.push_back(c.group());
  return out;
}

std::vector<MixedAbGroup> cube_cohomology(const MixedWindowModule& h, Mask tau) {
  const std::size_t len = static_cast<std::size_t>(popcount(tau)) + 1;
  std::vector<MixedAbGroup> out(len);
  for (auto& g : out) {
    g.p = h.p;
    g.trunc_exponent = h.trunc_exponent;
  }
  for (const auto& c : complex_cohomology(koszul_cube_dual(h, tau, tau)))
    out[static_cast<std::size_t>(-c.degree)] = MixedAbGroup::from_dual(c.group(), h.p, h.trunc_exponent);
  return out;
}

std::size_t entry(const std::vector<std::size_t>& v, std::size_t i) { return i < v.size() ? v[i] : 0; }

std::string ij(std::size_t i, std::size_t j) {
  return "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

BassVector bass_numbers(const WindowModule& h, const GradedPrime& location) {
  if (h.coefficients == Coefficients::mod_prime && location.characteristic != h.characteristic)
    throw std::invalid_argument("bass_numbers: location characteristic does not match a mod-" +
                                h.characteristic.get_str() + " module");
  BassVector b;
  b.location = location;
  const auto coh = cube_cohomology(h, location.tau);
  const Integer& l = location.characteristic;
  if (l == 0) {
    for (const auto& g : coh) b.mu.push_back(g.free_rank);
    return b;
  }
  for (std::size_t i = 0; i <= coh.size(); ++i) {
    std::size_t d = 0;
    if (i >= 1) d += coh[i - 1].mod_p_dimension(l);
    if (i < coh.size()) d += coh[i].p_torsion_rank(l);
    b.mu.push_back(d);
  }
  return b;
}

BassVector bass_numbers(const MixedWindowModule& h, const GradedPrime& location) {
  if (location.characteristic != h.p)
    throw std::invalid_argument("bass_numbers: a p-primary module only lives over p = " + h.p.get_str());
  BassVector b;
  b.location = location;
  const auto coh = cube_cohomology(h, location.tau);
  for (std::size_t i = 0; i <= coh.size(); ++i) {
    std::size_t d = 0;
    if (i >= 1) d += coh[i - 1].cokernel_dimension();
    if (i < coh.size()) d += coh[i].socle_dimension();
    b.mu.push_back(d);
  }
  return b;
}

BassVector bass_numbers_equal_char(const WindowModule& h, Mask tau) {
  if (h.coefficients != Coefficients::mod_prime) throw std::invalid_argument("bass_numbers_equal_char: mod-l module required");
  BassVector b;
  b.location = {tau, h.characteristic};
  b.equal_characteristic = true;
  for (const auto& g : cube_cohomology(h, tau)) b.mu.push_back(g.generators());
  return b;
}

BassVector bass_numbers_direct(const WindowModule& h, const GradedPrime& location) {
  const Integer& l = location.characteristic;
  if (l == 0) throw std::invalid_argument("bass_numbers_direct: characteristic-l location required");
  if (h.coefficients == Coefficients::mod_prime && l != h.characteristic)
    throw std::invalid_argument("bass_numbers_direct: location characteristic does not match the module");
  const GroupComplex k = koszul_cube(h, location.tau, location.tau);
  ChainMap times_l{k.min_degree, {}};
  for (const auto& t : k.terms) times_l.components.push_back(IntMatrix::scalar(t.size(), l));
  BassVector b;
  b.location = location;
  for (const auto& c : complex_cohomology(mapping_cone(k, k, times_l))) {
    const FinAbGroup& g = c.group();
    if (g.free_rank != 0) throw std::logic_error("Koszul cohomology on (l, x) has a free summand");
    for (const auto& t : g.torsion)
      if (t != l) throw std::logic_error("Koszul cohomology on (l, x) is not killed by l");
    b.mu.push_back(g.generators());
  }
  return b;
}

// ---------------------------------------------------------------------------

namespace {

int quotient_dimension(const MonomialIdeal& ideal) {
  const int d = SimplicialComplex::from_stanley_reisner(ideal).krull_dimension();
  if (ideal.is_unit() || d < 0) throw std::invalid_argument("the quotient ring is zero (unit ideal)");
  return d;
}

LyubeznikTable empty_table(TableKind kind, LocalCohomology& lc, const Integer& p, int d, std::size_t size) {
  LyubeznikTable t;
  t.kind = kind;
  t.p = p;
  t.d = d;
  t.n = lc.variables();
  t.ideal = lc.ideal();
  t.lambda.assign(size, std::vector<std::size_t>(size, 0));
  return t;
}

void check_shape(LyubeznikTable& t, const std::vector<std::vector<std::size_t>>& beyond, std::size_t corner) {
  for (std::size_t j = 0; j < beyond.size(); ++j)
    for (std::size_t i = 0; i < beyond[j].size(); ++i)
      if (beyond[j][i] != 0)
        t.violations.push_back("nonzero entry beyond the dimension: column " + std::to_string(t.size() + j) + ", row " +
                               std::to_string(i));
  if (t.lambda[corner][corner] == 0)
    t.violations.push_back("highest Lyubeznik number " + ij(corner, corner) + " is zero");
}

}  // namespace

LyubeznikTable standard_lyubeznik_table(LocalCohomology& lc, const Integer& p) {
  const int d = quotient_dimension(lc.ideal());
  const std::size_t n = lc.variables();
  const auto& hbar = lc.modular(p);
  LyubeznikTable t = empty_table(TableKind::standard, lc, p, d, static_cast<std::size_t>(d) + 1);
  auto column = [&](std::size_t j) {
    std::vector<std::size_t> mu;
    if (j <= n && n - j < hbar.size()) mu = bass_numbers_equal_char(hbar[n - j], full_mask(n)).mu;
    return mu;
  };
  for (std::size_t j = 0; j < t.size(); ++j) {
    const auto mu = column(j);
    for (std::size_t i = 0; i < t.size(); ++i) t.lambda[i][j] = entry(mu, i);
  }
  std::vector<std::vector<std::size_t>> beyond;
  for (std::size_t j = t.size(); j <= n; ++j) beyond.push_back(column(j));
  check_shape(t, beyond, static_cast<std::size_t>(d));
  return t;
}

LyubeznikTable mixed_lyubeznik_table(LocalCohomology& lc, const Integer& p, std::optional<unsigned> trunc) {
  const int d = quotient_dimension(lc.ideal());
  const std::size_t n = lc.variables();
  const auto& fam = lc.plus_p(p, trunc);
  LyubeznikTable t = empty_table(TableKind::mixed_quotient, lc, p, d, static_cast<std::size_t>(d) + 1);
  const GradedPrime m{full_mask(n), p};
  auto column = [&](std::size_t j) {
    std::vector<std::size_t> mu;
    const std::size_t idx = n + 1 - j;
    if (j <= n + 1 && idx < fam.modules.size()) mu = bass_numbers(fam.modules[idx], m).mu;
    return mu;
  };
  for (std::size_t j = 0; j < t.size(); ++j) {
    const auto mu = column(j);
    for (std::size_t i = 0; i < t.size(); ++i) t.lambda[i][j] = entry(mu, i);
  }
  std::vector<std::vector<std::size_t>> beyond;
  for (std::size_t j = t.size(); j <= n + 1; ++j) beyond.push_back(column(j));
  check_shape(t, beyond, static_cast<std::size_t>(d));
  return t;
}

LyubeznikTable mixed_ring_lyubeznik_table(LocalCohomology& lc, const Integer& p) {
  const int d = quotient_dimension(lc.ideal());
  const std::size_t n = lc.variables();
  const auto& h = lc.integral();
  LyubeznikTable t = empty_table(TableKind::mixed_ring, lc, p, d, static_cast<std::size_t>(d) + 2);
  const GradedPrime m{full_mask(n), p};
  auto column = [&](std::size_t j) {
    std::vector<std::size_t> mu;
    const std::size_t idx = n + 1 - j;
    if (j <= n + 1 && idx < h.size()) mu = bass_numbers(h[idx], m).mu;
    return mu;
  };
  for (std::size_t j = 0; j < t.size(); ++j) {
    const auto mu = column(j);
    for (std::size_t i = 0; i < t.size(); ++i) t.lambda[i][j] = entry(mu, i);
  }
  std::vector<std::vector<std::size_t>> beyond;
  for (std::size_t j = t.size(); j <= n + 1; ++j) beyond.push_back(column(j));
  check_shape(t, beyond, static_cast<std::size_t>(d) + 1);
  return t;
}

TableComparison compare_tables(const LyubeznikTable& standard, const LyubeznikTable& mixed, const LyubeznikTable& ring) {
  if (standard.size() != mixed.size() || ring.size() != standard.size() + 1)
    throw std::invalid_argument("compare_tables: tables of different dimensions");
  TableComparison c;
  for (std::size_t i = 0; i < standard.size(); ++i)
    for (std::size_t j = 0; j < standard.size(); ++j) {
      const std::size_t a = standard.at(i, j), b = mixed.at(i, j), r = ring.at(i + 1, j + 1);
      if (a == b && b == r) continue;
      c.agree = false;
      std::ostringstream os;
      os << "lambda" << ij(i, j) << " = " << a << ", mixed" << ij(i, j) << " = " << b << ", ring" << ij(i + 1, j + 1)
         << " = " << r;
      c.differences.push_back(os.str());
    }
  return c;
}

// ---------------------------------------------------------------------------

namespace {

Integer next_prime_outside(const std::vector<Integer>& taken) {
  Integer q = 2;
  while (true) {
    if (is_prime(q) && std::find(taken.begin(), taken.end(), q) == taken.end()) return q;
    ++q;
  }
}

template <class Module>
void finish_report(InjectiveDimensionReport& r, const SupportDescriptor& sp, std::size_t n, const Integer& p,
                   const std::set<Integer>& w, bool check_good) {
  for (const auto& b : r.bass) r.injdim_lower = std::max(r.injdim_lower, b.top());
  bool closed_points_only = true;
  for (const auto& q : sp.listed())
    if (q.tau != full_mask(n) || q.characteristic == 0) closed_points_only = false;
  r.injdim_upper = closed_points_only ? r.injdim_lower : r.injdim_lower + 1;
  r.dimsupp = sp.dimension();
  r.local_at = {full_mask(n), p};
  r.dimsupp_local = sp.local_dimension(r.local_at);
  const int local = r.dimsupp_local.value_or(-1);
  r.bound_holds = r.injdim_lower <= local;
  r.relaxed_bound_holds = r.injdim_lower <= local + 1;
  if (!check_good) return;
  for (const auto& q : r.bass) {
    if (q.location.characteristic != 0 && w.count(q.location.characteristic)) continue;
    int inj = -1;
    for (const auto& b : r.bass)
      if (b.location.contained_in(q.location)) inj = std::max(inj, b.top());
    const int dim = sp.local_dimension(q.location).value_or(-1);
    ++r.good_primes_checked;
    if (inj > dim) {
      std::ostringstream os;
      os << "at " << q.location.str() << ": injdim " << inj << " > dim Supp " << dim;
      r.good_prime_violations.push_back(os.str());
    }
  }
}

}  // namespace

InjectiveDimensionReport injective_dimension_report(const WindowModule& h, const Integer& p, const std::set<Integer>& w) {
  if (h.is_zero()) throw std::invalid_argument("injective_dimension_report: zero module");
  InjectiveDimensionReport r;
  const SupportDescriptor sp = support(h);
  const std::size_t classes = std::size_t{1} << h.n;
  std::vector<Integer> primes;
  if (h.coefficients == Coefficients::mod_prime) {
    primes.push_back(h.characteristic);
  } else {
    std::set<Integer> rel(w.begin(), w.end());
    rel.insert(p);
    for (const auto& [l, set] : sp.special) rel.insert(l);
    for (std::size_t t = 0; t < classes; ++t)
      for (const auto& g : cube_cohomology(h, static_cast<Mask>(t)))
        for (const auto& o : g.torsion)
          for (const auto& l : prime_divisors(o)) rel.insert(l);
    primes.assign(rel.begin(), rel.end());
    r.relevant_primes = primes;
    r.generic_prime = next_prime_outside(primes);
    primes.push_back(r.generic_prime);
  }
  for (std::size_t t = 0; t < classes; ++t) {
    const Mask tau = static_cast<Mask>(t);
    if (h.coefficients == Coefficients::integers && sp.contains({tau, 0})) r.bass.push_back(bass_numbers(h, {tau, 0}));
    for (const auto& l : primes)
      if (sp.contains({tau, l})) r.bass.push_back(bass_numbers(h, {tau, l}));
  }
  finish_report<WindowModule>(r, sp, h.n, p, w, h.coefficients == Coefficients::integers);
  return r;
}

InjectiveDimensionReport injective_dimension_report(const MixedWindowModule& h) {
  if (h.is_zero()) throw std::invalid_argument("injective_dimension_report: zero module");
  InjectiveDimensionReport r;
  const SupportDescriptor sp = support(h);
  r.relevant_primes = {h.p};
  for (std::size_t t = 0; t < (std::size_t{1} << h.n); ++t)
    if (sp.contains({static_cast<Mask>(t), h.p})) r.bass.push_back(bass_numbers(h, {static_cast<Mask>(t), h.p}));
  finish_report<MixedWindowModule>(r, sp, h.n, h.p, {}, false);
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool IdentityReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.status == CheckStatus::fail; });
}

namespace {

IdentityCheck named(std::string name, std::string statement) {
  IdentityCheck c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  return c;
}

struct Tally {
  IdentityCheck check;
  std::size_t mismatches = 0;

  void compare(std::size_t lhs, std::size_t rhs, const std::string& where) {
    ++check.comparisons;
    if (lhs == rhs) return;
    ++mismatches;
    if (check.witnesses.size() < 20)
      check.witnesses.push_back(where + ": " + std::to_string(lhs) + " != " + std::to_string(rhs));
  }

  IdentityCheck finish(bool hypothesis, const std::string& why_not) {
    if (!hypothesis) {
      check.status = CheckStatus::skipped;
      check.note = why_not + "; observed " + std::to_string(mismatches) + " differing entries";
    } else {
      check.status = mismatches == 0 ? CheckStatus::pass : CheckStatus::fail;
    }
    return check;
  }
};

bool p_killed(const WindowModule& h, const Integer& p) {
  if (h.coefficients == Coefficients::mod_prime) return h.characteristic == p;
  for (const auto& g : h.groups) {
    if (g.free_rank) return false;
    for (const auto& t : g.torsion)
      if (t != p) return false;
  }
  return true;
}

std::string set_str(const std::set<Integer>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? ", " : "") + x.get_str();
  return out + "}";
}

}  // namespace

IdentityReport verify_identities(LocalCohomology& lc, const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument(p.get_str() + " is not prime");
  IdentityReport rep;
  rep.p = p;
  rep.bad_primes = lc.bad_primes();
  const std::size_t n = lc.variables();
  const Mask full = full_mask(n);
  const GradedPrime m{full, p};
  const auto& h = lc.integral();
  const auto& hbar = lc.modular(p);
  const auto& fam = lc.plus_p(p);

  rep.iterated_bad_primes = rep.bad_primes;
  for (const auto& hj : h)
    for (const auto& g : cube_cohomology(hj, full))
      for (const auto& t : g.torsion)
        for (const auto& q : prime_divisors(t)) rep.iterated_bad_primes.insert(q);
  const bool good = rep.bad_primes.count(p) == 0;
  const bool iterated_good = rep.iterated_bad_primes.count(p) == 0;
  const std::string bad_note = p.get_str() + " lies in W = " + set_str(rep.bad_primes);
  const std::string iterated_note = p.get_str() + " lies in W' = " + set_str(rep.iterated_bad_primes);

  std::vector<std::vector<std::size_t>> mubar;  // equal-characteristic Bass numbers of H^j_I(S/pS) at m
  for (const auto& w : hbar) mubar.push_back(bass_numbers_equal_char(w, full).mu);
  auto mubar_at = [&](std::size_t j, long i) -> std::size_t {
    if (i < 0 || j >= mubar.size()) return 0;
    return entry(mubar[j], static_cast<std::size_t>(i));
  };

  {
    Tally t{named("ext-reduction", "dim Ext^i_T(k, H^j_I) = dim Ext^{i-1}_{T/pT}(k, H^j_I(T/pT))")};
    for (std::size_t j = 0; j < h.size(); ++j) {
      const auto mu = bass_numbers(h[j], m).mu;
      for (std::size_t i = 0; i <= n + 1; ++i)
        t.compare(entry(mu, i), mubar_at(j, static_cast<long>(i) - 1), "i=" + std::to_string(i) + " j=" + std::to_string(j));
    }
    rep.checks.push_back(t.finish(good, bad_note));
  }
  {
    Tally t{named("ext-plus-p", "dim Ext^i_T(k, H^j_{I+pT}) = dim Ext^i_{T/pT}(k, H^{j-1}_I(T/pT))")};
    for (std::size_t j = 0; j < fam.modules.size(); ++j) {
      const auto mu = bass_numbers(fam.modules[j], m).mu;
      for (std::size_t i = 0; i <= n + 1; ++i)
        t.compare(entry(mu, i), j >= 1 ? mubar_at(j - 1, static_cast<long>(i)) : 0,
                  "i=" + std::to_string(i) + " j=" + std::to_string(j));
    }
    rep.checks.push_back(t.finish(good, bad_note));
  }

  std::vector<std::vector<IteratedAtM>> iterated(h.size());
  for (std::size_t j = 0; j < h.size(); ++j)
    for (std::size_t i = 0; i <= n + 1; ++i) iterated[j].push_back(iterated_at_m(h[j], p, i));

  {
    Tally t{named("iterated-shift", "H^i_m H^j_{I+pS}(S) and H^{i+1}_m H^{j-1}_I(S) have equal socle dimension")};
    for (std::size_t j = 1; j < fam.modules.size(); ++j)
      for (std::size_t i = 0; i <= n; ++i) {
        const MixedAbGroup lhs = iterated_at_m(fam.modules[j], i);
        const MixedAbGroup rhs = j - 1 < h.size() ? iterated[j - 1][i + 1].group : MixedAbGroup{};
        const std::string where = "i=" + std::to_string(i) + " j=" + std::to_string(j);
        t.compare(lhs.socle_dimension(), rhs.socle_dimension(), where);
        if (!(lhs == rhs) && t.check.witnesses.size() < 20)
          t.check.witnesses.push_back(where + ": " + lhs.str() + " vs " + rhs.str() + " (not isomorphic)");
      }
    rep.checks.push_back(t.finish(iterated_good, iterated_note));
  }
  {
    IdentityCheck c = named("injectivity-criterion", "an m-supported H^i_m H^j_I(S) is injective iff p acts surjectively");
    bool consistent = true, all_injective = true;
    for (std::size_t j = 0; j < h.size(); ++j)
      for (std::size_t i = 0; i <= n + 1; ++i) {
        const IteratedAtM& it = iterated[j][i];
        ++c.comparisons;
        const std::string where = "H^" + std::to_string(i) + "_m H^" + std::to_string(j) + "_I";
        if (!it.paths_agree) {
          consistent = false;
          c.witnesses.push_back(where + ": split and full-cone paths disagree");
        }
        if (it.group.is_zero()) continue;
        const auto mu = bass_numbers(iterated_module_at_m(it, n), m).mu;
        bool by_bass = true;
        for (std::size_t k = 1; k < mu.size(); ++k)
          if (mu[k] != 0) by_bass = false;
        if (by_bass != it.injective) {
          consistent = false;
          c.witnesses.push_back(where + ": Bass numbers and p-surjectivity disagree");
        }
        if (!it.injective) {
          all_injective = false;
          c.witnesses.push_back(where + " = " + it.group.str() + " is not injective: " + it.witness.value_or(""));
        }
      }
    for (std::size_t j = 0; j < fam.modules.size(); ++j)
      for (std::size_t i = 0; i <= n; ++i) {
        const MixedAbGroup g = iterated_at_m(fam.modules[j], i);
        ++c.comparisons;
        if (!g.p_surjective()) {
          all_injective = false;
          c.witnesses.push_back("H^" + std::to_string(i) + "_m H^" + std::to_string(j) + "_{I+pS} = " + g.str() +
                                " is not p-divisible");
        }
      }
    if (!consistent)
      c.status = CheckStatus::fail;
    else if (iterated_good && !all_injective)
      c.status = CheckStatus::fail;
    else
      c.status = CheckStatus::pass;
    if (!iterated_good) c.note = iterated_note + "; injectivity is not expected, the criterion itself is checked";
    rep.checks.push_back(std::move(c));
  }
  {
    Tally t{named("comp-ext-sum-rule", "for pM = 0: mu^i over (p, x) = mubar^i + mubar^{i-1}")};
    std::vector<std::pair<std::string, const WindowModule*>> killed;
    for (std::size_t j = 0; j < hbar.size(); ++j) killed.push_back({"H^" + std::to_string(j) + "_I(S/pS)", &hbar[j]});
    for (std::size_t j = 0; j < h.size(); ++j)
      if (!h[j].is_zero() && p_killed(h[j], p)) killed.push_back({"H^" + std::to_string(j) + "_I(S)", &h[j]});
    for (const auto& [name, mod] : killed) {
      WindowModule as_fp = *mod;
      as_fp.coefficients = Coefficients::mod_prime;
      as_fp.characteristic = p;
      for (std::size_t tt = 0; tt < (std::size_t{1} << n); ++tt) {
        const Mask tau = static_cast<Mask>(tt);
        const auto direct = bass_numbers_direct(*mod, {tau, p}).mu;
        const auto bar = bass_numbers_equal_char(as_fp, tau).mu;
        for (std::size_t i = 0; i < direct.size(); ++i)
          t.compare(direct[i], entry(bar, i) + (i >= 1 ? entry(bar, i - 1) : 0), name + " tau=" + mask_str(tau) + " i=" + std::to_string(i));
      }
    }
    rep.checks.push_back(t.finish(true, ""));
  }
  {
    Tally t{named("euler-characteristic", "alternating sums of Koszul cochain and cohomology dimensions agree")};
    for (std::size_t j = 0; j < hbar.size(); ++j)
      for (std::size_t tt = 0; tt < (std::size_t{1} << n); ++tt) {
        const Mask tau = static_cast<Mask>(tt);
        const GroupComplex k = koszul_cube(hbar[j], tau, tau);
        long chains = 0, homology = 0;
        for (std::size_t d = 0; d < k.terms.size(); ++d) chains += (d % 2 ? -1L : 1L) * static_cast<long>(k.terms[d].size());
        const auto coh = complex_cohomology(k);
        for (std::size_t d = 0; d < coh.size(); ++d)
          homology += (d % 2 ? -1L : 1L) * static_cast<long>(coh[d].group().generators());
        ++t.check.comparisons;
        if (chains != homology) {
          ++t.mismatches;
          t.check.witnesses.push_back("j=" + std::to_string(j) + " tau=" + mask_str(tau));
        }
      }
    rep.checks.push_back(t.finish(true, ""));
  }
  if (!lc.ideal().is_unit()) {
    const auto st = standard_lyubeznik_table(lc, p);
    const auto mx = mixed_lyubeznik_table(lc, p);
    const auto rg = mixed_ring_lyubeznik_table(lc, p);
    const auto cmp = compare_tables(st, mx, rg);
    IdentityCheck c = named("lyubeznik-agreement", "lambda_{i,j}(A) = lambda~_{i,j}(A) = lambda~_{i+1,j+1}(R_Q)");
    c.comparisons = st.size() * st.size();
    c.witnesses = cmp.differences;
    if (!good) {
      c.status = CheckStatus::skipped;
      c.note = bad_note + "; observed " + std::to_string(cmp.differences.size()) + " differing entries";
    } else {
      c.status = cmp.agree ? CheckStatus::pass : CheckStatus::fail;
    }
    for (const auto* tab : {&st, &mx, &rg})
      for (const auto& v : tab->violations) {
        c.status = CheckStatus::fail;
        c.witnesses.push_back(v);
      }
    rep.checks.push_back(std::move(c));
  }
  {
    const auto audit = audit_reduction_sequence(lc, p);
    IdentityCheck c = named("reduction-sequence", "0 -> H^j_I -p-> H^j_I -> H^j_I(S/pS) -> 0 class by class");
    c.comparisons = h.size() << n;
    c.witnesses = audit.failures;
    c.status = !audit.applicable ? CheckStatus::skipped : audit.holds ? CheckStatus::pass : CheckStatus::fail;
    if (!audit.applicable) c.note = bad_note;
    rep.checks.push_back(std::move(c));
  }
  {
    IdentityCheck c = named("truncation-stability", "H^j_{I+pS} pieces agree at truncation N, N + 1 and by duality");
    c.comparisons = fam.modules.size() << n;
    c.status = fam.stable ? CheckStatus::pass : CheckStatus::fail;
    c.note = "N = " + std::to_string(fam.trunc_exponent);
    c.witnesses = fam.notes;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace gradedlc
