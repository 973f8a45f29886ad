#include "gradedlc/lcmod.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gradedlc {
namespace {

constexpr unsigned kTruncationBumps = 4;

FinAbGroup shape(const FinAbGroup& g) {
  FinAbGroup s = g;
  s.basis_lift = IntMatrix();
  return s;
}

std::size_t class_count(std::size_t n) { return std::size_t{1} << n; }

ChainMap transpose_reversed(const ChainMap& f) {
  const std::size_t len = f.components.size();
  ChainMap d{-static_cast<int>(len) + 1, {}};
  for (std::size_t t = 0; t < len; ++t) d.components.push_back(f.components[len - 1 - t].transpose());
  return d;
}

MixedAbGroup zero_mixed(const Integer& p, unsigned n) {
  MixedAbGroup g;
  g.p = p;
  g.trunc_exponent = n;
  return g;
}

}  // namespace

LocalCohomology::LocalCohomology(MonomialIdeal ideal, ExecutionPolicy policy, bool reduce_complexes)
    : ideal_(std::move(ideal)), policy_(policy), reduce_(reduce_complexes) {
  if (ideal_.variables() > kHardVariableLimit) throw std::length_error("too many variables");
}

void LocalCohomology::ensure_pieces() {
  if (!pieces_.empty()) return;
  const std::size_t classes = class_count(variables());
  std::vector<GradedCechPiece> pieces(classes);
  std::vector<ReducedComplex> reduced(reduce_ ? classes : 0);
  std::vector<std::vector<CohomologyGroup>> coh(classes);
  for_each_index(classes, policy_, [&](std::size_t s) {
    pieces[s] = graded_cech(ideal_, static_cast<Mask>(s));
    if (reduce_) reduced[s] = reduce_units(pieces[s].complex);
    coh[s] = complex_cohomology(reduce_ ? reduced[s].complex : pieces[s].complex);
  });
  pieces_ = std::move(pieces);
  reduced_ = std::move(reduced);
  cohomology_ = std::move(coh);
}

const FreeComplex& LocalCohomology::working_complex(Mask sigma) {
  ensure_pieces();
  return reduce_ ? reduced_.at(sigma).complex : pieces_.at(sigma).complex;
}

ChainMap LocalCohomology::working_action(Mask sigma, std::size_t i) const {
  const Mask tau = sigma & ~variable_bit(i);
  const GradedCechPiece& from = pieces_[sigma];
  const GradedCechPiece& to = pieces_[tau];
  if (!reduce_) return action_map(from, to, i);
  const ReducedComplex& rs = reduced_[sigma];
  const ReducedComplex& rt = reduced_[tau];
  ChainMap f{0, {}};
  for (std::size_t k = 0; k < from.basis.size(); ++k) {
    // inclusion followed by g: rows of g_sigma moved to their place in C(tau)
    const IntMatrix& g = rs.from_reduced[k];
    IntMatrix moved(to.basis[k].size(), g.cols());
    for (std::size_t x = 0; x < from.basis[k].size(); ++x) {
      const std::size_t y = to.index_of(from.basis[k][x]);
      for (std::size_t c = 0; c < g.cols(); ++c) moved(y, c) = g(x, c);
    }
    f.components.push_back(rt.to_reduced[k] * moved);
  }
  return f;
}

IntMatrix LocalCohomology::lift_to_cech(Mask sigma, int degree, const IntMatrix& lift) const {
  if (!reduce_ || lift.cols() == 0) return lift;
  return reduced_[sigma].from_reduced[static_cast<std::size_t>(degree)] * lift;
}

const GradedCechPiece& LocalCohomology::piece(Mask sigma) {
  ensure_pieces();
  return pieces_.at(sigma);
}

void LocalCohomology::ensure_dual() {
  ensure_pieces();
  if (have_dual_) return;
  const std::size_t classes = class_count(variables());
  std::vector<std::vector<CohomologyGroup>> d(classes);
  for_each_index(classes, policy_, [&](std::size_t s) { d[s] = complex_cohomology(working_complex(static_cast<Mask>(s)).dual()); });
  dual_cohomology_ = std::move(d);
  have_dual_ = true;
}

const std::vector<WindowModule>& LocalCohomology::integral() {
  if (integral_) return *integral_;
  ensure_pieces();
  const std::size_t n = variables(), r = top_degree(), classes = class_count(n);
  // maps[sigma][i-1][j]
  std::vector<std::vector<std::vector<GroupMap>>> maps(classes, std::vector<std::vector<GroupMap>>(n));
  for_each_index(classes, policy_, [&](std::size_t s) {
    for (std::size_t i = 1; i <= n; ++i) {
      if (!(s & variable_bit(i))) continue;
      const std::size_t t = s & ~variable_bit(i);
      maps[s][i - 1] = induced_on_cohomology(working_action(static_cast<Mask>(s), i), cohomology_[s], cohomology_[t]);
    }
  });
  std::vector<WindowModule> out;
  for (std::size_t j = 0; j <= r; ++j) {
    WindowModule w = WindowModule::zero(n);
    for (std::size_t s = 0; s < classes; ++s) {
      w.groups[s] = cohomology_[s][j].group();
      w.groups[s].basis_lift = lift_to_cech(static_cast<Mask>(s), static_cast<int>(j), w.groups[s].basis_lift);
      for (std::size_t i = 1; i <= n; ++i)
        if (s & variable_bit(i)) w.actions[s][i - 1] = maps[s][i - 1][j];
    }
    out.push_back(std::move(w));
  }
  integral_ = std::move(out);
  return *integral_;
}

const std::vector<WindowModule>& LocalCohomology::modular(const Integer& l) {
  if (auto it = modular_.find(l); it != modular_.end()) return it->second;
  if (!is_prime(l)) throw std::invalid_argument(l.get_str() + " is not prime");
  ensure_pieces();
  const std::size_t n = variables(), r = top_degree(), classes = class_count(n);
  std::vector<std::vector<CohomologyGroup>> coh(classes);
  for_each_index(classes, policy_, [&](std::size_t s) { coh[s] = complex_cohomology(reduce_mod(working_complex(static_cast<Mask>(s)), l)); });
  std::vector<std::vector<std::vector<GroupMap>>> maps(classes, std::vector<std::vector<GroupMap>>(n));
  for_each_index(classes, policy_, [&](std::size_t s) {
    for (std::size_t i = 1; i <= n; ++i) {
      if (!(s & variable_bit(i))) continue;
      const std::size_t t = s & ~variable_bit(i);
      maps[s][i - 1] = induced_on_cohomology(working_action(static_cast<Mask>(s), i), coh[s], coh[t]);
    }
  });
  std::vector<WindowModule> out;
  for (std::size_t j = 0; j <= r; ++j) {
    WindowModule w = WindowModule::zero(n, Coefficients::mod_prime, l);
    for (std::size_t s = 0; s < classes; ++s) {
      w.groups[s] = coh[s][j].group();
      w.groups[s].basis_lift = lift_to_cech(static_cast<Mask>(s), static_cast<int>(j), w.groups[s].basis_lift);
      for (std::size_t i = 1; i <= n; ++i)
        if (s & variable_bit(i)) w.actions[s][i - 1] = maps[s][i - 1][j];
    }
    out.push_back(std::move(w));
  }
  return modular_.emplace(l, std::move(out)).first->second;
}

unsigned LocalCohomology::required_truncation(const Integer& p) {
  ensure_pieces();
  int worst = 0;
  for (const auto& list : cohomology_)
    for (const auto& h : list)
      for (const auto& t : h.group().torsion) worst = std::max(worst, p_valuation(t, p));
  return static_cast<unsigned>(worst) + 1;
}

std::set<Integer> LocalCohomology::bad_primes() {
  ensure_pieces();
  std::set<Integer> w;
  for (const auto& list : cohomology_)
    for (const auto& h : list)
      if (!h.group().torsion.empty())
        for (const auto& q : prime_divisors(h.group().torsion.back())) w.insert(q);
  return w;
}

const MixedFamily& LocalCohomology::plus_p(const Integer& p, std::optional<unsigned> trunc) {
  if (!is_prime(p)) throw std::invalid_argument(p.get_str() + " is not prime");
  if (trunc && *trunc == 0) throw std::invalid_argument("truncation exponent must be positive");
  const unsigned key = trunc.value_or(0);
  if (auto it = mixed_.find({p, key}); it != mixed_.end()) return it->second;
  ensure_pieces();
  const std::size_t n = variables(), r = top_degree(), classes = class_count(n);
  ensure_dual();

  MixedFamily fam;
  fam.p = p;
  fam.requested_trunc = key;
  const unsigned required = required_truncation(p);
  const unsigned start = trunc ? *trunc : required;
  const unsigned limit = std::max(start, required) + kTruncationBumps;

  std::vector<std::vector<MixedAbGroup>> exact(classes);
  bool settled = false;
  for (unsigned big_n = start; big_n <= limit && !settled; ++big_n) {
    std::vector<char> stable(classes, 1);
    for_each_index(classes, policy_, [&](std::size_t s) {
      exact[s].assign(r + 2, zero_mixed(p, big_n));
      for (std::size_t q = 1; q <= r + 1; ++q)
        exact[s][q] = MixedAbGroup::from_dual(dual_cohomology_[s][r + 1 - q].group(), p, big_n);
      const GroupComplex k = GroupComplex::from_free(working_complex(static_cast<Mask>(s)));
      try {
        const auto lo = truncated_p_cone(k, p, big_n);
        const auto hi = truncated_p_cone(k, p, big_n + 1);
        for (std::size_t q = 0; q < exact[s].size(); ++q)
          if (!(lo[q].group == exact[s][q]) || !(hi[q].group == exact[s][q])) stable[s] = 0;
      } catch (const TruncationInstability&) {
        stable[s] = 0;
      }
    });
    if (std::all_of(stable.begin(), stable.end(), [](char c) { return c != 0; })) {
      settled = true;
      fam.trunc_exponent = big_n;
    } else {
      fam.bumped = true;
      std::ostringstream note;
      note << "truncation exponent " << big_n << " unstable for p = " << p.get_str() << "; raised to " << big_n + 1;
      fam.notes.push_back(note.str());
    }
  }
  if (!settled) {
    throw TruncationInstability("no stable truncation exponent for p = " + p.get_str() + " up to " + std::to_string(limit));
  }
  const unsigned big_n = fam.trunc_exponent;

  // dual action maps, per class and variable: one list over dual degrees -r..0
  std::vector<std::vector<std::vector<GroupMap>>> maps(classes, std::vector<std::vector<GroupMap>>(n));
  for_each_index(classes, policy_, [&](std::size_t s) {
    for (std::size_t i = 1; i <= n; ++i) {
      if (!(s & variable_bit(i))) continue;
      const std::size_t t = s & ~variable_bit(i);
      maps[s][i - 1] = induced_on_cohomology(transpose_reversed(working_action(static_cast<Mask>(s), i)), dual_cohomology_[t],
                                             dual_cohomology_[s]);
    }
  });

  for (std::size_t q = 0; q <= r + 1; ++q) {
    MixedWindowModule w;
    w.n = n;
    w.p = p;
    w.trunc_exponent = big_n;
    w.groups.assign(classes, zero_mixed(p, big_n));
    w.duals.assign(classes, FinAbGroup{});
    w.dual_actions.assign(classes, std::vector<GroupMap>(n));
    // H^q(cone) is dual to H^{1-q} of the dual complex, stored at index r + 1 - q.
    const bool present = q >= 1;
    const std::size_t t = r + 1 - q;
    for (std::size_t s = 0; s < classes; ++s) {
      if (present) {
        w.duals[s] = shape(dual_cohomology_[s][t].group());
        w.groups[s] = exact[s][q];
      }
      for (std::size_t i = 1; i <= n; ++i) {
        if (!(s & variable_bit(i))) continue;
        w.dual_actions[s][i - 1] = present ? maps[s][i - 1][t] : GroupMap::zero(FinAbGroup{}, FinAbGroup{});
      }
    }
    fam.modules.push_back(std::move(w));
  }
  fam.stable = true;
  return mixed_.emplace(std::make_pair(p, key), std::move(fam)).first->second;
}

std::vector<WindowModule> local_cohomology(const MonomialIdeal& ideal, ExecutionPolicy policy) {
  LocalCohomology lc(ideal, policy);
  return lc.integral();
}

std::vector<WindowModule> local_cohomology_mod(const MonomialIdeal& ideal, const Integer& l, ExecutionPolicy policy) {
  LocalCohomology lc(ideal, policy);
  return lc.modular(l);
}

MixedFamily local_cohomology_plus_p(const MonomialIdeal& ideal, const Integer& p, std::optional<unsigned> trunc,
                                    ExecutionPolicy policy) {
  LocalCohomology lc(ideal, policy);
  return lc.plus_p(p, trunc);
}

std::set<Integer> bad_primes(const MonomialIdeal& ideal, ExecutionPolicy policy) {
  LocalCohomology lc(ideal, policy);
  return lc.bad_primes();
}

// ---------------------------------------------------------------------------

namespace {

std::string element_text(const FinAbGroup& g, std::size_t gen, const Integer& multiple) {
  std::ostringstream os;
  if (multiple != 1) os << multiple.get_str() << "*";
  os << "e" << gen << " in " << g.str();
  return os.str();
}

}  // namespace

MultPStatus mult_p_status(const WindowModule& h, const Integer& p) {
  MultPStatus st;
  for (std::size_t s = 0; s < h.groups.size(); ++s) {
    const FinAbGroup& g = h.groups[s];
    if (g.is_zero()) continue;
    const Mask sig = static_cast<Mask>(s);
    if (h.coefficients == Coefficients::mod_prime) {
      if (h.characteristic != p) continue;
      if (st.injective) st.not_injective = PWitness{sig, 0, element_text(g, 0, 1) + " is killed by p"};
      if (st.surjective) st.not_surjective = PWitness{sig, 0, element_text(g, 0, 1) + " is not in pG = 0"};
      st.injective = st.surjective = false;
      continue;
    }
    for (std::size_t k = 0; k < g.torsion.size() && st.injective; ++k) {
      if (g.torsion[k] % p != 0) continue;
      const std::size_t gen = g.free_rank + k;
      st.injective = false;
      st.not_injective = PWitness{sig, gen, element_text(g, gen, g.torsion[k] / p) + " is killed by p"};
    }
    if (st.surjective) {
      std::optional<std::size_t> gen;
      if (g.free_rank > 0) gen = 0;
      for (std::size_t k = 0; k < g.torsion.size() && !gen; ++k)
        if (g.torsion[k] % p == 0) gen = g.free_rank + k;
      if (gen) {
        st.surjective = false;
        st.not_surjective = PWitness{sig, *gen, element_text(g, *gen, 1) + " is not divisible by p"};
      }
    }
  }
  return st;
}

MultPStatus mult_p_status(const MixedWindowModule& h) {
  MultPStatus st;
  for (std::size_t s = 0; s < h.groups.size(); ++s) {
    const MixedAbGroup& g = h.groups[s];
    const Mask sig = static_cast<Mask>(s);
    if (st.injective && !g.p_injective()) {
      st.injective = false;
      st.not_injective = PWitness{sig, 0, "p-socle of " + g.str() + " is nonzero"};
    }
    if (st.surjective && !g.p_surjective()) {
      st.surjective = false;
      st.not_surjective = PWitness{sig, 0, g.str() + " has a nonzero quotient by p"};
    }
  }
  return st;
}

// ---------------------------------------------------------------------------

bool GradedPrime::contained_in(const GradedPrime& q) const {
  if (!contains(q.tau, tau)) return false;
  return characteristic == 0 || characteristic == q.characteristic;
}

std::string GradedPrime::str() const {
  std::string s = "(";
  bool first = true;
  if (characteristic != 0) {
    s += characteristic.get_str();
    first = false;
  }
  for (int i : mask_elements(tau)) {
    if (!first) s += ", ";
    s += "x" + std::to_string(i);
    first = false;
  }
  return s + ")";
}

bool SupportDescriptor::contains(const GradedPrime& q) const {
  if (only_characteristic) {
    if (q.characteristic != *only_characteristic) return false;
    auto it = special.find(q.characteristic);
    return it != special.end() && it->second.count(q.tau) > 0;
  }
  if (q.characteristic == 0) return rational.count(q.tau) > 0;
  if (auto it = special.find(q.characteristic); it != special.end()) return it->second.count(q.tau) > 0;
  return rational.count(q.tau) > 0;
}

bool SupportDescriptor::empty() const {
  if (!rational.empty()) return false;
  for (const auto& [l, set] : special)
    if (!set.empty()) return false;
  return true;
}

std::vector<GradedPrime> SupportDescriptor::listed() const {
  std::vector<GradedPrime> all;
  for (Mask t : rational) all.push_back({t, 0});
  for (const auto& [l, set] : special)
    for (Mask t : set)
      if (only_characteristic || rational.count(t) == 0) all.push_back({t, l});
  std::vector<GradedPrime> out;
  for (const auto& q : all) {
    bool minimal = true;
    for (const auto& o : all)
      if (!(o == q) && o.contained_in(q)) minimal = false;
    if (minimal) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> SupportDescriptor::dimension() const {
  std::optional<int> best;
  const int top = static_cast<int>(n) + 1;
  for (const auto& q : listed()) {
    const int d = top - static_cast<int>(q.height());
    if (!best || d > *best) best = d;
  }
  return best;
}

std::optional<int> SupportDescriptor::local_dimension(const GradedPrime& q) const {
  if (!contains(q)) return std::nullopt;
  int best = 0;
  for (Mask t = 0;; ++t) {
    if (gradedlc::contains(q.tau, t)) {
      for (const Integer& c : {Integer(0), q.characteristic}) {
        const GradedPrime p{t, c};
        if (c != 0 && c != q.characteristic) continue;
        if (p.contained_in(q) && contains(p)) best = std::max(best, static_cast<int>(q.height() - p.height()));
      }
    }
    if (t == full_mask(n)) break;
  }
  return best;
}

SupportDescriptor support(const WindowModule& h) {
  SupportDescriptor d;
  d.n = h.n;
  const std::size_t classes = class_count(h.n);
  if (h.coefficients == Coefficients::mod_prime) {
    d.only_characteristic = h.characteristic;
    auto& set = d.special[h.characteristic];
    for (std::size_t t = 0; t < classes; ++t)
      for (Mask s = static_cast<Mask>(t);; s = (s - 1) & static_cast<Mask>(t)) {
        if (!h.groups[s].is_zero()) {
          set.insert(static_cast<Mask>(t));
          break;
        }
        if (s == 0) break;
      }
    return d;
  }
  std::set<Integer> primes;
  for (const auto& g : h.groups)
    for (const auto& t : g.torsion)
      for (const auto& q : prime_divisors(t)) primes.insert(q);
  for (std::size_t t = 0; t < classes; ++t) {
    const Mask tau = static_cast<Mask>(t);
    for (Mask s = tau;; s = (s - 1) & tau) {
      const FinAbGroup& g = h.groups[s];
      if (g.free_rank > 0) d.rational.insert(tau);
      for (const auto& l : primes)
        if (g.free_rank > 0 || g.has_torsion_prime(l)) d.special[l].insert(tau);
      if (s == 0) break;
    }
  }
  for (const auto& l : primes) d.special[l];  // listed even when empty
  if (d.rational.empty() && primes.size() == 1) d.only_characteristic = *primes.begin();
  return d;
}

SupportDescriptor support(const MixedWindowModule& h) {
  SupportDescriptor d;
  d.n = h.n;
  d.only_characteristic = h.p;
  auto& set = d.special[h.p];
  const std::size_t classes = class_count(h.n);
  for (std::size_t t = 0; t < classes; ++t)
    for (Mask s = static_cast<Mask>(t);; s = (s - 1) & static_cast<Mask>(t)) {
      if (!h.groups[s].is_zero()) {
        set.insert(static_cast<Mask>(t));
        break;
      }
      if (s == 0) break;
    }
  return d;
}

namespace {

template <class Module, class Maps>
void localize_actions(const Module& h, Module& out, std::size_t i, Maps Module::*member,
                      const std::vector<FinAbGroup>& pieces) {
  const std::size_t classes = class_count(h.n);
  const Mask bit = variable_bit(i);
  for (std::size_t s = 0; s < classes; ++s) {
    const Mask sig = static_cast<Mask>(s);
    for (std::size_t j = 1; j <= h.n; ++j) {
      if (!(sig & variable_bit(j))) continue;
      auto& slot = (out.*member)[s][j - 1];
      if ((sig & bit) == 0) {
        slot = (h.*member)[s][j - 1];
      } else if (j == i) {
        slot = GroupMap::identity(pieces[s]);
      } else {
        slot = (h.*member)[sig & ~bit][j - 1];
      }
    }
  }
}

}  // namespace

WindowModule localize(const WindowModule& h, std::size_t i) {
  if (i == 0 || i > h.n) throw std::invalid_argument("localize: no such variable");
  WindowModule out = h;
  const Mask bit = variable_bit(i);
  for (std::size_t s = 0; s < h.groups.size(); ++s)
    if (s & bit) out.groups[s] = h.groups[s & ~bit];
  localize_actions(h, out, i, &WindowModule::actions, out.groups);
  return out;
}

MixedWindowModule localize(const MixedWindowModule& h, std::size_t i) {
  if (i == 0 || i > h.n) throw std::invalid_argument("localize: no such variable");
  MixedWindowModule out = h;
  const Mask bit = variable_bit(i);
  for (std::size_t s = 0; s < h.groups.size(); ++s)
    if (s & bit) {
      out.groups[s] = h.groups[s & ~bit];
      out.duals[s] = h.duals[s & ~bit];
    }
  localize_actions(h, out, i, &MixedWindowModule::dual_actions, out.duals);
  return out;
}

AssPrimeSet associated_primes(const WindowModule& h) {
  AssPrimeSet out;
  const std::size_t classes = class_count(h.n);
  for (std::size_t t = 0; t < classes; ++t) {
    const Mask tau = static_cast<Mask>(t);
    const auto coh = complex_cohomology(koszul_cube(h, tau, tau));
    const FinAbGroup& h0 = coh.front().group();
    if (h0.is_zero()) continue;
    if (h.coefficients == Coefficients::mod_prime) {
      out.primes.push_back({tau, h.characteristic});
      continue;
    }
    if (h0.free_rank > 0) out.primes.push_back({tau, 0});
    std::set<Integer> ls;
    for (const auto& o : h0.torsion)
      for (const auto& l : prime_divisors(o)) ls.insert(l);
    for (const auto& l : ls) out.primes.push_back({tau, l});
  }
  std::sort(out.primes.begin(), out.primes.end());
  return out;
}

AssPrimeSet associated_primes(const MixedWindowModule& h) {
  AssPrimeSet out;
  const std::size_t classes = class_count(h.n);
  for (std::size_t t = 0; t < classes; ++t) {
    const Mask tau = static_cast<Mask>(t);
    const auto coh = complex_cohomology(koszul_cube_dual(h, tau, tau));
    // H^0 of the cube is dual to the top-degree (0) cohomology of the dual cube.
    const MixedAbGroup h0 = MixedAbGroup::from_dual(coh.back().group(), h.p, h.trunc_exponent);
    if (h0.socle_dimension() > 0) out.primes.push_back({tau, h.p});
  }
  std::sort(out.primes.begin(), out.primes.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<FinAbGroup> full_cube_cohomology(const WindowModule& h) {
  const Mask top = full_mask(h.n);
  std::vector<FinAbGroup> out;
  for (const auto& c : complex_cohomology(koszul_cube(h, top, top))) out.push_back(shape(c.group()));
  return out;
}

IntVector p_parts(const IntVector& torsion, const Integer& p) {
  IntVector out;
  for (const auto& t : torsion) {
    Integer q = p_part(t, p);
    if (q > 1) out.push_back(q);
  }
  return out;
}

}  // namespace

WindowModule iterated_at_n(const WindowModule& h, std::size_t i) {
  const auto coh = full_cube_cohomology(h);
  WindowModule out = WindowModule::zero(h.n, h.coefficients, h.characteristic);
  const Mask top = full_mask(h.n);
  if (i < coh.size()) {
    out.groups[top] = coh[i];
    for (std::size_t v = 1; v <= h.n; ++v) out.actions[top][v - 1] = GroupMap::zero(coh[i], FinAbGroup{});
  }
  return out;
}

IteratedAtM iterated_at_m(const WindowModule& h, const Integer& p, std::size_t i) {
  if (h.coefficients != Coefficients::integers) throw std::invalid_argument("iterated_at_m: integral module required");
  if (!is_prime(p)) throw std::invalid_argument(p.get_str() + " is not prime");
  IteratedAtM it;
  it.i = i;
  it.p = p;
  const Mask top = full_mask(h.n);
  const GroupComplex cube = koszul_cube(h, top, top);
  std::vector<FinAbGroup> coh;
  for (const auto& c : complex_cohomology(cube)) coh.push_back(shape(c.group()));
  auto at = [&](std::size_t k) { return k < coh.size() ? coh[k] : FinAbGroup{}; };
  it.previous = i >= 1 ? at(i - 1) : FinAbGroup{};
  it.current = at(i);
  it.localization_injective = !it.previous.has_torsion_prime(p) && !it.current.has_torsion_prime(p);

  int worst = 0;
  for (const auto& g : coh)
    for (const auto& t : g.torsion) worst = std::max(worst, p_valuation(t, p));
  const unsigned big_n = static_cast<unsigned>(worst) + 1;

  if (it.localization_injective) {
    MixedAbGroup s;
    s.p = p;
    s.trunc_exponent = big_n;
    s.divisible_corank = it.previous.free_rank;
    s.torsion = p_parts(it.current.torsion, p);
    it.split_value = s;
  }
  if (i <= h.n + 1) {
    const auto lo = truncated_p_cone(cube, p, big_n);
    const auto hi = truncated_p_cone(cube, p, big_n + 1);
    if (!(lo[i].group == hi[i].group)) throw TruncationInstability("iterated cone unstable between N and N + 1");
    it.cone_value = lo[i].group;
  } else {
    it.cone_value = zero_mixed(p, big_n);
  }
  if (it.split_value) {
    it.paths_agree = *it.split_value == *it.cone_value;
    it.path = "split";
    it.group = *it.split_value;
  } else {
    it.path = "full-cone";
    it.group = *it.cone_value;
  }
  it.injective = it.group.p_surjective();
  if (!it.injective) {
    std::ostringstream os;
    os << "H^" << i << "_m has p-torsion quotient: " << it.group.str() << " is not p-divisible";
    it.witness = os.str();
  }
  return it;
}

MixedWindowModule iterated_module_at_m(const IteratedAtM& it, std::size_t n) {
  MixedWindowModule w;
  w.n = n;
  w.p = it.p;
  w.trunc_exponent = it.group.trunc_exponent;
  const std::size_t classes = class_count(n);
  w.groups.assign(classes, zero_mixed(it.p, w.trunc_exponent));
  w.duals.assign(classes, FinAbGroup{});
  w.dual_actions.assign(classes, std::vector<GroupMap>(n));
  const Mask top = full_mask(n);
  w.groups[top] = it.group;
  w.duals[top] = it.group.dual_presentation();
  for (std::size_t s = 0; s < classes; ++s)
    for (std::size_t v = 1; v <= n; ++v)
      if (s & variable_bit(v)) w.dual_actions[s][v - 1] = GroupMap::zero(FinAbGroup{}, w.duals[s]);
  return w;
}

MixedAbGroup iterated_at_m(const MixedWindowModule& h, std::size_t i) {
  const Mask top = full_mask(h.n);
  const auto coh = complex_cohomology(koszul_cube_dual(h, top, top));  // degrees -n..0
  for (const auto& c : coh)
    if (c.degree == -static_cast<int>(i)) return MixedAbGroup::from_dual(c.group(), h.p, h.trunc_exponent);
  return zero_mixed(h.p, h.trunc_exponent);
}

// ---------------------------------------------------------------------------

SequenceAudit audit_localization_sequence(LocalCohomology& lc, const Integer& p, std::size_t j) {
  SequenceAudit a;
  a.j = j;
  a.p = p;
  const auto& h = lc.integral();
  const auto& fam = lc.plus_p(p);
  const std::size_t classes = class_count(lc.variables());
  for (std::size_t s = 0; s < classes; ++s) {
    const FinAbGroup prev = j >= 1 && j - 1 < h.size() ? h[j - 1].groups[s] : FinAbGroup{};
    const FinAbGroup cur = j < h.size() ? h[j].groups[s] : FinAbGroup{};
    if (prev.has_torsion_prime(p)) a.left_injective = false;
    if (cur.free_rank > 0) a.right_vanishes = false;
    for (const auto& t : cur.torsion)
      if (p_part(t, p) != t) a.right_vanishes = false;
    ClassAudit c;
    c.sigma = static_cast<Mask>(s);
    c.expected = zero_mixed(p, fam.trunc_exponent);
    c.expected.divisible_corank = prev.free_rank;
    c.expected.torsion = p_parts(cur.torsion, p);
    c.actual = j < fam.modules.size() ? fam.modules[j].groups[s] : zero_mixed(p, fam.trunc_exponent);
    c.exact = c.expected == c.actual;
    if (!c.exact) a.exact = false;
    a.classes.push_back(std::move(c));
  }
  return a;
}

ReductionAudit audit_reduction_sequence(LocalCohomology& lc, const Integer& p) {
  ReductionAudit a;
  a.p = p;
  if (lc.bad_primes().count(p)) {
    a.applicable = false;
    return a;
  }
  const auto& h = lc.integral();
  const auto& hbar = lc.modular(p);
  for (std::size_t j = 0; j < h.size(); ++j)
    for (std::size_t s = 0; s < h[j].groups.size(); ++s) {
      const FinAbGroup& g = h[j].groups[s];
      std::ostringstream where;
      where << "j=" << j << " class " << mask_str(static_cast<Mask>(s));
      if (g.has_torsion_prime(p)) {
        a.holds = false;
        a.failures.push_back(where.str() + ": p is a zero divisor");
      }
      if (g.mod_p_dimension(p) != hbar[j].groups[s].generators()) {
        a.holds = false;
        a.failures.push_back(where.str() + ": cokernel of p differs from the mod-p piece");
      }
    }
  return a;
}

}  // namespace gradedlc
