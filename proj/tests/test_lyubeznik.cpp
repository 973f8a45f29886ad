#include "doctest.h"
#include "oracles_lc.hpp"

#include "gradedlc/lyubeznik.hpp"

#include <numeric>
#include <random>

using namespace gradedlc;

namespace {

Mask m(std::initializer_list<int> e) { return mask_from_elements(std::vector<int>(e)); }

using Table = std::vector<std::vector<std::size_t>>;

LocalCohomology& reisner_lc() {
  static LocalCohomology lc(builtin_reisner());
  return lc;
}

MonomialIdeal ideal_of(std::size_t n, std::vector<Mask> g) { return MonomialIdeal::from_generators(n, std::move(g)); }

MonomialIdeal three_points() { return ideal_of(3, {m({1, 2}), m({1, 3}), m({2, 3})}); }
MonomialIdeal two_planes() { return ideal_of(4, {m({1, 3}), m({1, 4}), m({2, 3}), m({2, 4})}); }
MonomialIdeal pentagon() { return ideal_of(5, {m({1, 3}), m({1, 4}), m({2, 4}), m({2, 5}), m({3, 5})}); }
MonomialIdeal cone_over_points() { return ideal_of(4, {m({1, 2}), m({1, 3}), m({2, 3})}); }

long alternating_sum(const LyubeznikTable& t) {
  long s = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) s += ((i + j) % 2 ? -1 : 1) * static_cast<long>(t.at(i, j));
  return s;
}

bool concentrated_in_column(const LyubeznikTable& t, std::size_t col) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      if (j != col && t.at(i, j) != 0) return false;
  return true;
}

// Oracle table restricted to 0..d, and zero beyond.
void require_matches_oracle(const LyubeznikTable& t, const MonomialIdeal& ideal, long p) {
  const Table ref = oracle::lyubeznik_by_nerve(ideal.generators(), ideal.variables(), p);
  const std::size_t size = t.size();
  for (std::size_t i = 0; i < ref.size(); ++i)
    for (std::size_t j = 0; j < ref.size(); ++j) {
      const std::size_t mine = i < size && j < size ? t.at(i, j) : 0;
      INFO("i=" << i << " j=" << j);
      REQUIRE(mine == ref[i][j]);
    }
}

std::vector<MonomialIdeal> random_ideals(std::uint64_t seed, int count, std::size_t max_n, std::size_t max_gens) {
  std::mt19937_64 rng(seed);
  std::vector<MonomialIdeal> out;
  while (static_cast<int>(out.size()) < count) {
    const std::size_t n = 1 + rng() % max_n;
    auto ideal = ideal_of(n, oracle::random_squarefree(rng, n, max_gens));
    if (!ideal.is_unit()) out.push_back(ideal);
  }
  return out;
}

}  // namespace

TEST_SUITE("lyubeznik") {
  TEST_CASE("bass numbers: top local cohomology of the variables") {
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<Mask> g;
      for (std::size_t i = 1; i <= n; ++i) g.push_back(variable_bit(i));
      auto h = local_cohomology(ideal_of(n, g));
      auto b = bass_numbers(h[n], GradedPrime{full_mask(n), 5});
      REQUIRE(b.mu.size() >= 2);
      CHECK(b.mu[0] == 0);
      CHECK(b.mu[1] == 1);
      for (std::size_t i = 2; i < b.mu.size(); ++i) CHECK(b.mu[i] == 0);
      CHECK(b.top() == 1);
      // over Q at the same tau the module is the injective hull: mu^0 = 1 only
      auto q = bass_numbers(h[n], GradedPrime{full_mask(n), 0});
      CHECK(q.top() == 0);
      CHECK(q.mu[0] == 1);
    }
  }

  TEST_CASE("bass numbers: reisner H^4 at m over 2") {
    const auto& h = reisner_lc().integral();
    auto b = bass_numbers(h[4], GradedPrime{full_mask(6), 2});
    REQUIRE(b.mu.size() >= 2);
    CHECK(b.mu[0] >= 1);
    CHECK(b.mu[1] >= 1);
    for (std::size_t i = 2; i < b.mu.size(); ++i) CHECK(b.mu[i] == 0);
    CHECK(b.mu[0] == 1);
    CHECK(b.mu[1] == 1);
    CHECK(b.top() == 1);
  }

  TEST_CASE("sum rule on p-killed modules") {
    auto ideals = random_ideals(61, 20, 4, 5);
    ideals.push_back(builtin_reisner());
    ideals.push_back(three_points());
    for (const auto& ideal : ideals) {
      LocalCohomology lc(ideal);
      const std::size_t n = ideal.variables();
      for (long p : {2L, 3L})
        for (const auto& h : lc.modular(p))
          for (Mask tau = 0; tau <= full_mask(n); ++tau) {
            auto mixed = bass_numbers(h, GradedPrime{tau, p});
            auto direct = bass_numbers_direct(h, GradedPrime{tau, p});
            auto bar = bass_numbers_equal_char(h, tau);
            REQUIRE(mixed.mu == direct.mu);
            REQUIRE(mixed.mu.size() <= n + 2);
            REQUIRE(bar.mu.size() <= n + 1);
            for (std::size_t i = 0; i < mixed.mu.size(); ++i) {
              const std::size_t a = i < bar.mu.size() ? bar.mu[i] : 0;
              const std::size_t b = i > 0 && i - 1 < bar.mu.size() ? bar.mu[i - 1] : 0;
              REQUIRE(mixed.mu[i] == a + b);
            }
            // Euler characteristic of the Koszul cube on x_tau at class tau
            long cochains = 0, coh = 0;
            for (Mask a = tau;; a = (a - 1) & tau) {
              cochains += (popcount(a) % 2 ? -1 : 1) * static_cast<long>(h.group(tau & ~a).generators());
              if (a == 0) break;
            }
            for (std::size_t i = 0; i < bar.mu.size(); ++i) coh += (i % 2 ? -1 : 1) * static_cast<long>(bar.mu[i]);
            REQUIRE(cochains == coh);
          }
    }
  }

  TEST_CASE("standard tables match the nerve oracle") {
    std::vector<MonomialIdeal> ideals{three_points(), two_planes(), pentagon(), cone_over_points(),
                                      ideal_of(2, {m({1, 2})})};
    for (const auto& ideal : random_ideals(62, 25, 5, 6)) ideals.push_back(ideal);
    for (const auto& ideal : ideals)
      for (long p : {2L, 3L}) {
        LocalCohomology lc(ideal);
        require_matches_oracle(standard_lyubeznik_table(lc, p), ideal, p);
      }
    for (long p : {2L, 3L}) require_matches_oracle(standard_lyubeznik_table(reisner_lc(), p), builtin_reisner(), p);
  }

  TEST_CASE("frozen tables") {
    LocalCohomology tp(three_points());
    auto t = standard_lyubeznik_table(tp, 7);
    CHECK(t.d == 1);
    CHECK(t.lambda == Table{{0, 0}, {0, 1}});

    LocalCohomology pl(two_planes());
    auto s = standard_lyubeznik_table(pl, 3);
    CHECK(s.d == 2);
    CHECK(s.lambda == Table{{0, 1, 0}, {0, 0, 0}, {0, 0, 2}});

    auto r2 = standard_lyubeznik_table(reisner_lc(), 2);
    CHECK(r2.d == 3);
    CHECK(r2.lambda == Table{{0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 1}});
    auto r3 = standard_lyubeznik_table(reisner_lc(), 3);
    CHECK(r3.lambda == Table{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}});
  }

  TEST_CASE("three tables agree at good primes") {
    std::vector<MonomialIdeal> ideals{three_points(), two_planes(), pentagon(), cone_over_points()};
    for (const auto& ideal : random_ideals(63, 12, 5, 6)) ideals.push_back(ideal);
    for (const auto& ideal : ideals) {
      LocalCohomology lc(ideal);
      const auto w = lc.bad_primes();
      for (long p : {2L, 3L, 5L}) {
        if (w.count(p)) continue;
        auto a = standard_lyubeznik_table(lc, p);
        auto b = mixed_lyubeznik_table(lc, p);
        auto c = mixed_ring_lyubeznik_table(lc, p);
        auto cmp = compare_tables(a, b, c);
        INFO(ideal_to_json(ideal) << " p=" << p);
        REQUIRE(cmp.agree);
        REQUIRE(c.size() == a.size() + 1);
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = 0; j < a.size(); ++j) {
            REQUIRE(a.at(i, j) == b.at(i, j));
            REQUIRE(a.at(i, j) == c.at(i + 1, j + 1));
          }
        for (std::size_t k = 0; k < c.size(); ++k) {
          REQUIRE(c.at(0, k) == 0);
          REQUIRE(c.at(k, 0) == 0);
        }
      }
    }
    for (long p : {3L, 5L}) {
      auto cmp = compare_tables(standard_lyubeznik_table(reisner_lc(), p), mixed_lyubeznik_table(reisner_lc(), p),
                                mixed_ring_lyubeznik_table(reisner_lc(), p));
      CHECK(cmp.agree);
    }
  }

  TEST_CASE("reisner at 2: standard and mixed tables differ") {
    auto a = standard_lyubeznik_table(reisner_lc(), 2);
    auto b = mixed_lyubeznik_table(reisner_lc(), 2);
    auto c = mixed_ring_lyubeznik_table(reisner_lc(), 2);
    auto cmp = compare_tables(a, b, c);
    CHECK_FALSE(cmp.agree);
    CHECK_FALSE(cmp.differences.empty());
    CHECK(a.lambda != b.lambda);
    // H^j_{I+2S} lives only in j = 4, so the mixed quotient table has a single column j = 3
    CHECK(concentrated_in_column(b, 3));
    CHECK(b.violations.empty());
  }

  TEST_CASE("alternating sum is one") {
    std::vector<MonomialIdeal> ideals{three_points(), two_planes(), pentagon(), cone_over_points()};
    for (const auto& ideal : random_ideals(64, 12, 5, 6)) ideals.push_back(ideal);
    for (const auto& ideal : ideals) {
      LocalCohomology lc(ideal);
      for (long p : {2L, 3L}) {
        INFO(ideal_to_json(ideal) << " p=" << p);
        REQUIRE(alternating_sum(standard_lyubeznik_table(lc, p)) == 1);
        REQUIRE(alternating_sum(mixed_lyubeznik_table(lc, p)) == 1);
        REQUIRE(alternating_sum(mixed_ring_lyubeznik_table(lc, p)) == 1);
      }
    }
    for (long p : {2L, 3L}) {
      CHECK(alternating_sum(standard_lyubeznik_table(reisner_lc(), p)) == 1);
      CHECK(alternating_sum(mixed_lyubeznik_table(reisner_lc(), p)) == 1);
      CHECK(alternating_sum(mixed_ring_lyubeznik_table(reisner_lc(), p)) == 1);
    }
  }

  TEST_CASE("highest number and vanishing columns") {
    for (const auto& ideal : random_ideals(65, 20, 5, 6)) {
      LocalCohomology lc(ideal);
      for (long p : {2L, 3L}) {
        for (const auto& t : {standard_lyubeznik_table(lc, p), mixed_lyubeznik_table(lc, p)}) {
          REQUIRE(t.violations.empty());
          REQUIRE(t.at(static_cast<std::size_t>(t.d), static_cast<std::size_t>(t.d)) >= 1);
        }
      }
    }
  }

  TEST_CASE("cohen-macaulay reductions give concentrated tables") {
    std::vector<MonomialIdeal> cm{three_points(), pentagon(), cone_over_points(), ideal_of(2, {m({1, 2})}),
                                  ideal_of(3, {m({1}), m({2, 3})})};
    for (const auto& ideal : cm) {
      LocalCohomology lc(ideal);
      for (long p : {2L, 3L, 7L}) {
        auto a = standard_lyubeznik_table(lc, p);
        auto b = mixed_lyubeznik_table(lc, p);
        const auto d = static_cast<std::size_t>(a.d);
        CHECK(concentrated_in_column(a, d));
        CHECK(concentrated_in_column(b, d));
        CHECK(a.at(d, d) == 1);
      }
    }
    auto r3 = standard_lyubeznik_table(reisner_lc(), 3);
    CHECK(concentrated_in_column(r3, 3));
    CHECK(concentrated_in_column(mixed_lyubeznik_table(reisner_lc(), 3), 3));
  }

  TEST_CASE("two planes through a point are not concentrated") {
    LocalCohomology lc(two_planes());
    auto a = standard_lyubeznik_table(lc, 5);
    CHECK_FALSE(concentrated_in_column(a, 2));
    CHECK(a.at(0, 1) == 1);
    CHECK(a.at(2, 2) == 2);
  }

  TEST_CASE("good primes give the same standard table") {
    for (const auto& ideal : random_ideals(66, 15, 5, 6)) {
      LocalCohomology lc(ideal);
      const auto w = lc.bad_primes();
      auto big = standard_lyubeznik_table(lc, 101).lambda;
      for (long p : {2L, 3L, 5L, 7L})
        if (!w.count(p)) REQUIRE(standard_lyubeznik_table(lc, p).lambda == big);
    }
  }

  TEST_CASE("tables are invariant under permuting variables") {
    std::mt19937_64 rng(67);
    for (const auto& ideal : random_ideals(68, 10, 5, 6)) {
      std::vector<int> perm(ideal.variables());
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);
      LocalCohomology a(ideal), b(ideal.permuted(perm));
      for (long p : {2L, 3L}) {
        REQUIRE(standard_lyubeznik_table(a, p).lambda == standard_lyubeznik_table(b, p).lambda);
        REQUIRE(mixed_lyubeznik_table(a, p).lambda == mixed_lyubeznik_table(b, p).lambda);
        REQUIRE(mixed_ring_lyubeznik_table(a, p).lambda == mixed_ring_lyubeznik_table(b, p).lambda);
      }
    }
  }

  TEST_CASE("unit ideal is refused") {
    LocalCohomology lc(MonomialIdeal::unit(2));
    CHECK_THROWS_AS(standard_lyubeznik_table(lc, 2), std::invalid_argument);
  }

  TEST_CASE("injective dimension: reisner H^4 at 2") {
    const auto& h = reisner_lc().integral();
    auto r = injective_dimension_report(h[4], 2, reisner_lc().bad_primes());
    CHECK(r.injdim_lower == 1);
    CHECK(r.dimsupp_local == 0);
    CHECK(r.dimsupp == 0);
    CHECK_FALSE(r.bound_holds);
    CHECK(r.relaxed_bound_holds);
  }

  TEST_CASE("injective dimension: top local cohomology of the variables") {
    auto h = local_cohomology(ideal_of(3, {m({1}), m({2}), m({3})}));
    auto r = injective_dimension_report(h[3], 2, {});
    CHECK(r.injdim_lower == 1);
    CHECK(r.dimsupp_local == 1);
    CHECK(r.bound_holds);
    CHECK(r.good_prime_violations.empty());
    CHECK_THROWS_AS(injective_dimension_report(h[0], 2, {}), std::invalid_argument);
  }

  TEST_CASE("injective dimension bound at good primes") {
    for (const auto& ideal : random_ideals(69, 15, 4, 5)) {
      LocalCohomology lc(ideal);
      const auto w = lc.bad_primes();
      for (const auto& h : lc.integral()) {
        if (h.is_zero()) continue;
        auto r = injective_dimension_report(h, 3, w);
        REQUIRE(r.good_prime_violations.empty());
        REQUIRE(r.good_primes_checked > 0);
        for (const auto& b : r.bass) REQUIRE(b.mu.size() <= ideal.variables() + 2);
      }
    }
  }

  TEST_CASE("identity checks") {
    auto r5 = verify_identities(reisner_lc(), 5);
    CHECK(r5.all_passed());
    for (const auto& c : r5.checks) CHECK(c.status == CheckStatus::pass);

    auto r2 = verify_identities(reisner_lc(), 2);
    CHECK(r2.all_passed());
    bool skipped = false, witness = false;
    for (const auto& c : r2.checks) {
      skipped = skipped || c.status == CheckStatus::skipped;
      witness = witness || !c.witnesses.empty();
    }
    CHECK(skipped);
    CHECK(witness);

    LocalCohomology x1(ideal_of(1, {m({1})}));
    for (long p : {2L, 3L}) CHECK(verify_identities(x1, p).all_passed());
  }

  TEST_CASE("identity checks on random ideals") {
    for (const auto& ideal : random_ideals(70, 12, 4, 5)) {
      LocalCohomology lc(ideal);
      for (long p : {2L, 3L}) {
        auto r = verify_identities(lc, p);
        INFO(ideal_to_json(ideal) << " p=" << p);
        for (const auto& c : r.checks) {
          INFO(c.name << ": " << c.note);
          REQUIRE(c.status != CheckStatus::fail);
        }
      }
    }
  }
}
