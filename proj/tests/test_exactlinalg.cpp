#include "doctest.h"
#include "oracles.hpp"

#include "gradedlc/mixed.hpp"
#include "gradedlc/snf.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>

using namespace gradedlc;

namespace {

void check_decomposition(const IntMatrix& a, const SnfDecomposition& s) {
  REQUIRE(s.left * a * s.right == s.diagonal);
  CHECK(s.left * s.left_inverse == IntMatrix::identity(a.rows()));
  CHECK(s.right * s.right_inverse == IntMatrix::identity(a.cols()));
  CHECK(abs(determinant(s.left)) == 1);
  CHECK(abs(determinant(s.right)) == 1);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) REQUIRE(s.diagonal(r, c) == 0);
  const std::size_t k = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < k; ++i) {
    CHECK(s.diagonal(i, i) >= 0);
    if (i < s.rank)
      CHECK(s.diagonal(i, i) != 0);
    else
      CHECK(s.diagonal(i, i) == 0);
    if (i + 1 < s.rank) CHECK(mpz_divisible_p(s.diagonal(i + 1, i + 1).get_mpz_t(), s.diagonal(i, i).get_mpz_t()));
  }
}

// d_1 ... d_k = gcd of all k x k minors.
Integer determinantal_divisor(const IntMatrix& a, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < a.rows(); ++r) {
      rows[pos] = r;
      pick_rows(pos + 1, r + 1);
    }
  };
  pick_cols = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      Integer det = determinant(a.pick_rows(rows).pick_columns(cols));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      return;
    }
    for (std::size_t c = start; c < a.cols(); ++c) {
      cols[pos] = c;
      pick_cols(pos + 1, c + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

FreeComplex two_term(long d) {
  FreeComplex c;
  c.ranks = {1, 1};
  c.differentials = {IntMatrix{{d}}};
  return c;
}

FreeComplex rp2_augmented_cochains() {
  const auto tri = oracle::rp2_triangles();
  std::map<std::pair<int, int>, std::size_t> edge;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) edge[{i, j}] = edge.size();
  FreeComplex c;
  c.min_degree = -1;
  c.ranks = {1, 6, 15, 10};
  IntMatrix aug(6, 1), d0(15, 6), d1(10, 15);
  for (int v = 0; v < 6; ++v) aug(v, 0) = 1;
  for (auto [e, idx] : edge) {
    d0(idx, e.first) = -1;
    d0(idx, e.second) = 1;
  }
  for (std::size_t t = 0; t < tri.size(); ++t) {
    auto [a, b, cc] = tri[t];
    d1(t, edge[{b, cc}]) += 1;
    d1(t, edge[{a, cc}]) -= 1;
    d1(t, edge[{a, b}]) += 1;
  }
  c.differentials = {aug, d0, d1};
  return c;
}

}  // namespace

TEST_SUITE("exactlinalg") {
  TEST_CASE("snf examples") {
    IntMatrix a{{2, 0}, {0, 3}};
    auto s = snf(a);
    check_decomposition(a, s);
    CHECK(s.diagonal == IntMatrix{{1, 0}, {0, 6}});

    auto id = snf(IntMatrix::identity(3));
    check_decomposition(IntMatrix::identity(3), id);
    CHECK(id.diagonal == IntMatrix::identity(3));

    auto z = snf(IntMatrix(2, 2));
    CHECK(z.rank == 0);
    CHECK(z.diagonal.is_zero());

    auto empty = snf(IntMatrix(0, 3));
    CHECK(empty.rank == 0);
    CHECK(empty.right.rows() == 3);
  }

  TEST_CASE("snf laws on 1000 random matrices") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> dim(0, 12);
    std::uniform_real_distribution<double> dens(0.15, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      IntMatrix a = oracle::random_matrix(rng, dim(rng), dim(rng), -9, 9, dens(rng));
      auto s = snf(a);
      check_decomposition(a, s);
      REQUIRE(s.rank == oracle::bareiss_rank(a));
    }
  }

  TEST_CASE("checked int64 and bigint paths agree") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      IntMatrix a = oracle::random_matrix(rng, 7, 9, -9, 9, 0.6);
      auto fast = snf(a, Transforms::both, SnfArithmetic::automatic);
      auto slow = snf(a, Transforms::both, SnfArithmetic::bigint_only);
      CHECK(fast.diagonal == slow.diagonal);
      CHECK(fast.left == slow.left);
      CHECK(fast.right == slow.right);
    }
  }

  TEST_CASE("overflowing input falls back to GMP") {
    IntMatrix a{{1L << 40, 3}, {5, 1L << 41}};
    a(0, 0) *= Integer(1L << 40);
    auto s = snf(a);
    check_decomposition(a, s);
    CHECK(s.used_bigint);
  }

  TEST_CASE("invariants match determinantal divisors") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
      IntMatrix a = oracle::random_matrix(rng, 4, 4, -6, 6, 0.7);
      auto s = snf(a, Transforms::none);
      Integer prefix = 1;
      for (std::size_t k = 1; k <= 4; ++k) {
        Integer dk = determinantal_divisor(a, k);
        if (k <= s.rank) {
          prefix *= s.diagonal(k - 1, k - 1);
          CHECK(prefix == dk);
        } else {
          CHECK(dk == 0);
        }
      }
    }
  }

  TEST_CASE("cohomology of two-term complexes") {
    auto h = complex_cohomology(two_term(2));
    CHECK(h[0].group().is_zero());
    CHECK(h[1].group() == FinAbGroup::cyclic(2));
    auto h0 = complex_cohomology(two_term(0));
    CHECK(h0[0].group() == FinAbGroup::free(1));
    CHECK(h0[1].group() == FinAbGroup::free(1));
  }

  TEST_CASE("d o d != 0 is rejected") {
    FreeComplex c;
    c.ranks = {1, 1, 1};
    c.differentials = {IntMatrix{{1}}, IntMatrix{{1}}};
    CHECK_THROWS_AS(complex_cohomology(c), std::invalid_argument);
  }

  TEST_CASE("projective plane triangulation") {
    std::map<std::pair<int, int>, int> count;
    for (auto [a, b, c] : oracle::rp2_triangles()) {
      ++count[{a, b}];
      ++count[{a, c}];
      ++count[{b, c}];
    }
    REQUIRE(count.size() == 15);
    for (auto& kv : count) REQUIRE(kv.second == 2);

    FreeComplex c = rp2_augmented_cochains();
    auto h = complex_cohomology(c);
    CHECK(h[0].group().is_zero());                       // reduced H^{-1}
    CHECK(h[1].group().is_zero());                       // reduced H^0
    CHECK(h[2].group().is_zero());                       // H^1
    CHECK(h[3].group() == FinAbGroup::cyclic(2));        // H^2
    auto hom = complex_cohomology(c.dual());             // chains, degree -k = C_k
    CHECK(hom[1].degree == -1);
    CHECK(hom[1].group() == FinAbGroup::cyclic(2));      // reduced H_1
    CHECK(hom[0].group().is_zero());                     // H_2
  }

  TEST_CASE("cocycle lifts are cocycles and generate") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      FreeComplex c = oracle::random_complex(rng);
      auto h = complex_cohomology(c);
      for (std::size_t k = 0; k < h.size(); ++k) {
        const auto& g = h[k].group();
        REQUIRE(g.basis_lift.cols() == g.generators());
        if (k < c.differentials.size()) CHECK((c.differentials[k] * g.basis_lift).is_zero());
        for (std::size_t j = 0; j < g.generators(); ++j) {
          IntVector e(g.generators());
          e[j] = 1;
          CHECK(h[k].presentation.coordinates(g.basis_lift.column_vector(j)) == e);
        }
      }
    }
  }

  TEST_CASE("cohomology is invariant under unimodular basis change") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      FreeComplex c = oracle::random_complex(rng);
      std::vector<std::pair<IntMatrix, IntMatrix>> p;
      for (auto r : c.ranks) p.push_back(oracle::random_unimodular(rng, r));
      FreeComplex d = c;
      for (std::size_t k = 0; k < c.differentials.size(); ++k)
        d.differentials[k] = p[k + 1].first * c.differentials[k] * p[k].second;
      auto hc = complex_cohomology(c), hd = complex_cohomology(d);
      for (std::size_t k = 0; k < hc.size(); ++k) CHECK(hc[k].group() == hd[k].group());

      ChainMap f{0, {}};
      for (auto& pk : p) f.components.push_back(pk.first);
      auto induced = induced_on_cohomology(f, c, d);
      for (const auto& m : induced) {
        auto kc = kernel_cokernel(m);
        CHECK(kc.kernel.is_zero());
        CHECK(kc.cokernel.is_zero());
      }
    }
  }

  TEST_CASE("induced maps: identity and multiplication by 2") {
    FreeComplex c = two_term(2);
    ChainMap id{0, {IntMatrix::identity(1), IntMatrix::identity(1)}};
    auto ind = induced_on_cohomology(id, c, c);
    CHECK(ind[1] == GroupMap::identity(FinAbGroup::cyclic(2)));
    ChainMap twice{0, {IntMatrix{{2}}, IntMatrix{{2}}}};
    CHECK(induced_on_cohomology(twice, c, c)[1].is_zero());
    ChainMap broken{0, {IntMatrix{{1}}, IntMatrix{{3}}}};
    CHECK_THROWS_AS(induced_on_cohomology(broken, c, c), std::invalid_argument);
  }

  TEST_CASE("induced maps are functorial") {
    // Chain endomorphisms of C + C of the form (M (x) 1) + (dh + hd).
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
      FreeComplex base = oracle::random_complex(rng);
      FreeComplex c;
      c.ranks = base.ranks;
      for (auto& r : c.ranks) r *= 2;
      for (auto& d : base.differentials) c.differentials.push_back(IntMatrix::blocks(d, IntMatrix(d.rows(), d.cols()), IntMatrix(d.rows(), d.cols()), d));
      auto random_endo = [&] {
        IntMatrix m = oracle::random_matrix(rng, 2, 2, -3, 3);
        std::vector<IntMatrix> h;  // h^k : C^k -> C^{k-1}
        for (std::size_t k = 0; k < c.ranks.size(); ++k)
          h.push_back(k == 0 ? IntMatrix(0, c.ranks[0]) : oracle::random_matrix(rng, c.ranks[k - 1], c.ranks[k], -2, 2));
        ChainMap f{0, {}};
        for (std::size_t k = 0; k < c.ranks.size(); ++k) {
          const std::size_t r = c.ranks[k] / 2;
          IntMatrix comp = IntMatrix::blocks(m(0, 0) * IntMatrix::identity(r), m(0, 1) * IntMatrix::identity(r),
                                             m(1, 0) * IntMatrix::identity(r), m(1, 1) * IntMatrix::identity(r));
          if (k > 0) comp = comp + c.differentials[k - 1] * h[k];
          if (k + 1 < c.ranks.size()) comp = comp + h[k + 1] * c.differentials[k];
          f.components.push_back(comp);
        }
        return f;
      };
      ChainMap f = random_endo(), g = random_endo();
      auto hf = induced_on_cohomology(f, c, c);
      auto hg = induced_on_cohomology(g, c, c);
      auto hgf = induced_on_cohomology(compose(g, f), c, c);
      for (std::size_t k = 0; k < hf.size(); ++k) CHECK(hgf[k] == compose(hg[k], hf[k]));
    }
  }

  TEST_CASE("kernel and cokernel") {
    FinAbGroup g = FinAbGroup::from_orders({0, 4, 6});
    CHECK(g.str() == "Z + Z/2 + Z/12");
    auto kc = kernel_cokernel(GroupMap::zero(g, g));
    CHECK(kc.kernel == g);
    CHECK(kc.cokernel == g);

    FinAbGroup z9 = FinAbGroup::cyclic(9);
    auto p = kernel_cokernel(GroupMap::scalar(z9, 3));
    CHECK(p.kernel == FinAbGroup::cyclic(3));
    CHECK(p.cokernel == FinAbGroup::cyclic(3));

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(0, 6);
      std::size_t a = dim(rng), b = dim(rng);
      IntMatrix m = oracle::random_matrix(rng, b, a, -4, 4, 0.5);
      GroupMap f = GroupMap::make(FinAbGroup::free(a), FinAbGroup::free(b), m);
      auto k = kernel_cokernel(f);
      auto im = image(f);
      CHECK(a == k.kernel.free_rank + im.free_rank);
      CHECK(im.free_rank == b - k.cokernel.free_rank);
      CHECK(im.free_rank == oracle::bareiss_rank(m));
    }
  }

  TEST_CASE("ill-defined maps are rejected") {
    CHECK_THROWS_AS(GroupMap::make(FinAbGroup::cyclic(2), FinAbGroup::free(1), IntMatrix{{1}}), std::invalid_argument);
    CHECK_NOTHROW(GroupMap::make(FinAbGroup::cyclic(2), FinAbGroup::cyclic(4), IntMatrix{{2}}));
  }

  TEST_CASE("change of coefficients") {
    FinAbGroup g = FinAbGroup::from_orders({0, 4});
    CHECK(change_coefficients(g, CoefficientRing::prime_field, 2).dimension == 2);
    CHECK(change_coefficients(g, CoefficientRing::rationals).dimension == 1);
    auto inv = change_coefficients(FinAbGroup::cyclic(2), CoefficientRing::p_inverted, 2);
    CHECK(inv.dimension == 0);
    CHECK(inv.surviving_torsion.empty());
    auto keep = change_coefficients(FinAbGroup::cyclic(12), CoefficientRing::p_inverted, 2);
    CHECK(keep.surviving_torsion == IntVector{3});
    CHECK_THROWS_AS(change_coefficients(g, CoefficientRing::prime_field, 4), std::invalid_argument);
  }

  TEST_CASE("mixed groups: multiplication by p on Z(p^inf)") {
    MixedAbGroup d;
    d.p = 2;
    d.divisible_corank = 1;
    d.trunc_exponent = 2;
    auto kc = kernel_cokernel(MixedGroupMap::scalar(d, 2));
    CHECK(kc.kernel.torsion == IntVector{2});
    CHECK(kc.kernel.divisible_corank == 0);
    CHECK(kc.cokernel.is_zero());
    CHECK(kc.stable);

    MixedAbGroup t;
    t.p = 3;
    t.torsion = {9};
    t.trunc_exponent = 3;
    auto kt = kernel_cokernel(MixedGroupMap::scalar(t, 3));
    CHECK(kt.kernel.torsion == IntVector{3});
    CHECK(kt.cokernel.torsion == IntVector{3});
  }

  TEST_CASE("truncated cone agrees with the dual route and is stable") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      FreeComplex c = oracle::random_complex(rng);
      auto h = complex_cohomology(c);
      auto hd = complex_cohomology(c.dual());
      for (Integer p : {Integer(2), Integer(3)}) {
        unsigned n = 1;
        for (auto& g : h)
          for (auto& t : g.group().torsion)
            if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) n = std::max(n, 1U + static_cast<unsigned>(p_valuation(t, p)));
        auto cone_n = truncated_p_cone(GroupComplex::from_free(c), p, n);
        auto cone_n1 = truncated_p_cone(GroupComplex::from_free(c), p, n + 1);
        for (std::size_t q = 0; q < cone_n.size(); ++q) {
          CHECK(cone_n[q].group == cone_n1[q].group);
          // H^q(cone) is dual to H_{q-1}(C^*) = H^{-(q-1)} of the dual complex.
          const int dual_degree = -(cone_n[q].degree - 1);
          FinAbGroup x;
          for (auto& g : hd)
            if (g.degree == dual_degree) x = g.group();
          CHECK(cone_n[q].group == MixedAbGroup::from_dual(x, p, n));
          // Projection image is the p-primary torsion of H^q(C).
          FinAbGroup tors;
          if (q < h.size())
            for (auto& t : h[q].group().torsion)
              if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) tors.torsion.push_back(p_part(t, p));
          CHECK(cone_n[q].image_in_base == tors);
        }
      }
    }
  }

  TEST_CASE("cone of Z -> Z[1/p] over the integers") {
    FreeComplex z;
    z.ranks = {1};
    auto cone = truncated_p_cone(GroupComplex::from_free(z), 2, 1);
    REQUIRE(cone.size() == 2);
    CHECK(cone[0].group.is_zero());
    CHECK(cone[1].group.divisible_corank == 1);
    CHECK(cone[1].group.torsion.empty());
  }
}
