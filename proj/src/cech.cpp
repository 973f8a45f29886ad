#include "gradedlc/cech.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gradedlc {
namespace {

int sign_before(std::uint32_t set, std::size_t k) {
  const std::uint32_t below = set & ((std::uint32_t{1} << k) - 1);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

}  // namespace

std::size_t GradedCechPiece::index_of(GeneratorSet f) const {
  const auto& row = basis.at(static_cast<std::size_t>(std::popcount(f)));
  auto it = std::lower_bound(row.begin(), row.end(), f);
  if (it == row.end() || *it != f) throw std::out_of_range("generator subset not in this Cech piece");
  return static_cast<std::size_t>(it - row.begin());
}

GradedCechPiece graded_cech(std::span<const Mask> generators, std::size_t n, Mask sigma) {
  const std::size_t r = generators.size();
  if (r > kMaxGenerators) throw std::length_error("more than " + std::to_string(kMaxGenerators) + " generators");
  if ((sigma & ~full_mask(n)) != 0) throw std::invalid_argument("degree class outside the variables");
  GradedCechPiece piece;
  piece.n = n;
  piece.generators.assign(generators.begin(), generators.end());
  piece.sigma = sigma;
  piece.basis.assign(r + 1, {});
  const GeneratorSet all = r == 0 ? 0 : static_cast<GeneratorSet>((std::uint64_t{1} << r) - 1);
  for (GeneratorSet f = 0;; ++f) {
    Mask support = 0;
    for (std::size_t k = 0; k < r; ++k)
      if (f & (GeneratorSet{1} << k)) support |= generators[k];
    if (contains(support, sigma)) piece.basis[static_cast<std::size_t>(std::popcount(f))].push_back(f);
    if (f == all) break;
  }
  piece.complex.min_degree = 0;
  for (const auto& b : piece.basis) piece.complex.ranks.push_back(b.size());
  for (std::size_t deg = 0; deg < r; ++deg) {
    IntMatrix d(piece.basis[deg + 1].size(), piece.basis[deg].size());
    for (std::size_t col = 0; col < piece.basis[deg].size(); ++col) {
      const GeneratorSet f = piece.basis[deg][col];
      for (std::size_t k = 0; k < r; ++k) {
        if (f & (GeneratorSet{1} << k)) continue;
        d(piece.index_of(f | (GeneratorSet{1} << k)), col) = sign_before(f, k);
      }
    }
    piece.complex.differentials.push_back(std::move(d));
  }
  return piece;
}

GradedCechPiece graded_cech(const MonomialIdeal& ideal, Mask sigma) {
  return graded_cech(std::span<const Mask>(ideal.generators()), ideal.variables(), sigma);
}

ChainMap action_map(const GradedCechPiece& from, const GradedCechPiece& to, std::size_t i) {
  if (i == 0 || i > from.n || (from.sigma & variable_bit(i)) == 0) throw std::invalid_argument("action_map: i not in sigma");
  if (to.sigma != (from.sigma & ~variable_bit(i)) || to.generators != from.generators)
    throw std::invalid_argument("action_map: target piece is not C(sigma \\ {i})");
  ChainMap f{0, {}};
  for (std::size_t k = 0; k < from.basis.size(); ++k) {
    IntMatrix m(to.basis[k].size(), from.basis[k].size());
    for (std::size_t c = 0; c < from.basis[k].size(); ++c) m(to.index_of(from.basis[k][c]), c) = 1;
    f.components.push_back(std::move(m));
  }
  return f;
}

ChainMap action_map(const MonomialIdeal& ideal, Mask sigma, std::size_t i) {
  if (i == 0 || i > ideal.variables() || (sigma & variable_bit(i)) == 0)
    throw std::invalid_argument("action_map: i not in sigma");
  return action_map(graded_cech(ideal, sigma), graded_cech(ideal, sigma & ~variable_bit(i)), i);
}

GroupComplex reduce_mod(const FreeComplex& c, const Integer& l) {
  GroupComplex g;
  g.min_degree = c.min_degree;
  for (std::size_t r : c.ranks) g.terms.emplace_back(r, l);
  g.maps = c.differentials;
  for (std::size_t k = 0; k < g.maps.size(); ++k) reduce_modulo(g.maps[k], g.terms[k + 1]);
  return g;
}

const MixedAbGroup& ConeWithP::group(int degree) const { return groups.at(static_cast<std::size_t>(degree)); }

std::vector<MixedAbGroup> cone_groups_by_duality(const FreeComplex& c, const Integer& p, unsigned trunc_exponent) {
  const auto h = complex_cohomology(c.dual());
  std::vector<MixedAbGroup> out;
  for (int q = c.min_degree; q <= c.max_degree() + 1; ++q) {
    const int dual_degree = -(q - 1);
    FinAbGroup x;
    for (const auto& g : h)
      if (g.degree == dual_degree) x = g.group();
    out.push_back(MixedAbGroup::from_dual(x, p, trunc_exponent));
  }
  return out;
}

ConeWithP cone_with_p(const MonomialIdeal& ideal, Mask sigma, const Integer& p, unsigned trunc_exponent) {
  if (!is_prime(p)) throw std::invalid_argument(p.get_str() + " is not prime");
  ConeWithP cone;
  cone.base = graded_cech(ideal, sigma);
  cone.p = p;
  cone.trunc_exponent = trunc_exponent;
  cone.groups = cone_groups_by_duality(cone.base.complex, p, trunc_exponent);
  const GroupComplex k = GroupComplex::from_free(reduce_units(cone.base.complex, false).complex);
  try {
    cone.truncated = truncated_p_cone(k, p, trunc_exponent);
    cone.truncated_next = truncated_p_cone(k, p, trunc_exponent + 1);
  } catch (const TruncationInstability&) {
    cone.stable = false;
    return cone;
  }
  for (std::size_t q = 0; q < cone.groups.size(); ++q)
    if (!(cone.truncated[q].group == cone.groups[q]) || !(cone.truncated_next[q].group == cone.groups[q]))
      cone.stable = false;
  return cone;
}

namespace {

std::vector<std::vector<Mask>> subsets_by_size(Mask tau) {
  std::vector<std::vector<Mask>> out(static_cast<std::size_t>(popcount(tau)) + 1);
  for (Mask a = tau;; a = (a - 1) & tau) {
    out[static_cast<std::size_t>(popcount(a))].push_back(a);
    if (a == 0) break;
  }
  for (auto& row : out) std::sort(row.begin(), row.end());
  return out;
}

int koszul_sign(Mask a, std::size_t i) { return sign_before(a, i - 1); }

// Places a block into a matrix at (row, col).
void put_block(IntMatrix& m, std::size_t row, std::size_t col, const IntMatrix& block, int sign) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) m(row + r, col + c) = sign * block(r, c);
}

template <class GroupOf, class MapOf>
GroupComplex build_cube(Mask tau, Mask sigma, GroupOf group_of, MapOf map_of, bool dual) {
  if (!contains(sigma, tau)) throw std::invalid_argument("koszul cube: class must contain tau");
  const auto levels = subsets_by_size(tau);
  const std::size_t top = levels.size() - 1;
  std::vector<Orders> level_orders(levels.size());
  std::vector<std::vector<std::size_t>> offsets(levels.size());
  for (std::size_t k = 0; k <= top; ++k) {
    std::size_t off = 0;
    for (Mask a : levels[k]) {
      offsets[k].push_back(off);
      Orders o = group_of(sigma & ~a).orders();
      off += o.size();
      level_orders[k].insert(level_orders[k].end(), o.begin(), o.end());
    }
  }
  // forward maps K^k -> K^{k+1}
  std::vector<IntMatrix> forward;
  for (std::size_t k = 0; k < top; ++k) {
    IntMatrix m = dual ? IntMatrix(level_orders[k].size(), level_orders[k + 1].size())
                       : IntMatrix(level_orders[k + 1].size(), level_orders[k].size());
    for (std::size_t ai = 0; ai < levels[k].size(); ++ai) {
      const Mask a = levels[k][ai];
      for (int i : mask_elements(tau & ~a)) {
        const Mask b = a | variable_bit(static_cast<std::size_t>(i));
        const std::size_t bi =
            static_cast<std::size_t>(std::lower_bound(levels[k + 1].begin(), levels[k + 1].end(), b) - levels[k + 1].begin());
        const IntMatrix& u = map_of(sigma & ~a, static_cast<std::size_t>(i)).matrix;
        const int s = koszul_sign(a, static_cast<std::size_t>(i));
        if (dual)
          put_block(m, offsets[k][ai], offsets[k + 1][bi], u, s);
        else
          put_block(m, offsets[k + 1][bi], offsets[k][ai], u, s);
      }
    }
    forward.push_back(std::move(m));
  }
  GroupComplex g;
  if (!dual) {
    g.min_degree = 0;
    g.terms = level_orders;
    g.maps = std::move(forward);
  } else {
    g.min_degree = -static_cast<int>(top);
    for (std::size_t t = 0; t <= top; ++t) g.terms.push_back(level_orders[top - t]);
    for (std::size_t t = 0; t < top; ++t) g.maps.push_back(std::move(forward[top - 1 - t]));
  }
  for (std::size_t t = 0; t < g.maps.size(); ++t) reduce_modulo(g.maps[t], g.terms[t + 1]);
  return g;
}

}  // namespace

GroupComplex koszul_cube(const WindowModule& m, Mask tau, Mask sigma) {
  return build_cube(
      tau, sigma, [&](Mask s) -> const FinAbGroup& { return m.group(s); },
      [&](Mask s, std::size_t i) -> const GroupMap& { return m.action(s, i); }, false);
}

GroupComplex koszul_cube_dual(const MixedWindowModule& m, Mask tau, Mask sigma) {
  return build_cube(
      tau, sigma, [&](Mask s) -> const FinAbGroup& { return m.duals[s]; },
      [&](Mask s, std::size_t i) -> const GroupMap& { return m.dual_action(s, i); }, true);
}

KoszulData koszul_on_module(const WindowModule& m, Mask tau, std::optional<Integer> p) {
  KoszulData out;
  out.tau = tau;
  const Mask top = full_mask(m.n);
  for (Mask s = 0;; ++s) {
    if (contains(s, tau)) {
      out.classes.push_back(s);
      auto h = complex_cohomology(koszul_cube(m, tau, s));
      std::vector<FinAbGroup> groups;
      for (auto& c : h) {
        FinAbGroup g = c.group();
        g.basis_lift = IntMatrix();
        groups.push_back(std::move(g));
      }
      if (p) {
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i <= groups.size(); ++i) {
          std::size_t d = 0;
          if (i >= 1) d += groups[i - 1].mod_p_dimension(*p);
          if (i < groups.size()) d += groups[i].p_torsion_rank(*p);
          dims.push_back(d);
        }
        out.with_p.push_back(std::move(dims));
      }
      out.cohomology.push_back(std::move(groups));
    }
    if (s == top) break;
  }
  return out;
}

KoszulData koszul_on_module(const MixedWindowModule& m, Mask tau) {
  KoszulData out;
  out.tau = tau;
  const Mask top = full_mask(m.n);
  const std::size_t len = static_cast<std::size_t>(popcount(tau)) + 1;
  for (Mask s = 0;; ++s) {
    if (contains(s, tau)) {
      out.classes.push_back(s);
      auto h = complex_cohomology(koszul_cube_dual(m, tau, s));  // degrees -|tau|..0
      std::vector<MixedAbGroup> groups(len);
      for (const auto& c : h) groups[static_cast<std::size_t>(-c.degree)] = MixedAbGroup::from_dual(c.group(), m.p, m.trunc_exponent);
      std::vector<std::size_t> dims;
      for (std::size_t i = 0; i <= len; ++i) {
        std::size_t d = 0;
        if (i >= 1) d += groups[i - 1].cokernel_dimension();
        if (i < len) d += groups[i].socle_dimension();
        dims.push_back(d);
      }
      out.with_p.push_back(std::move(dims));
      out.mixed.push_back(std::move(groups));
    }
    if (s == top) break;
  }
  return out;
}

}  // namespace gradedlc
