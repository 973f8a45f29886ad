#include "gradedlc/complex.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

namespace gradedlc {
namespace {

IntMatrix zero_if_missing(const std::vector<IntMatrix>& maps, std::size_t k, std::size_t rows, std::size_t cols) {
  if (k < maps.size()) return maps[k];
  return IntMatrix(rows, cols);
}

bool vanishes_modulo(IntMatrix m, const Orders& orders) {
  reduce_modulo(m, orders);
  return m.is_zero();
}

FinAbGroup shape_of(const FinAbGroup& g) {
  FinAbGroup s;
  s.free_rank = g.free_rank;
  s.torsion = g.torsion;
  return s;
}

using i64 = std::int64_t;
using Rows = std::vector<std::vector<i64>>;

i64 mod_l(const Integer& x, i64 l) {
  Integer r = x % l;
  if (r < 0) r += l;
  return r.get_si();
}

i64 inverse_mod(i64 a, i64 l) {
  i64 t = 0, nt = 1, r = l, nr = a;
  while (nr != 0) {
    const i64 q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  return t < 0 ? t + l : t;
}

// Reduced row echelon form over F_l; returns pivot columns, one per surviving row.
std::vector<std::size_t> rref_mod(Rows& a, std::size_t cols, i64 l) {
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < a.size(); ++c) {
    std::size_t r = top;
    while (r < a.size() && a[r][c] == 0) ++r;
    if (r == a.size()) continue;
    std::swap(a[top], a[r]);
    const i64 inv = inverse_mod(a[top][c], l);
    for (auto& v : a[top]) v = v * inv % l;
    for (std::size_t o = 0; o < a.size(); ++o) {
      if (o == top || a[o][c] == 0) continue;
      const i64 f = a[o][c];
      for (std::size_t k = c; k < cols; ++k) a[o][k] = ((a[o][k] - f * a[top][k]) % l + l) % l;
    }
    pivots.push_back(c);
    ++top;
  }
  a.resize(top);
  return pivots;
}

std::optional<i64> common_prime_order(const GroupComplex& c) {
  std::optional<Integer> l;
  for (const auto& t : c.terms)
    for (const auto& o : t) {
      if (!l) l = o;
      if (o != *l) return std::nullopt;
    }
  if (!l || *l < 2 || *l >= (Integer(1) << 31) || mpz_probab_prime_p(l->get_mpz_t(), 30) == 0) return std::nullopt;
  return l->get_si();
}

// Same output contract as the integral route: outer is the cycle lattice
// ker(d mod l) + l Z^n, the group is (Z/l)^dim.
std::vector<CohomologyGroup> field_cohomology(const GroupComplex& c, i64 l) {
  std::vector<CohomologyGroup> out;
  const std::size_t len = c.terms.size();
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t n = c.terms[k].size();
    Rows d;
    if (k + 1 < len) {
      const IntMatrix& m = c.maps[k];
      d.assign(m.rows(), std::vector<i64>(n));
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < n; ++j) d[r][j] = mod_l(m(r, j), l);
    }
    const auto pivots = rref_mod(d, n, l);
    std::vector<std::size_t> free_cols;
    std::vector<int> pivot_row(n, -1);
    for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<int>(r);
    for (std::size_t j = 0; j < n; ++j)
      if (pivot_row[j] < 0) free_cols.push_back(j);
    const std::size_t nf = free_cols.size();

    LatticeBasis outer;
    outer.ambient = n;
    outer.basis = IntMatrix(n, n);
    outer.coordinate_rows = IntMatrix(n, n);
    outer.divisors = IntVector(n, Integer(1));
    outer.complement_rows = IntMatrix(0, n);
    for (std::size_t a = 0; a < nf; ++a) {
      const std::size_t f = free_cols[a];
      outer.basis(f, a) = 1;
      outer.coordinate_rows(a, f) = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) outer.basis(pivots[r], a) = -d[r][f];
    }
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const std::size_t p = pivots[r], col = nf + r;
      outer.basis(p, col) = l;
      outer.coordinate_rows(col, p) = 1;
      for (std::size_t a = 0; a < nf; ++a) outer.coordinate_rows(col, free_cols[a]) = d[r][free_cols[a]];
      outer.divisors[col] = l;
    }

    Rows b;
    if (k > 0) {
      const IntMatrix& m = c.maps[k - 1];
      b.assign(m.cols(), std::vector<i64>(nf));
      for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t a = 0; a < nf; ++a) b[j][a] = mod_l(m(free_cols[a], j), l);
    }
    const auto bpiv = rref_mod(b, nf, l);
    std::vector<bool> is_bpiv(nf, false);
    for (auto q : bpiv) is_bpiv[q] = true;
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < nf; ++a)
      if (!is_bpiv[a]) kept.push_back(a);

    Subquotient q;
    q.group.torsion = IntVector(kept.size(), Integer(l));
    q.group.basis_lift = outer.basis.pick_columns(kept);
    q.reexpress = IntMatrix(kept.size(), n);
    for (std::size_t j = 0; j < kept.size(); ++j) {
      q.reexpress(j, kept[j]) = 1;
      for (std::size_t r = 0; r < bpiv.size(); ++r) q.reexpress(j, bpiv[r]) = (l - b[r][kept[j]]) % l;
    }
    q.outer = std::move(outer);
    out.push_back(CohomologyGroup{c.min_degree + static_cast<int>(k), std::move(q)});
  }
  return out;
}

}  // namespace

std::size_t FreeComplex::rank_at(int degree) const {
  if (degree < min_degree || degree > max_degree()) return 0;
  return ranks[static_cast<std::size_t>(degree - min_degree)];
}

void FreeComplex::validate() const {
  if (ranks.empty()) {
    if (!differentials.empty()) throw std::invalid_argument("FreeComplex: differentials without terms");
    return;
  }
  if (differentials.size() + 1 != ranks.size()) throw std::invalid_argument("FreeComplex: wrong differential count");
  for (std::size_t k = 0; k < differentials.size(); ++k)
    if (differentials[k].rows() != ranks[k + 1] || differentials[k].cols() != ranks[k])
      throw std::invalid_argument("FreeComplex: differential shape mismatch");
  for (std::size_t k = 0; k + 1 < differentials.size(); ++k)
    if (!(differentials[k + 1] * differentials[k]).is_zero())
      throw std::invalid_argument("FreeComplex: d o d != 0 at degree " + std::to_string(min_degree + static_cast<int>(k)));
}

FreeComplex FreeComplex::dual() const {
  FreeComplex d;
  const std::size_t len = ranks.size();
  d.min_degree = -max_degree();
  d.ranks.resize(len);
  for (std::size_t t = 0; t < len; ++t) d.ranks[t] = ranks[len - 1 - t];
  for (std::size_t t = 0; t + 1 < len; ++t) d.differentials.push_back(differentials[len - 2 - t].transpose());
  return d;
}

GroupComplex GroupComplex::from_free(const FreeComplex& c) {
  GroupComplex g;
  g.min_degree = c.min_degree;
  for (std::size_t r : c.ranks) g.terms.emplace_back(r, Integer(0));
  g.maps = c.differentials;
  return g;
}

void GroupComplex::validate() const {
  if (!terms.empty() && maps.size() + 1 != terms.size()) throw std::invalid_argument("GroupComplex: wrong map count");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].rows() != terms[k + 1].size() || maps[k].cols() != terms[k].size())
      throw std::invalid_argument("GroupComplex: map shape mismatch");
    if (!vanishes_modulo(maps[k] * relation_matrix(terms[k]), terms[k + 1]))
      throw std::invalid_argument("GroupComplex: map not well defined");
  }
  for (std::size_t k = 0; k + 1 < maps.size(); ++k)
    if (!vanishes_modulo(maps[k + 1] * maps[k], terms[k + 2]))
      throw std::invalid_argument("GroupComplex: d o d != 0");
}

std::vector<CohomologyGroup> complex_cohomology(const FreeComplex& c) {
  c.validate();
  return complex_cohomology(GroupComplex::from_free(c));
}

std::vector<CohomologyGroup> complex_cohomology(const GroupComplex& c, bool field_shortcut) {
  c.validate();
  if (field_shortcut)
    if (auto l = common_prime_order(c)) return field_cohomology(c, *l);
  std::vector<CohomologyGroup> out;
  const std::size_t len = c.terms.size();
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t g = c.terms[k].size();
    LatticeBasis cycles =
        k + 1 < len ? preimage_lattice(c.maps[k], c.terms[k + 1]) : LatticeBasis::whole(g);
    IntMatrix boundaries = k > 0 ? c.maps[k - 1] : IntMatrix(g, 0);
    IntMatrix inner = IntMatrix::hstack(boundaries, relation_matrix(c.terms[k]));
    out.push_back(CohomologyGroup{c.min_degree + static_cast<int>(k), make_subquotient(std::move(cycles), inner)});
  }
  return out;
}

void check_chain_map(const GroupComplex& source, const GroupComplex& target, const ChainMap& f) {
  const std::size_t len = source.terms.size();
  if (source.min_degree != target.min_degree || target.terms.size() != len || f.min_degree != source.min_degree ||
      f.components.size() != len)
    throw std::invalid_argument("chain map: degree ranges differ");
  for (std::size_t k = 0; k < len; ++k)
    if (f.components[k].rows() != target.terms[k].size() || f.components[k].cols() != source.terms[k].size())
      throw std::invalid_argument("chain map: component shape mismatch");
  for (std::size_t k = 0; k + 1 < len; ++k) {
    IntMatrix lhs = f.components[k + 1] * source.maps[k];
    IntMatrix rhs = target.maps[k] * f.components[k];
    if (!vanishes_modulo(lhs - rhs, target.terms[k + 1]))
      throw std::invalid_argument("chain map does not commute with differentials at degree " +
                                  std::to_string(source.min_degree + static_cast<int>(k)));
  }
}

std::vector<GroupMap> induced_on_cohomology(const ChainMap& f, const std::vector<CohomologyGroup>& source,
                                            const std::vector<CohomologyGroup>& target) {
  if (source.size() != f.components.size() || target.size() != f.components.size())
    throw std::invalid_argument("induced_on_cohomology: degree ranges differ");
  std::vector<GroupMap> out;
  for (std::size_t k = 0; k < source.size(); ++k) {
    const FinAbGroup& s = source[k].group();
    const FinAbGroup& t = target[k].group();
    IntMatrix m(t.generators(), s.generators());
    for (std::size_t g = 0; g < s.generators(); ++g)
      m.set_column(g, target[k].presentation.coordinates(f.components[k].apply(s.basis_lift.column_vector(g))));
    out.push_back(GroupMap::make(shape_of(s), shape_of(t), std::move(m)));
  }
  return out;
}

std::vector<GroupMap> induced_on_cohomology(const ChainMap& f, const FreeComplex& source, const FreeComplex& target) {
  GroupComplex s = GroupComplex::from_free(source), t = GroupComplex::from_free(target);
  check_chain_map(s, t, f);
  return induced_on_cohomology(f, complex_cohomology(s), complex_cohomology(t));
}

ChainMap compose(const ChainMap& second, const ChainMap& first) {
  if (second.min_degree != first.min_degree || second.components.size() != first.components.size())
    throw std::invalid_argument("compose: chain maps over different degree ranges");
  ChainMap out{first.min_degree, {}};
  for (std::size_t k = 0; k < first.components.size(); ++k)
    out.components.push_back(second.components[k] * first.components[k]);
  return out;
}

GroupComplex mapping_cone(const GroupComplex& c, const GroupComplex& d, const ChainMap& f) {
  check_chain_map(c, d, f);
  const std::size_t len = c.terms.size();
  GroupComplex cone;
  cone.min_degree = c.min_degree;
  auto c_size = [&](std::size_t t) -> std::size_t { return t < len ? c.terms[t].size() : 0; };
  auto d_size = [&](std::size_t t) -> std::size_t { return t >= 1 && t - 1 < len ? d.terms[t - 1].size() : 0; };
  for (std::size_t t = 0; t <= len; ++t) {
    Orders o;
    if (t < len) o = c.terms[t];
    if (t >= 1) o.insert(o.end(), d.terms[t - 1].begin(), d.terms[t - 1].end());
    cone.terms.push_back(std::move(o));
  }
  for (std::size_t t = 0; t < len; ++t) {
    IntMatrix dc = zero_if_missing(c.maps, t, c_size(t + 1), c_size(t));
    IntMatrix top_right(c_size(t + 1), d_size(t));
    IntMatrix fc = f.components[t];
    IntMatrix dd = t >= 1 ? Integer(-1) * zero_if_missing(d.maps, t - 1, d_size(t + 1), d_size(t))
                          : IntMatrix(d_size(t + 1), d_size(t));
    cone.maps.push_back(IntMatrix::blocks(dc, top_right, fc, dd));
  }
  return cone;
}

}  // namespace gradedlc

namespace gradedlc {

ReducedComplex reduce_units(const FreeComplex& c, bool track) {
  c.validate();
  std::vector<IntMatrix> d = c.differentials;
  std::vector<std::vector<char>> alive;
  std::vector<IntMatrix> f, g;
  for (std::size_t r : c.ranks) {
    alive.emplace_back(r, 1);
    if (track) {
      f.push_back(IntMatrix::identity(r));
      g.push_back(IntMatrix::identity(r));
    }
  }
  for (std::size_t k = 0; k < d.size(); ++k) {
    IntMatrix& m = d[k];
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t a = 0; a < m.cols(); ++a) {
        if (!alive[k][a]) continue;
        std::size_t b = m.rows();
        for (std::size_t row = 0; row < m.rows(); ++row)
          if (alive[k + 1][row] && abs(m(row, a)) == 1) {
            b = row;
            break;
          }
        if (b == m.rows()) continue;
        const Integer u = m(b, a);
        std::vector<std::size_t> rows, cols;
        for (std::size_t row = 0; row < m.rows(); ++row)
          if (row != b && alive[k + 1][row] && m(row, a) != 0) rows.push_back(row);
        for (std::size_t col = 0; col < m.cols(); ++col)
          if (col != a && alive[k][col] && m(b, col) != 0) cols.push_back(col);
        if (track) {
          IntMatrix& gk = g[k];
          for (std::size_t col : cols) {
            const Integer s = u * m(b, col);
            for (std::size_t x = 0; x < gk.rows(); ++x)
              if (gk(x, a) != 0) gk(x, col) -= s * gk(x, a);
          }
          IntMatrix& fk = f[k + 1];
          for (std::size_t row : rows) {
            const Integer s = u * m(row, a);
            for (std::size_t x = 0; x < fk.cols(); ++x)
              if (fk(b, x) != 0) fk(row, x) -= s * fk(b, x);
          }
        }
        for (std::size_t row : rows)
          for (std::size_t col : cols) m(row, col) -= m(row, a) * m(b, col) * u;
        alive[k][a] = 0;
        alive[k + 1][b] = 0;
        progress = true;
      }
    }
  }
  ReducedComplex out;
  out.complex.min_degree = c.min_degree;
  std::vector<std::vector<std::size_t>> keep(alive.size());
  for (std::size_t k = 0; k < alive.size(); ++k) {
    for (std::size_t i = 0; i < alive[k].size(); ++i)
      if (alive[k][i]) keep[k].push_back(i);
    out.complex.ranks.push_back(keep[k].size());
    if (track) {
      out.to_reduced.push_back(f[k].pick_rows(keep[k]));
      out.from_reduced.push_back(g[k].pick_columns(keep[k]));
    }
  }
  for (std::size_t k = 0; k < d.size(); ++k)
    out.complex.differentials.push_back(d[k].pick_rows(keep[k + 1]).pick_columns(keep[k]));
  return out;
}

}  // namespace gradedlc
