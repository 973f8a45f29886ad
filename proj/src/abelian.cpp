#include "gradedlc/abelian.hpp"

#include <sstream>
#include <stdexcept>

namespace gradedlc {

IntMatrix relation_matrix(const Orders& orders) {
  std::size_t finite = 0;
  for (const auto& o : orders)
    if (o != 0) ++finite;
  IntMatrix r(orders.size(), finite);
  std::size_t col = 0;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) r(i, col++) = orders[i];
  return r;
}

FinAbGroup FinAbGroup::free(std::size_t rank) {
  FinAbGroup g;
  g.free_rank = rank;
  return g;
}

FinAbGroup FinAbGroup::cyclic(const Integer& order) {
  if (order == 0) return free(1);
  return from_orders({order});
}

FinAbGroup FinAbGroup::from_orders(const Orders& orders) {
  FinAbGroup g;
  Orders finite;
  for (const auto& o : orders) {
    if (o == 0)
      ++g.free_rank;
    else
      finite.push_back(abs(o));
  }
  IntMatrix d(finite.size(), finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) d(i, i) = finite[i];
  for (const auto& t : snf(d, Transforms::none).invariants())
    if (t != 1) g.torsion.push_back(t);
  return g;
}

Integer FinAbGroup::order_of(std::size_t generator) const {
  if (generator < free_rank) return 0;
  return torsion.at(generator - free_rank);
}

Orders FinAbGroup::orders() const {
  Orders o(free_rank, Integer(0));
  o.insert(o.end(), torsion.begin(), torsion.end());
  return o;
}

bool FinAbGroup::has_torsion_prime(const Integer& p) const {
  for (const auto& t : torsion)
    if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t()) != 0) return true;
  return false;
}

std::size_t FinAbGroup::mod_p_dimension(const Integer& p) const { return free_rank + p_torsion_rank(p); }

std::size_t FinAbGroup::p_torsion_rank(const Integer& p) const {
  std::size_t k = 0;
  for (const auto& t : torsion)
    if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t()) != 0) ++k;
  return k;
}

std::string FinAbGroup::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << "Z";
    if (free_rank > 1) out << '^' << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    out << (first ? "" : " + ") << "Z/" << t.get_str();
    first = false;
  }
  return out.str();
}

void reduce_modulo(IntMatrix& m, const Orders& orders) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (orders[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_fdiv_r(m(r, c).get_mpz_t(), m(r, c).get_mpz_t(), orders[r].get_mpz_t());
  }
}

void reduce_modulo(IntVector& v, const Orders& orders) {
  for (std::size_t r = 0; r < v.size(); ++r)
    if (orders[r] != 0) mpz_fdiv_r(v[r].get_mpz_t(), v[r].get_mpz_t(), orders[r].get_mpz_t());
}

GroupMap GroupMap::make(FinAbGroup source, FinAbGroup target, IntMatrix matrix) {
  if (matrix.rows() != target.generators() || matrix.cols() != source.generators())
    throw std::invalid_argument("GroupMap: matrix shape does not match groups");
  const Orders tgt = target.orders();
  reduce_modulo(matrix, tgt);
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    const Integer m = source.order_of(c);
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      Integer x = m * matrix(r, c);
      bool ok = tgt[r] == 0 ? x == 0 : mpz_divisible_p(x.get_mpz_t(), tgt[r].get_mpz_t()) != 0;
      if (!ok) throw std::invalid_argument("GroupMap: not well defined on a torsion generator");
    }
  }
  return GroupMap{std::move(source), std::move(target), std::move(matrix)};
}

GroupMap GroupMap::identity(const FinAbGroup& g) { return make(g, g, IntMatrix::identity(g.generators())); }

GroupMap GroupMap::scalar(const FinAbGroup& g, const Integer& k) {
  return make(g, g, IntMatrix::scalar(g.generators(), k));
}

GroupMap GroupMap::zero(const FinAbGroup& source, const FinAbGroup& target) {
  return make(source, target, IntMatrix(target.generators(), source.generators()));
}

IntVector GroupMap::apply(const IntVector& x) const {
  IntVector y = matrix.apply(x);
  reduce_modulo(y, target.orders());
  return y;
}

GroupMap compose(const GroupMap& second, const GroupMap& first) {
  if (!(first.target == second.source)) throw std::invalid_argument("compose: groups do not match");
  return GroupMap::make(first.source, second.target, second.matrix * first.matrix);
}

LatticeBasis LatticeBasis::span(const IntMatrix& generators) {
  const std::size_t m = generators.rows();
  SnfDecomposition s = snf(generators, Transforms::left);
  const std::size_t r = s.rank;
  LatticeBasis l;
  l.ambient = m;
  l.basis = IntMatrix(m, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t row = 0; row < m; ++row) l.basis(row, i) = s.diagonal(i, i) * s.left_inverse(row, i);
  l.coordinate_rows = s.left.select_rows(0, r);
  l.divisors = s.invariants();
  l.complement_rows = s.left.select_rows(r, m);
  return l;
}

LatticeBasis LatticeBasis::nullspace(const IntMatrix& a) {
  const std::size_t m = a.cols();
  SnfDecomposition s = snf(a, Transforms::right);
  const std::size_t r = s.rank;
  LatticeBasis l;
  l.ambient = m;
  l.basis = s.right.select_columns(r, m);
  l.coordinate_rows = s.right_inverse.select_rows(r, m);
  l.divisors = IntVector(m - r, Integer(1));
  l.complement_rows = s.right_inverse.select_rows(0, r);
  return l;
}

LatticeBasis LatticeBasis::whole(std::size_t m) {
  LatticeBasis l;
  l.ambient = m;
  l.basis = IntMatrix::identity(m);
  l.coordinate_rows = IntMatrix::identity(m);
  l.divisors = IntVector(m, Integer(1));
  l.complement_rows = IntMatrix(0, m);
  return l;
}

std::optional<IntVector> LatticeBasis::coordinates(const IntVector& x) const {
  for (const auto& v : complement_rows.apply(x))
    if (v != 0) return std::nullopt;
  IntVector c = coordinate_rows.apply(x);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (divisors[i] == 1) continue;
    if (mpz_divisible_p(c[i].get_mpz_t(), divisors[i].get_mpz_t()) == 0) return std::nullopt;
    mpz_divexact(c[i].get_mpz_t(), c[i].get_mpz_t(), divisors[i].get_mpz_t());
  }
  return c;
}

IntVector Subquotient::coordinates(const IntVector& x) const {
  auto c = outer.coordinates(x);
  if (!c) throw std::logic_error("element outside the cycle lattice; upstream map is not a chain map");
  IntVector w = reexpress.apply(*c);
  reduce_modulo(w, group.orders());
  return w;
}

Subquotient make_subquotient(LatticeBasis outer, const IntMatrix& inner_generators) {
  const std::size_t r = outer.rank();
  IntMatrix coords(r, inner_generators.cols());
  for (std::size_t k = 0; k < inner_generators.cols(); ++k) {
    auto c = outer.coordinates(inner_generators.column_vector(k));
    if (!c) throw std::logic_error("subquotient: inner lattice not contained in outer lattice");
    coords.set_column(k, *c);
  }
  SnfDecomposition s = snf(coords, Transforms::left);
  std::vector<std::size_t> keep;
  for (std::size_t k = s.rank; k < r; ++k) keep.push_back(k);
  for (std::size_t k = 0; k < s.rank; ++k)
    if (s.diagonal(k, k) != 1) keep.push_back(k);

  Subquotient q;
  q.group.free_rank = r - s.rank;
  for (std::size_t k = 0; k < s.rank; ++k)
    if (s.diagonal(k, k) != 1) q.group.torsion.push_back(s.diagonal(k, k));
  q.reexpress = s.left.pick_rows(keep);
  q.group.basis_lift = outer.basis * s.left_inverse.pick_columns(keep);
  q.outer = std::move(outer);
  return q;
}

LatticeBasis preimage_lattice(const IntMatrix& m, const Orders& target_orders) {
  IntMatrix rel = relation_matrix(target_orders);
  if (rel.cols() == 0) return LatticeBasis::nullspace(m);
  LatticeBasis joint = LatticeBasis::nullspace(IntMatrix::hstack(m, rel));
  return LatticeBasis::span(joint.basis.select_rows(0, m.cols()));
}

KernelCokernel kernel_cokernel(const GroupMap& f) {
  const Orders so = f.source.orders(), to = f.target.orders();
  KernelCokernel out;
  out.kernel = make_subquotient(preimage_lattice(f.matrix, to), relation_matrix(so)).group;
  out.cokernel =
      make_subquotient(LatticeBasis::whole(to.size()), IntMatrix::hstack(f.matrix, relation_matrix(to))).group;
  return out;
}

FinAbGroup image(const GroupMap& f) {
  const Orders to = f.target.orders();
  IntMatrix rel = relation_matrix(to);
  return make_subquotient(LatticeBasis::span(IntMatrix::hstack(f.matrix, rel)), rel).group;
}

CoefficientChange change_coefficients(const FinAbGroup& g, CoefficientRing ring, const Integer& prime) {
  CoefficientChange c{ring, prime, 0, {}};
  if (ring != CoefficientRing::rationals && !is_prime(prime))
    throw std::invalid_argument("change_coefficients: " + prime.get_str() + " is not prime");
  switch (ring) {
    case CoefficientRing::rationals:
      c.dimension = g.free_rank;
      break;
    case CoefficientRing::prime_field:
      c.dimension = g.mod_p_dimension(prime);
      break;
    case CoefficientRing::p_inverted:
      c.dimension = g.free_rank;
      for (const auto& t : g.torsion) {
        Integer rest = t / p_part(t, prime);
        if (rest != 1) c.surviving_torsion.push_back(rest);
      }
      break;
  }
  return c;
}

}  // namespace gradedlc
