#include "gradedlc/mixed.hpp"

#include <sstream>

namespace gradedlc {

MixedAbGroup MixedAbGroup::from_dual(const FinAbGroup& dual, const Integer& p, unsigned trunc_exponent) {
  MixedAbGroup g;
  g.p = p;
  g.trunc_exponent = trunc_exponent;
  g.divisible_corank = dual.free_rank;
  for (const auto& t : dual.torsion) {
    Integer part = p_part(t, p);
    if (part != 1) g.torsion.push_back(part);
  }
  return g;
}

FinAbGroup MixedAbGroup::dual_presentation() const {
  if (free_rank != 0) throw std::invalid_argument("MixedAbGroup: Z summands have no Artinian dual");
  FinAbGroup d;
  d.free_rank = divisible_corank;
  d.torsion = torsion;
  return d;
}

bool MixedAbGroup::stable_at_truncation() const {
  const Integer bound = power(p, trunc_exponent);
  for (const auto& t : torsion)
    if (t >= bound) return false;
  return true;
}

std::string MixedAbGroup::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << " + ";
    first = false;
  };
  if (free_rank > 0) {
    sep();
    out << "Z";
    if (free_rank > 1) out << '^' << free_rank;
  }
  if (divisible_corank > 0) {
    sep();
    out << "Z(" << p.get_str() << "^inf)";
    if (divisible_corank > 1) out << '^' << divisible_corank;
  }
  for (const auto& t : torsion) {
    sep();
    out << "Z/" << t.get_str();
  }
  return out.str();
}

MixedGroupMap MixedGroupMap::scalar(const MixedAbGroup& g, const Integer& k) {
  FinAbGroup d = g.dual_presentation();
  return MixedGroupMap{g, g, GroupMap::scalar(d, k)};
}

MixedKernelCokernel kernel_cokernel(const MixedGroupMap& f) {
  if (f.source.free_rank != 0 || f.target.free_rank != 0)
    throw std::invalid_argument("kernel_cokernel: Z summands in a mixed map");
  KernelCokernel dual = kernel_cokernel(f.dual);
  const unsigned n = std::max(f.source.trunc_exponent, f.target.trunc_exponent);
  MixedKernelCokernel out;
  out.kernel = MixedAbGroup::from_dual(dual.cokernel, f.source.p, n);
  out.cokernel = MixedAbGroup::from_dual(dual.kernel, f.source.p, n);
  out.stable = out.kernel.stable_at_truncation() && out.cokernel.stable_at_truncation();
  return out;
}

namespace {

ChainMap scalar_chain_map(const GroupComplex& k, const Integer& s) {
  ChainMap f{k.min_degree, {}};
  for (const auto& t : k.terms) f.components.push_back(IntMatrix::scalar(t.size(), s));
  return f;
}

}  // namespace

std::vector<TruncatedDegree> truncated_p_cone(const GroupComplex& k, const Integer& p, unsigned trunc_exponent) {
  const Integer pn = power(p, trunc_exponent);
  const GroupComplex low = mapping_cone(k, k, scalar_chain_map(k, pn));
  const GroupComplex high = mapping_cone(k, k, scalar_chain_map(k, pn * pn));

  const std::size_t len = k.terms.size();
  ChainMap lift{low.min_degree, {}};
  ChainMap project{low.min_degree, {}};
  for (std::size_t t = 0; t <= len; ++t) {
    const std::size_t cs = t < len ? k.terms[t].size() : 0;
    const std::size_t ds = t >= 1 ? k.terms[t - 1].size() : 0;
    IntMatrix phi(cs + ds, cs + ds);
    for (std::size_t i = 0; i < cs; ++i) phi(i, i) = 1;
    for (std::size_t i = 0; i < ds; ++i) phi(cs + i, cs + i) = pn;
    lift.components.push_back(std::move(phi));
    IntMatrix gamma(cs, cs + ds);
    for (std::size_t i = 0; i < cs; ++i) gamma(i, i) = 1;
    project.components.push_back(std::move(gamma));
  }

  // K padded by one zero term so that it spans the cone's degree range.
  GroupComplex base = k;
  base.terms.emplace_back();
  base.maps.emplace_back(0, k.terms.empty() ? 0 : k.terms.back().size());
  if (k.terms.empty()) base.maps.clear();

  check_chain_map(low, high, lift);
  check_chain_map(low, base, project);
  const auto h_low = complex_cohomology(low);
  const auto h_high = complex_cohomology(high);
  const auto h_base = complex_cohomology(base);
  const auto phi = induced_on_cohomology(lift, h_low, h_high);
  const auto gamma = induced_on_cohomology(project, h_low, h_base);

  std::vector<TruncatedDegree> out;
  for (std::size_t t = 0; t <= len; ++t) {
    TruncatedDegree d;
    d.degree = low.min_degree + static_cast<int>(t);
    d.group.p = p;
    d.group.trunc_exponent = trunc_exponent;
    const FinAbGroup img = image(phi[t]);
    if (img.free_rank != 0) throw std::logic_error("truncated cone produced a free summand");
    for (const auto& inv : img.torsion) {
      const int v = p_valuation(inv, p);
      if (inv / power(p, static_cast<unsigned long>(v)) != 1)
        throw std::logic_error("truncated cone produced torsion prime to p");
      if (v == static_cast<int>(trunc_exponent))
        ++d.group.divisible_corank;
      else if (v < static_cast<int>(trunc_exponent))
        d.group.torsion.push_back(inv);
      else
        throw TruncationInstability("invariant " + inv.get_str() + " exceeds p^N in degree " + std::to_string(d.degree));
    }
    d.image_in_base = image(gamma[t]);
    d.image_in_base.basis_lift = IntMatrix();
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace gradedlc
