#include "gradedlc/monomial.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace gradedlc {

int popcount(Mask m) { return std::popcount(m); }

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1U) out.push_back(i + 1);
  return out;
}

Mask mask_from_elements(const std::vector<int>& elements) {
  Mask m = 0;
  for (int e : elements) m |= variable_bit(static_cast<std::size_t>(e));
  return m;
}

std::string mask_str(Mask m) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int e : mask_elements(m)) {
    out << (first ? "" : ",") << e;
    first = false;
  }
  out << '}';
  return out.str();
}

bool lex_greater(Mask a, Mask b) {
  if (a == b) return false;
  Mask lowest = (a ^ b) & ~((a ^ b) - 1);
  return (a & lowest) != 0;
}

MonomialIdeal MonomialIdeal::from_generators(std::size_t n, std::vector<Mask> generators) {
  if (n > kHardVariableLimit) throw std::length_error("too many variables");
  for (Mask g : generators)
    if ((g & ~full_mask(n)) != 0) throw std::invalid_argument("generator uses a variable outside 1.." + std::to_string(n));
  std::sort(generators.begin(), generators.end(), [](Mask a, Mask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return lex_greater(a, b);
  });
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::vector<Mask> minimal;
  for (Mask g : generators) {
    bool redundant = std::any_of(minimal.begin(), minimal.end(), [g](Mask h) { return contains(g, h); });
    if (!redundant) minimal.push_back(g);
  }
  std::sort(minimal.begin(), minimal.end(), lex_greater);
  MonomialIdeal ideal;
  ideal.n_ = n;
  ideal.gens_ = std::move(minimal);
  return ideal;
}

bool MonomialIdeal::contains_monomial(Mask m) const {
  return std::any_of(gens_.begin(), gens_.end(), [m](Mask g) { return contains(m, g); });
}

std::vector<std::vector<int>> MonomialIdeal::exponent_vectors() const {
  std::vector<std::vector<int>> out;
  for (Mask g : gens_) {
    std::vector<int> e(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) e[i] = (g >> i) & 1U;
    out.push_back(std::move(e));
  }
  return out;
}

MonomialIdeal MonomialIdeal::localized_at(Mask inverted) const {
  std::vector<Mask> g;
  for (Mask m : gens_) g.push_back(m & ~inverted);
  return from_generators(n_, std::move(g));
}

MonomialIdeal MonomialIdeal::permuted(const std::vector<int>& perm) const {
  std::vector<Mask> g;
  for (Mask m : gens_) {
    Mask out = 0;
    for (int e : mask_elements(m)) out |= variable_bit(static_cast<std::size_t>(perm.at(static_cast<std::size_t>(e - 1))));
    g.push_back(out);
  }
  return from_generators(n_, std::move(g));
}

std::string MonomialIdeal::str() const {
  if (is_zero()) return "(0)";
  if (is_unit()) return "(1)";
  std::ostringstream out;
  out << '(';
  bool first = true;
  for (Mask g : gens_) {
    out << (first ? "" : ", ");
    first = false;
    bool first_var = true;
    for (int e : mask_elements(g)) {
      out << (first_var ? "" : "*") << 'x' << e;
      first_var = false;
    }
  }
  out << ')';
  return out.str();
}

Mask lcm_support(std::span<const Mask> generators, std::span<const std::size_t> chosen) {
  Mask m = 0;
  for (std::size_t k : chosen) m |= generators[k];
  return m;
}

Mask lcm_support(const MonomialIdeal& ideal, std::span<const std::size_t> chosen) {
  return lcm_support(std::span<const Mask>(ideal.generators()), chosen);
}

std::vector<DegreeClass> all_degree_classes(std::size_t n, std::size_t max_variables) {
  if (n > max_variables || n > kHardVariableLimit)
    throw std::length_error(std::to_string(n) + " variables exceeds the configured maximum of " +
                            std::to_string(max_variables));
  std::vector<DegreeClass> out;
  out.reserve(std::size_t{1} << n);
  for (Mask m = 0; m <= full_mask(n); ++m) {
    out.push_back({m});
    if (m == full_mask(n)) break;
  }
  std::sort(out.begin(), out.end(), [](const DegreeClass& a, const DegreeClass& b) {
    if (popcount(a.sigma) != popcount(b.sigma)) return popcount(a.sigma) < popcount(b.sigma);
    return mask_elements(a.sigma) < mask_elements(b.sigma);
  });
  return out;
}

SimplicialComplex SimplicialComplex::from_stanley_reisner(const MonomialIdeal& ideal) {
  SimplicialComplex d;
  d.vertices = ideal.variables();
  const Mask top = full_mask(d.vertices);
  std::vector<Mask> faces;
  for (Mask m = 0;; ++m) {
    if (!ideal.contains_monomial(m)) faces.push_back(m);
    if (m == top) break;
  }
  for (Mask f : faces) {
    bool maximal = true;
    for (std::size_t i = 1; i <= d.vertices && maximal; ++i) {
      Mask b = variable_bit(i);
      if ((f & b) == 0 && !ideal.contains_monomial(f | b)) maximal = false;
    }
    if (maximal) d.facets.push_back(f);
  }
  return d;
}

bool SimplicialComplex::is_face(Mask m) const {
  return std::any_of(facets.begin(), facets.end(), [m](Mask f) { return contains(f, m); });
}

MonomialIdeal SimplicialComplex::stanley_reisner_ideal() const {
  std::vector<Mask> nonfaces;
  const Mask top = full_mask(vertices);
  for (Mask m = 0;; ++m) {
    if (!is_face(m)) nonfaces.push_back(m);
    if (m == top) break;
  }
  return MonomialIdeal::from_generators(vertices, std::move(nonfaces));
}

int SimplicialComplex::krull_dimension() const {
  int d = -1;
  for (Mask f : facets) d = std::max(d, popcount(f));
  return d;
}

std::vector<Mask> reisner_generators_listed() {
  return {mask_from_elements({1, 2, 3}), mask_from_elements({1, 2, 4}), mask_from_elements({1, 3, 5}),
          mask_from_elements({1, 4, 6}), mask_from_elements({1, 5, 6}), mask_from_elements({2, 3, 6}),
          mask_from_elements({2, 5, 6}), mask_from_elements({2, 4, 5}), mask_from_elements({3, 4, 5}),
          mask_from_elements({3, 4, 6})};
}

MonomialIdeal builtin_reisner() { return MonomialIdeal::from_generators(6, reisner_generators_listed()); }

namespace {

MonomialIdeal variables_ideal(std::vector<std::vector<int>> gens) {
  std::vector<Mask> masks;
  for (auto& g : gens) masks.push_back(mask_from_elements(g));
  return MonomialIdeal::from_generators(6, masks);
}

}  // namespace

AuxiliaryIdeals reisner_auxiliary_ideals() {
  const auto mu = reisner_generators_listed();  // mu[k-1] = mu_k
  auto range = [&](std::size_t first, std::size_t last) {  // 1-based inclusive
    std::vector<Mask> g;
    for (std::size_t k = first; k <= last; ++k) g.push_back(mu[k - 1]);
    return MonomialIdeal::from_generators(6, g);
  };
  AuxiliaryIdeals aux;

  const std::vector<std::vector<std::vector<int>>> b_ref = {
      {{4}, {5}, {6}}, {{5}, {6}}, {{4}, {6}}, {{3}, {5}}, {{2}, {3, 4}}, {{4}, {5}}, {{4}}};
  for (std::size_t j = 1; j <= 7; ++j) {
    NamedIdeal a{"a" + std::to_string(j), range(j + 1, 10), 0, "", true};
    if (j == 7) {
      MonomialIdeal listed = range(1, 3);
      a.reference = listed.str();
      a.matches_reference = listed == a.ideal;
    }
    aux.tails.push_back(a);
    NamedIdeal b{"b" + std::to_string(j), a.ideal.localized_at(mu[j - 1]), mu[j - 1], "", true};
    MonomialIdeal ref = variables_ideal(b_ref[j - 1]);
    b.reference = ref.str();
    b.matches_reference = ref == b.ideal;
    aux.tail_loc.push_back(b);
  }

  const std::vector<std::vector<std::vector<int>>> d_ref = {{{2}, {3, 5}}, {{3}, {4}},     {{1}},          {{1}, {3}},
                                                            {{1}, {6}},    {{1}, {2}},     {{1}, {2}, {5}}};
  for (std::size_t j = 3; j <= 10; ++j) {
    NamedIdeal c{"c" + std::to_string(j), range(1, j - 1), 0, "", true};
    if (j == 4) {
      MonomialIdeal listed = range(8, 10);
      c.reference = listed.str();
      c.matches_reference = listed == c.ideal;
    }
    aux.heads.push_back(c);
    if (j >= 4) {
      NamedIdeal d{"d" + std::to_string(j), c.ideal.localized_at(mu[j - 1]), mu[j - 1], "", true};
      MonomialIdeal ref = variables_ideal(d_ref[j - 4]);
      d.reference = ref.str();
      d.matches_reference = ref == d.ideal;
      aux.head_loc.push_back(d);
    }
  }
  return aux;
}

ParsedIdeal parse_ideal(const std::string& text, std::size_t max_variables) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed ideal file: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("ideal file must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "variables" && it.key() != "generators" && it.key() != "name")
      throw std::invalid_argument("unknown field '" + it.key() + "' in ideal file");
  if (!doc.contains("variables") || !doc["variables"].is_number_integer())
    throw std::invalid_argument("'variables' must be an integer");
  const long long n_raw = doc["variables"].get<long long>();
  if (n_raw < 0) throw std::invalid_argument("'variables' must be nonnegative");
  const auto n = static_cast<std::size_t>(n_raw);
  if (n > max_variables)
    throw std::invalid_argument(std::to_string(n) + " variables exceeds --max-vars " + std::to_string(max_variables));
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw std::invalid_argument("'generators' must be an array");

  ParsedIdeal out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw std::invalid_argument("'name' must be a string");
    out.name = doc["name"].get<std::string>();
  }
  std::vector<Mask> gens;
  for (const auto& g : doc["generators"]) {
    if (!g.is_array()) throw std::invalid_argument("each generator must be an exponent vector");
    if (g.size() != n)
      throw std::invalid_argument("exponent vector of length " + std::to_string(g.size()) + " for " +
                                  std::to_string(n) + " variables");
    Mask m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!g[i].is_number_integer()) throw std::invalid_argument("exponents must be integers");
      long long e = g[i].get<long long>();
      if (e < 0) throw std::invalid_argument("negative exponent");
      if (e > 1) out.radical_taken = true;
      if (e > 0) m |= variable_bit(i + 1);
    }
    gens.push_back(m);
  }
  out.ideal = MonomialIdeal::from_generators(n, std::move(gens));
  return out;
}

std::string ideal_to_json(const MonomialIdeal& ideal, const std::string& name) {
  nlohmann::ordered_json doc;
  doc["variables"] = ideal.variables();
  doc["generators"] = ideal.exponent_vectors();
  if (!name.empty()) doc["name"] = name;
  return doc.dump();
}

}  // namespace gradedlc
