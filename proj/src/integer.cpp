#include "gradedlc/integer.hpp"

#include <stdexcept>

namespace gradedlc {

int p_valuation(const Integer& value, const Integer& p) {
  if (value == 0) throw std::invalid_argument("p_valuation of zero");
  Integer rest = abs(value);
  int v = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()) != 0) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

std::vector<Integer> prime_divisors(const Integer& value) {
  std::vector<Integer> out;
  Integer rest = abs(value);
  if (rest <= 1) return out;
  for (Integer d = 2; d * d <= rest; ++d) {
    if (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t()) != 0) {
      out.push_back(d);
      while (mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t()) != 0)
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), d.get_mpz_t());
    }
  }
  if (rest > 1) out.push_back(rest);
  return out;
}

bool is_prime(const Integer& value) {
  if (value < 2) return false;
  return mpz_probab_prime_p(value.get_mpz_t(), 40) != 0;
}

Integer power(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Integer p_part(const Integer& value, const Integer& p) {
  return power(p, static_cast<unsigned long>(p_valuation(value, p)));
}

}  // namespace gradedlc
