#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gradedlc {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Exponent of p in value; value must be nonzero.
int p_valuation(const Integer& value, const Integer& p);

/// Distinct positive prime divisors of |value|, ascending. Empty for 0 and +-1.
std::vector<Integer> prime_divisors(const Integer& value);

bool is_prime(const Integer& value);

Integer power(const Integer& base, unsigned long exponent);

/// The p-primary part p^{v_p(value)} of a nonzero value.
Integer p_part(const Integer& value, const Integer& p);

inline std::string to_string(const Integer& value) { return value.get_str(); }

}  // namespace gradedlc
