#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace selord {

using Integer = mpz_class;
using Rational = mpq_class;

// The first `count` rational primes, ascending.
std::vector<std::int64_t> first_primes(std::size_t count);

bool is_prime(const Integer& n);

// Exponent of p in n (n != 0, p >= 2).
long ord(const Integer& n, const Integer& p);

// Factorization of |n| as (prime, exponent) pairs, ascending. Trial division up
// to `trial_limit`, then a primality test on the cofactor; throws
// std::runtime_error if a composite cofactor remains.
std::vector<std::pair<Integer, int>> factor(const Integer& n,
                                            std::int64_t trial_limit = 2'000'000);

// Least nonnegative residue.
Integer mod(const Integer& a, const Integer& m);

// Inverse of a modulo m; throws std::domain_error when not invertible.
Integer inverse_mod(const Integer& a, const Integer& m);

}  // namespace selord
