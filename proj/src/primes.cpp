#include "selord/primes.hpp"

#include <cmath>
#include <stdexcept>

namespace selord {

std::vector<std::int64_t> first_primes(std::size_t count) {
  std::vector<std::int64_t> out;
  if (count == 0) return out;
  // n log n + n log log n bounds the count-th prime for count >= 6.
  double n = static_cast<double>(std::max<std::size_t>(count, 6));
  auto limit = static_cast<std::size_t>(n * (std::log(n) + std::log(std::log(n)))) + 16;
  std::vector<bool> composite(limit + 1, false);
  for (std::size_t i = 2; i <= limit && out.size() < count; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::int64_t>(i));
    for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

long ord(const Integer& n, const Integer& p) {
  if (n == 0) throw std::domain_error("ord of zero");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

std::vector<std::pair<Integer, int>> factor(const Integer& n, std::int64_t trial_limit) {
  std::vector<std::pair<Integer, int>> out;
  Integer rest = abs(n);
  if (rest == 0) throw std::domain_error("factor of zero");
  for (std::int64_t q = 2; q <= trial_limit; q += (q == 2 ? 1 : 2)) {
    if (Integer(q) * q > rest) break;
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(q))) {
      rest /= q;
      ++e;
    }
    if (e > 0) out.emplace_back(Integer(q), e);
  }
  if (rest > 1) {
    if (!is_prime(rest)) throw std::runtime_error("factor: composite cofactor beyond trial bound");
    out.emplace_back(rest, 1);
  }
  return out;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("inverse_mod: not invertible");
  return r;
}

}  // namespace selord
