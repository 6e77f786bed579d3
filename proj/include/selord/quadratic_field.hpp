#pragma once

// Arithmetic in an imaginary quadratic field K = Q(sqrt d) on the basis 1, ω,
// where ω = (1 + sqrt d)/2 for d ≡ 1 (mod 4) and ω = sqrt(d)/2 otherwise.
// ω satisfies ω² = t·ω - n.

#include <string>

#include "selord/primes.hpp"

namespace selord {

// u + v·ω with rational coordinates; integral iff both are integers.
struct QuadraticNumber {
  Rational u, v;

  bool operator==(const QuadraticNumber&) const = default;
  bool is_zero() const { return u == 0 && v == 0; }
  bool is_integral() const { return u.get_den() == 1 && v.get_den() == 1; }
};

class QuadraticField {
 public:
  explicit QuadraticField(const Integer& d);  // d a fundamental discriminant

  const Integer& discriminant() const { return d_; }
  const Integer& trace_omega() const { return t_; }  // t
  const Integer& norm_omega() const { return n_; }   // n

  QuadraticNumber add(const QuadraticNumber& x, const QuadraticNumber& y) const;
  QuadraticNumber sub(const QuadraticNumber& x, const QuadraticNumber& y) const;
  QuadraticNumber neg(const QuadraticNumber& x) const;
  QuadraticNumber mul(const QuadraticNumber& x, const QuadraticNumber& y) const;
  QuadraticNumber conjugate(const QuadraticNumber& x) const;
  Rational norm(const QuadraticNumber& x) const;
  QuadraticNumber inverse(const QuadraticNumber& x) const;  // throws std::domain_error on 0

  std::string to_string(const QuadraticNumber& x) const;

 private:
  Integer d_, t_, n_;
};

}  // namespace selord
