#pragma once

// Exact arithmetic over the localization Z_(p): p-adic valuations of rationals
// and normal forms of nonsingular matrices up to GL_n(Z_(p)) equivalence.

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "selord/primes.hpp"

namespace selord {

class DegenerateLattice : public std::domain_error {
 public:
  DegenerateLattice() : std::domain_error("degenerate lattice") {}
};

// ord_p, with +infinity for zero.
class Valuation {
 public:
  explicit Valuation(long v) : infinite_(false), value_(v) {}
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return infinite_; }
  long value() const;

  friend Valuation operator+(Valuation a, Valuation b);
  auto operator<=>(const Valuation&) const = default;

 private:
  Valuation() : infinite_(true), value_(0) {}
  bool infinite_;
  long value_;
};

Valuation val(const Rational& x, const Integer& prime);

// An element of Q viewed inside Q_p.
class LocalScalar {
 public:
  LocalScalar(Rational value, Integer prime);

  const Rational& value() const { return value_; }
  const Integer& prime() const { return prime_; }
  Valuation val() const { return selord::val(value_, prime_); }
  bool is_integral() const;  // val >= 0
  bool is_unit() const;      // val == 0

  LocalScalar operator+(const LocalScalar& o) const;
  LocalScalar operator*(const LocalScalar& o) const;

 private:
  Rational value_;
  Integer prime_;
};

// Square rational matrix with a distinguished prime. Columns of a nonsingular
// LocalMatrix are read as a basis of a Z_(p)-lattice in Q_p^n.
class LocalMatrix {
 public:
  LocalMatrix(std::size_t n, Integer prime);
  LocalMatrix(const std::vector<std::vector<Rational>>& rows, Integer prime);

  static LocalMatrix identity(std::size_t n, const Integer& prime);
  static LocalMatrix diagonal(const std::vector<Rational>& diag, const Integer& prime);

  std::size_t size() const { return n_; }
  const Integer& prime() const { return prime_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  LocalMatrix operator*(const LocalMatrix& o) const;
  LocalMatrix scaled(const Rational& s) const;
  LocalMatrix transpose() const;
  LocalMatrix inverse() const;  // throws DegenerateLattice
  Rational determinant() const;

  void swap_columns(std::size_t a, std::size_t b);
  // column(dst) -= factor * column(src)
  void subtract_column(std::size_t dst, std::size_t src, const Rational& factor);
  void scale_column(std::size_t c, const Rational& s);

  // Every entry has nonnegative valuation.
  bool is_integral() const;

  bool operator==(const LocalMatrix& o) const;

 private:
  void check_compatible(const LocalMatrix& o) const;

  std::size_t n_;
  Integer prime_;
  std::vector<Rational> entries_;
};

// Valuations a_1 <= ... <= a_n of the invariant factors of A over Z_(p).
// Pivot: entry of minimal valuation, ties to lowest (row, column).
std::vector<long> smith_invariants(const LocalMatrix& a);

// Canonical basis of the column span of A over Z_(p): upper triangular,
// diagonal entries p^e_i, and each entry to the right of a pivot reduced to
// the representative of its class modulo p^e_i Z_(p) lying in Z[1/p] ∩ [0, p^e_i).
LocalMatrix hnf_local(const LocalMatrix& a);

// Representative of x modulo p^e Z_(p) in Z[1/p] ∩ [0, p^e).
Rational reduce_mod_prime_power(const Rational& x, const Integer& prime, long e);

// p^e for any integer e.
Rational prime_power(const Integer& prime, long e);

}  // namespace selord
