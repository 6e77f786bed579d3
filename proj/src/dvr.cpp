#include "selord/dvr.hpp"

#include <utility>

namespace selord {

long Valuation::value() const {
  if (infinite_) throw std::domain_error("value of infinite valuation");
  return value_;
}

Valuation operator+(Valuation a, Valuation b) {
  if (a.infinite_ || b.infinite_) return Valuation::infinity();
  return Valuation(a.value_ + b.value_);
}

Valuation val(const Rational& x, const Integer& prime) {
  if (prime < 2) throw std::invalid_argument("val: prime must be >= 2");
  if (x == 0) return Valuation::infinity();
  return Valuation(ord(x.get_num(), prime) - ord(x.get_den(), prime));
}

Rational prime_power(const Integer& prime, long e) {
  Integer q;
  mpz_pow_ui(q.get_mpz_t(), prime.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(q);
  Rational r(Integer(1), q);
  r.canonicalize();
  return r;
}

Rational reduce_mod_prime_power(const Rational& x, const Integer& prime, long e) {
  Valuation v = val(x, prime);
  if (v >= Valuation(e)) return Rational(0);
  // x = num / (p^k d') with gcd(d', p) = 1; since v < e we have e + k >= 1.
  Integer den_rest;
  long k = static_cast<long>(
      mpz_remove(den_rest.get_mpz_t(), x.get_den().get_mpz_t(), prime.get_mpz_t()));
  Integer modulus = prime_power(prime, e + k).get_num();
  Integer r = mod(x.get_num() * inverse_mod(den_rest, modulus), modulus);
  Rational out(r, prime_power(prime, k).get_num());
  out.canonicalize();
  return out;
}

// LocalScalar

LocalScalar::LocalScalar(Rational value, Integer prime)
    : value_(std::move(value)), prime_(std::move(prime)) {
  if (prime_ < 2) throw std::invalid_argument("LocalScalar: prime must be >= 2");
  value_.canonicalize();
}

bool LocalScalar::is_integral() const { return val() >= Valuation(0); }

bool LocalScalar::is_unit() const { return val() == Valuation(0); }

LocalScalar LocalScalar::operator+(const LocalScalar& o) const {
  if (prime_ != o.prime_) throw std::invalid_argument("LocalScalar: prime mismatch");
  return LocalScalar(value_ + o.value_, prime_);
}

LocalScalar LocalScalar::operator*(const LocalScalar& o) const {
  if (prime_ != o.prime_) throw std::invalid_argument("LocalScalar: prime mismatch");
  return LocalScalar(value_ * o.value_, prime_);
}

// LocalMatrix

LocalMatrix::LocalMatrix(std::size_t n, Integer prime)
    : n_(n), prime_(std::move(prime)), entries_(n * n) {
  if (prime_ < 2) throw std::invalid_argument("LocalMatrix: prime must be >= 2");
}

LocalMatrix::LocalMatrix(const std::vector<std::vector<Rational>>& rows, Integer prime)
    : LocalMatrix(rows.size(), std::move(prime)) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) throw std::invalid_argument("LocalMatrix: not square");
    for (std::size_t j = 0; j < n_; ++j) {
      (*this)(i, j) = rows[i][j];
      (*this)(i, j).canonicalize();
    }
  }
}

LocalMatrix LocalMatrix::identity(std::size_t n, const Integer& prime) {
  LocalMatrix m(n, prime);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

LocalMatrix LocalMatrix::diagonal(const std::vector<Rational>& diag, const Integer& prime) {
  LocalMatrix m(diag.size(), prime);
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

void LocalMatrix::check_compatible(const LocalMatrix& o) const {
  if (n_ != o.n_ || prime_ != o.prime_)
    throw std::invalid_argument("LocalMatrix: dimension or prime mismatch");
}

LocalMatrix LocalMatrix::operator*(const LocalMatrix& o) const {
  check_compatible(o);
  LocalMatrix out(n_, prime_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

LocalMatrix LocalMatrix::scaled(const Rational& s) const {
  LocalMatrix out = *this;
  for (auto& e : out.entries_) e *= s;
  return out;
}

LocalMatrix LocalMatrix::transpose() const {
  LocalMatrix out(n_, prime_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

LocalMatrix LocalMatrix::inverse() const {
  LocalMatrix a = *this;
  LocalMatrix inv = identity(n_, prime_);
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && a(piv, c) == 0) ++piv;
    if (piv == n_) throw DegenerateLattice();
    if (piv != c)
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    Rational s = 1 / a(c, c);
    for (std::size_t j = 0; j < n_; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n_; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Rational LocalMatrix::determinant() const {
  LocalMatrix a = *this;
  Rational det = 1;
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && a(piv, c) == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n_; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n_; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

void LocalMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < n_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void LocalMatrix::subtract_column(std::size_t dst, std::size_t src, const Rational& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < n_; ++i)
    if ((*this)(i, src) != 0) (*this)(i, dst) -= factor * (*this)(i, src);
}

void LocalMatrix::scale_column(std::size_t c, const Rational& s) {
  for (std::size_t i = 0; i < n_; ++i) (*this)(i, c) *= s;
}

bool LocalMatrix::is_integral() const {
  for (const auto& e : entries_)
    if (e != 0 && ord(e.get_den(), prime_) > 0) return false;
  return true;
}

bool LocalMatrix::operator==(const LocalMatrix& o) const {
  return n_ == o.n_ && prime_ == o.prime_ && entries_ == o.entries_;
}

// Normal forms

std::vector<long> smith_invariants(const LocalMatrix& a) {
  const std::size_t n = a.size();
  const Integer& p = a.prime();
  LocalMatrix m = a;
  std::vector<long> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    Valuation best = Valuation::infinity();
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        Valuation v = val(m(i, j), p);
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (best.is_infinite()) throw DegenerateLattice();
    if (pr != k)
      for (std::size_t j = k; j < n; ++j) std::swap(m(pr, j), m(k, j));
    m.swap_columns(pc, k);
    const Rational pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / pivot;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
    // The matching column operations only clear row k.
    for (std::size_t j = k + 1; j < n; ++j) m(k, j) = 0;
    out.push_back(best.value());
  }
  return out;
}

LocalMatrix hnf_local(const LocalMatrix& a) {
  const std::size_t n = a.size();
  const Integer& p = a.prime();
  LocalMatrix h = a;
  std::vector<long> exps(n);
  for (std::size_t r = n; r-- > 0;) {
    std::size_t pc = n;
    Valuation best = Valuation::infinity();
    for (std::size_t c = 0; c <= r; ++c) {
      Valuation v = val(h(r, c), p);
      if (v < best) {
        best = v;
        pc = c;
      }
    }
    if (best.is_infinite()) throw DegenerateLattice();
    h.swap_columns(pc, r);
    exps[r] = best.value();
    Rational pivot = prime_power(p, exps[r]);
    h.scale_column(r, pivot / h(r, r));
    for (std::size_t c = 0; c < r; ++c)
      if (h(r, c) != 0) h.subtract_column(c, r, h(r, c) / pivot);
  }
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      const Rational& x = h(i, j);
      Rational target = reduce_mod_prime_power(x, p, exps[i]);
      if (target != x) h.subtract_column(j, i, (x - target) / prime_power(p, exps[i]));
    }
  return h;
}

}  // namespace selord
