#pragma once

// Small finite fields F_l and F_{l^2} = F_l[t]/(t^2 + c1 t + c0) with l < 2^31,
// and dense polynomial arithmetic over them.

#include <cstdint>
#include <vector>

#include "selord/primes.hpp"

namespace selord {

class ResidueField {
 public:
  // a + b·t; b is always 0 in a prime field.
  struct Element {
    std::int64_t a = 0;
    std::int64_t b = 0;
    bool operator==(const Element&) const = default;
  };

  static ResidueField prime_field(std::int64_t ell);
  // F_l[t]/(t^2 + c1 t + c0); the quadratic must be irreducible mod l.
  static ResidueField quadratic(std::int64_t ell, std::int64_t c1, std::int64_t c0);

  std::int64_t characteristic() const { return ell_; }
  int degree() const { return degree_; }
  Integer order() const;  // q

  Element zero() const { return {}; }
  Element one() const { return {1, 0}; }
  Element from_integer(const Integer& n) const;
  Element generator() const;  // t (only meaningful when degree() == 2)

  Element add(Element x, Element y) const;
  Element sub(Element x, Element y) const;
  Element neg(Element x) const;
  Element mul(Element x, Element y) const;
  Element inv(Element x) const;  // throws std::domain_error on zero
  Element pow(Element x, const Integer& e) const;

  bool operator==(const ResidueField& o) const = default;

 private:
  ResidueField(std::int64_t ell, int degree, std::int64_t c1, std::int64_t c0)
      : ell_(ell), degree_(degree), c1_(c1), c0_(c0) {}
  std::int64_t reduce(std::int64_t x) const;
  std::int64_t mulmod(std::int64_t x, std::int64_t y) const;

  std::int64_t ell_;
  int degree_;
  std::int64_t c1_, c0_;
};

// Coefficients low to high, no trailing zeros; the zero polynomial is empty.
using FqPoly = std::vector<ResidueField::Element>;

class PolyArith {
 public:
  explicit PolyArith(ResidueField field) : f_(field) {}

  const ResidueField& field() const { return f_; }

  FqPoly trim(FqPoly a) const;
  long degree(const FqPoly& a) const { return static_cast<long>(a.size()) - 1; }
  FqPoly add(const FqPoly& a, const FqPoly& b) const;
  FqPoly sub(const FqPoly& a, const FqPoly& b) const;
  FqPoly mul(const FqPoly& a, const FqPoly& b) const;
  FqPoly scale(const FqPoly& a, ResidueField::Element s) const;
  // a = q·b + r, deg r < deg b.
  void divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) const;
  FqPoly rem(const FqPoly& a, const FqPoly& b) const;
  FqPoly monic(const FqPoly& a) const;
  FqPoly gcd(FqPoly a, FqPoly b) const;  // monic
  FqPoly derivative(const FqPoly& a) const;
  FqPoly powmod(const FqPoly& base, const Integer& e, const FqPoly& modulus) const;
  ResidueField::Element eval(const FqPoly& a, ResidueField::Element x) const;
  FqPoly x() const { return {f_.zero(), f_.one()}; }

 private:
  ResidueField f_;
};

struct FactorDegrees {
  std::vector<int> degrees;  // one entry per distinct irreducible factor, ascending
  bool repeated = false;     // some irreducible factor has multiplicity > 1
};

// Degrees of the distinct monic irreducible factors of a nonconstant f,
// by the ladder gcd(x^{q^i} - x, f).
FactorDegrees factor_degrees(const PolyArith& arith, const FqPoly& f);

// Characteristic polynomial of a square matrix over F_l (entries already
// reduced), via reduction to Hessenberg form. Monic, low to high.
std::vector<std::int64_t> char_poly_mod(const std::vector<std::vector<std::int64_t>>& m,
                                        std::int64_t ell);

// Whether a nonconstant polynomial over F_l factors nontrivially.
bool is_reducible_mod(const std::vector<std::int64_t>& poly, std::int64_t ell);

}  // namespace selord
