#pragma once

// A degree-p extension L = K[x]/(g) of an imaginary quadratic field, with g
// monic over O_K; splitting of primes of K in L via factorization of g over
// residue fields, discriminants, and conductor supports of the supported
// order families.

#include <optional>
#include <vector>

#include "selord/classgroup.hpp"
#include "selord/dvr.hpp"
#include "selord/finite_field.hpp"
#include "selord/quadratic_field.hpp"

namespace selord {

// O_K / ν together with the image of ω.
struct ResidueMap {
  ResidueField field;
  ResidueField::Element omega;

  // Image of a ν-integral element (denominators prime to ℓ).
  ResidueField::Element map(const QuadraticNumber& x) const;
};

// F_ℓ for split and ramified ν (ω ↦ (t + b)/2 mod ℓ), and F_ℓ[t]/(m) with m
// the minimal polynomial of ω for inert ν (ω ↦ t). Requires ℓ < 2^31.
ResidueMap residue_field(const PrimeOfK& nu, const Integer& d);

// α ∈ ν for α ∈ O_K.
bool divides(const PrimeOfK& nu, const QuadraticNumber& alpha, const Integer& d);

// ν-adic valuation of α ∈ O_K.
Valuation valuation_at(const PrimeOfK& nu, const QuadraticNumber& alpha, const Integer& d);

// Primes of K dividing a nonzero α ∈ O_K, ascending. Throws
// std::runtime_error when N(α) cannot be factored.
std::vector<PrimeOfK> primes_dividing(const QuadraticNumber& alpha, const Integer& d);

class RelativeExtension {
 public:
  // Coefficients of g from the constant term up; g must be monic with
  // O_K coefficients and of odd prime degree.
  RelativeExtension(const Integer& d, std::vector<QuadraticNumber> coeffs);

  const Integer& base_discriminant() const { return field_.discriminant(); }
  const QuadraticField& field() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<QuadraticNumber>& coefficients() const { return coeffs_; }

  // disc(g) = (-1)^{p(p-1)/2} Res(g, g').
  const QuadraticNumber& disc() const { return disc_; }

  // Coefficients of g(x + c).
  std::vector<QuadraticNumber> shifted(const QuadraticNumber& c) const;

 private:
  QuadraticField field_;
  std::vector<QuadraticNumber> coeffs_;
  QuadraticNumber disc_;
};

// Resultant of two nonzero polynomials over K (coefficients low to high),
// as the determinant of the Sylvester matrix.
QuadraticNumber resultant(const QuadraticField& k, const std::vector<QuadraticNumber>& f,
                          const std::vector<QuadraticNumber>& g);

QuadraticNumber disc_poly(const RelativeExtension& e);

struct SplitShape {
  std::vector<int> degrees;    // distinct irreducible factors of g mod ν, ascending
  bool repeated = false;       // g mod ν has a repeated factor
  bool indeterminate = false;  // ν divides disc(g): not a splitting shape of ν in L

  bool splits_completely() const;
  bool inert() const;  // a single factor of degree p
};

// Reduction of g modulo ν.
FqPoly reduce_polynomial(const RelativeExtension& e, const ResidueMap& rm);

SplitShape splitting_shape(const PrimeOfK& nu, const RelativeExtension& e);

// g(x + c) is Eisenstein at ν for some c ∈ O_K, so ν is totally ramified in
// L. Only possible when g ≡ (x - c)^p (mod ν).
bool eisenstein_after_shift(const PrimeOfK& nu, const RelativeExtension& e);

struct OrderSpec {
  enum class Family { Monogenic, Multiplier };

  Family family = Family::Monogenic;
  std::optional<PrimeOfK> prime;  // Multiplier only

  static OrderSpec monogenic() { return {}; }
  static OrderSpec multiplier(const PrimeOfK& nu) { return {Family::Multiplier, nu}; }
};

struct ConductorSupport {
  std::vector<PrimeOfK> primes;
  bool exact = true;  // false: a superset of the true support
};

// Primes of K dividing N_{L/K} of the conductor of Ω. For O_K[a] the support
// is that of disc(g), exact when L/K is known to be unramified; for
// O_K + νO_L it is {ν}.
ConductorSupport conductor_support(const OrderSpec& spec, const RelativeExtension& e,
                                   bool unramified);

}  // namespace selord
