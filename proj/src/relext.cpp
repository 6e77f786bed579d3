#include "selord/relext.hpp"

#include <algorithm>
#include <stdexcept>

namespace selord {

using Element = ResidueField::Element;

namespace {

std::int64_t small_prime(const Integer& ell) {
  if (ell >= (Integer(1) << 31)) throw std::invalid_argument("residue field: prime too large");
  return ell.get_si();
}

// ω ≡ (t + b)/2 modulo a split or ramified ν.
Integer omega_residue(const PrimeOfK& nu, const QuadraticField& k) {
  return mod((k.trace_omega() + nu.b) / 2, nu.ell);
}

Integer as_integer(const Rational& x) {
  if (x.get_den() != 1) throw std::invalid_argument("expected an element of O_K");
  return x.get_num();
}

}  // namespace

Element ResidueMap::map(const QuadraticNumber& x) const {
  const Integer ell(static_cast<long>(field.characteristic()));
  auto coord = [&](const Rational& q) {
    if (mpz_divisible_p(q.get_den_mpz_t(), ell.get_mpz_t()))
      throw std::domain_error("residue map: element is not integral at the prime");
    return field.mul(field.from_integer(q.get_num()), field.inv(field.from_integer(q.get_den())));
  };
  return field.add(coord(x.u), field.mul(coord(x.v), omega));
}

ResidueMap residue_field(const PrimeOfK& nu, const Integer& d) {
  const QuadraticField k(d);
  const std::int64_t ell = small_prime(nu.ell);
  if (nu.kind == PrimeKind::Inert) {
    // t^2 - t_ω t + n_ω
    Integer c1 = -k.trace_omega();
    ResidueField f = ResidueField::quadratic(ell, mod(c1, nu.ell).get_si(),
                                             mod(k.norm_omega(), nu.ell).get_si());
    return {f, f.generator()};
  }
  ResidueField f = ResidueField::prime_field(ell);
  return {f, f.from_integer(omega_residue(nu, k))};
}

bool divides(const PrimeOfK& nu, const QuadraticNumber& alpha, const Integer& d) {
  const QuadraticField k(d);
  Integer u = as_integer(alpha.u), v = as_integer(alpha.v);
  if (nu.kind == PrimeKind::Inert)
    return mpz_divisible_p(u.get_mpz_t(), nu.ell.get_mpz_t()) &&
           mpz_divisible_p(v.get_mpz_t(), nu.ell.get_mpz_t());
  return mod(u + v * omega_residue(nu, k), nu.ell) == 0;
}

Valuation valuation_at(const PrimeOfK& nu, const QuadraticNumber& alpha, const Integer& d) {
  if (alpha.is_zero()) return Valuation::infinity();
  const QuadraticField k(d);
  Integer u = as_integer(alpha.u), v = as_integer(alpha.v);
  switch (nu.kind) {
    case PrimeKind::Inert: {
      if (u == 0) return Valuation(ord(v, nu.ell));
      if (v == 0) return Valuation(ord(u, nu.ell));
      return Valuation(std::min(ord(u, nu.ell), ord(v, nu.ell)));
    }
    case PrimeKind::Ramified:
      return Valuation(ord(as_integer(k.norm(alpha)), nu.ell));
    case PrimeKind::Split:
      break;
  }
  // O_K/ν^e ≅ Z/ℓ^e with ω ↦ the Hensel lift of its residue; e exceeds v_ν(α)
  // because v_ν(α) <= v_ℓ(N α).
  const long e = ord(as_integer(k.norm(alpha)), nu.ell) + 1;
  Integer modulus;
  mpz_pow_ui(modulus.get_mpz_t(), nu.ell.get_mpz_t(), static_cast<unsigned long>(e));
  Integer r = omega_residue(nu, k);
  const Integer& t = k.trace_omega();
  const Integer& n = k.norm_omega();
  for (long i = 0; i < e; ++i) {
    Integer fr = r * r - t * r + n;
    Integer dfr = 2 * r - t;
    r = mod(r - fr * inverse_mod(dfr, modulus), modulus);
  }
  Integer image = mod(u + v * r, modulus);
  return Valuation(image == 0 ? e : ord(image, nu.ell));
}

std::vector<PrimeOfK> primes_dividing(const QuadraticNumber& alpha, const Integer& d) {
  if (alpha.is_zero()) throw std::domain_error("primes_dividing: zero");
  const QuadraticField k(d);
  std::vector<PrimeOfK> out;
  for (const auto& [ell, e] : factor(as_integer(k.norm(alpha))))
    for (const auto& nu : primes_above(ell, d))
      if (divides(nu, alpha, d)) out.push_back(nu);
  return out;
}

// RelativeExtension

QuadraticNumber resultant(const QuadraticField& k, const std::vector<QuadraticNumber>& f,
                          const std::vector<QuadraticNumber>& g) {
  if (f.empty() || g.empty()) throw std::invalid_argument("resultant: zero polynomial");
  const std::size_t m = f.size() - 1, n = g.size() - 1;
  const std::size_t size = m + n;
  if (size == 0) return {1, 0};
  std::vector<std::vector<QuadraticNumber>> s(size, std::vector<QuadraticNumber>(size));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];

  QuadraticNumber det{1, 0};
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t piv = c;
    while (piv < size && s[piv][c].is_zero()) ++piv;
    if (piv == size) return {0, 0};
    if (piv != c) {
      std::swap(s[piv], s[c]);
      det = k.neg(det);
    }
    det = k.mul(det, s[c][c]);
    QuadraticNumber inv = k.inverse(s[c][c]);
    for (std::size_t r = c + 1; r < size; ++r) {
      if (s[r][c].is_zero()) continue;
      QuadraticNumber factor = k.mul(s[r][c], inv);
      for (std::size_t j = c; j < size; ++j) s[r][j] = k.sub(s[r][j], k.mul(factor, s[c][j]));
    }
  }
  return det;
}

RelativeExtension::RelativeExtension(const Integer& d, std::vector<QuadraticNumber> coeffs)
    : field_(d), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw std::invalid_argument("RelativeExtension: g must be nonconstant");
  if (coeffs_.back() != QuadraticNumber{1, 0})
    throw std::invalid_argument("RelativeExtension: g must be monic");
  for (const auto& c : coeffs_)
    if (!c.is_integral())
      throw std::invalid_argument("RelativeExtension: coefficients must lie in O_K");
  const int p = degree();
  if (p % 2 == 0 || !is_prime(Integer(p)))
    throw std::invalid_argument("RelativeExtension: degree must be an odd prime");
  std::vector<QuadraticNumber> deriv;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    deriv.push_back({coeffs_[i].u * static_cast<long>(i), coeffs_[i].v * static_cast<long>(i)});
  disc_ = resultant(field_, coeffs_, deriv);
  if ((p * (p - 1) / 2) % 2 == 1) disc_ = field_.neg(disc_);
}

std::vector<QuadraticNumber> RelativeExtension::shifted(const QuadraticNumber& c) const {
  std::vector<QuadraticNumber> a = coeffs_;
  const std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j-- > i;) a[j] = field_.add(a[j], field_.mul(c, a[j + 1]));
  return a;
}

QuadraticNumber disc_poly(const RelativeExtension& e) { return e.disc(); }

// Shapes

bool SplitShape::splits_completely() const {
  return !indeterminate && !repeated && !degrees.empty() &&
         std::all_of(degrees.begin(), degrees.end(), [](int x) { return x == 1; });
}

bool SplitShape::inert() const {
  return !indeterminate && !repeated && degrees.size() == 1 && degrees.front() > 1;
}

FqPoly reduce_polynomial(const RelativeExtension& e, const ResidueMap& rm) {
  PolyArith arith(rm.field);
  FqPoly out;
  for (const auto& c : e.coefficients()) out.push_back(rm.map(c));
  return arith.trim(std::move(out));
}

SplitShape splitting_shape(const PrimeOfK& nu, const RelativeExtension& e) {
  const Integer& d = e.base_discriminant();
  ResidueMap rm = residue_field(nu, d);
  PolyArith arith(rm.field);
  FactorDegrees fd = factor_degrees(arith, reduce_polynomial(e, rm));
  SplitShape out;
  out.degrees = std::move(fd.degrees);
  std::sort(out.degrees.begin(), out.degrees.end());
  out.repeated = fd.repeated;
  out.indeterminate = divides(nu, e.disc(), d);
  return out;
}

bool eisenstein_after_shift(const PrimeOfK& nu, const RelativeExtension& e) {
  const Integer& d = e.base_discriminant();
  ResidueMap rm = residue_field(nu, d);
  PolyArith arith(rm.field);
  FqPoly gbar = reduce_polynomial(e, rm);
  FactorDegrees fd = factor_degrees(arith, gbar);
  if (!fd.repeated || fd.degrees != std::vector<int>{1}) return false;
  // The unique root of g mod ν.
  FqPoly frob = arith.sub(arith.powmod(arith.x(), rm.field.order(), gbar), arith.x());
  FqPoly lin = arith.gcd(gbar, frob);
  if (arith.degree(lin) != 1) return false;
  Element root = rm.field.neg(lin[0]);
  QuadraticNumber c{Rational(root.a), Rational(root.b)};
  auto shifted = e.shifted(c);
  for (std::size_t i = 0; i + 1 < shifted.size(); ++i)
    if (valuation_at(nu, shifted[i], d) < Valuation(1)) return false;
  return valuation_at(nu, shifted[0], d) == Valuation(1);
}

ConductorSupport conductor_support(const OrderSpec& spec, const RelativeExtension& e,
                                   bool unramified) {
  if (spec.family == OrderSpec::Family::Multiplier) {
    if (!spec.prime) throw std::invalid_argument("conductor_support: multiplier family needs a prime");
    return {{*spec.prime}, true};
  }
  if (e.disc().is_zero()) throw std::invalid_argument("conductor_support: g is not squarefree");
  return {primes_dividing(e.disc(), e.base_discriminant()), unramified};
}

}  // namespace selord
