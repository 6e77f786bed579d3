#include "selord/finite_field.hpp"

#include <stdexcept>
#include <utility>

namespace selord {

using Element = ResidueField::Element;

ResidueField ResidueField::prime_field(std::int64_t ell) {
  if (ell < 2 || ell >= (std::int64_t{1} << 31))
    throw std::invalid_argument("ResidueField: characteristic out of range");
  return ResidueField(ell, 1, 0, 0);
}

ResidueField ResidueField::quadratic(std::int64_t ell, std::int64_t c1, std::int64_t c0) {
  ResidueField f = prime_field(ell);
  f.degree_ = 2;
  f.c1_ = f.reduce(c1);
  f.c0_ = f.reduce(c0);
  for (std::int64_t r = 0; r < ell; ++r)
    if (f.reduce(f.mulmod(r, r) + f.mulmod(f.c1_, r) + f.c0_) == 0)
      throw std::invalid_argument("ResidueField: modulus is not irreducible");
  return f;
}

Integer ResidueField::order() const {
  Integer q = ell_;
  return degree_ == 2 ? Integer(q * q) : q;
}

std::int64_t ResidueField::reduce(std::int64_t x) const {
  std::int64_t r = x % ell_;
  return r < 0 ? r + ell_ : r;
}

std::int64_t ResidueField::mulmod(std::int64_t x, std::int64_t y) const {
  return static_cast<std::int64_t>(static_cast<__int128>(x) * y % ell_);
}

Element ResidueField::from_integer(const Integer& n) const {
  Integer r = mod(n, Integer(static_cast<long>(ell_)));
  return {static_cast<std::int64_t>(r.get_si()), 0};
}

Element ResidueField::generator() const {
  if (degree_ != 2) throw std::logic_error("ResidueField: prime field has no generator t");
  return {0, 1};
}

Element ResidueField::add(Element x, Element y) const {
  return {reduce(x.a + y.a), reduce(x.b + y.b)};
}

Element ResidueField::sub(Element x, Element y) const {
  return {reduce(x.a - y.a), reduce(x.b - y.b)};
}

Element ResidueField::neg(Element x) const { return {reduce(-x.a), reduce(-x.b)}; }

Element ResidueField::mul(Element x, Element y) const {
  if (degree_ == 1) return {mulmod(x.a, y.a), 0};
  // t^2 = -c1 t - c0
  std::int64_t bd = mulmod(x.b, y.b);
  std::int64_t a = reduce(mulmod(x.a, y.a) - mulmod(bd, c0_));
  std::int64_t b = reduce(mulmod(x.a, y.b) + mulmod(x.b, y.a) - mulmod(bd, c1_));
  return {a, b};
}

Element ResidueField::pow(Element x, const Integer& e) const {
  if (e < 0) return pow(inv(x), -e);
  Element result = one();
  for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), bit)) result = mul(result, x);
  }
  return result;
}

Element ResidueField::inv(Element x) const {
  if (x == zero()) throw std::domain_error("ResidueField: inverse of zero");
  auto inv_prime = [this](std::int64_t a) {
    Integer r = inverse_mod(Integer(static_cast<long>(a)), Integer(static_cast<long>(ell_)));
    return static_cast<std::int64_t>(r.get_si());
  };
  if (degree_ == 1) return {inv_prime(x.a), 0};
  // (a + bt)((a - b c1) - bt) = a^2 - a b c1 + b^2 c0
  Element conj{reduce(x.a - mulmod(x.b, c1_)), reduce(-x.b)};
  std::int64_t norm =
      reduce(mulmod(x.a, x.a) - mulmod(mulmod(x.a, x.b), c1_) + mulmod(mulmod(x.b, x.b), c0_));
  std::int64_t s = inv_prime(norm);
  return {mulmod(conj.a, s), mulmod(conj.b, s)};
}

// PolyArith

FqPoly PolyArith::trim(FqPoly a) const {
  while (!a.empty() && a.back() == f_.zero()) a.pop_back();
  return a;
}

FqPoly PolyArith::add(const FqPoly& a, const FqPoly& b) const {
  FqPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f_.add(i < a.size() ? a[i] : f_.zero(), i < b.size() ? b[i] : f_.zero());
  return trim(std::move(out));
}

FqPoly PolyArith::sub(const FqPoly& a, const FqPoly& b) const {
  FqPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f_.sub(i < a.size() ? a[i] : f_.zero(), i < b.size() ? b[i] : f_.zero());
  return trim(std::move(out));
}

FqPoly PolyArith::mul(const FqPoly& a, const FqPoly& b) const {
  if (a.empty() || b.empty()) return {};
  FqPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = f_.add(out[i + j], f_.mul(a[i], b[j]));
  return trim(std::move(out));
}

FqPoly PolyArith::scale(const FqPoly& a, Element s) const {
  FqPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f_.mul(a[i], s);
  return trim(std::move(out));
}

void PolyArith::divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) const {
  if (b.empty()) throw std::domain_error("PolyArith: division by zero polynomial");
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, f_.zero());
  Element lead_inv = f_.inv(b.back());
  while (r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    Element c = f_.mul(r.back(), lead_inv);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i)
      r[shift + i] = f_.sub(r[shift + i], f_.mul(c, b[i]));
    r = trim(std::move(r));
  }
  q = trim(std::move(q));
}

FqPoly PolyArith::rem(const FqPoly& a, const FqPoly& b) const {
  FqPoly q, r;
  divmod(a, b, q, r);
  return r;
}

FqPoly PolyArith::monic(const FqPoly& a) const {
  if (a.empty()) return a;
  return scale(a, f_.inv(a.back()));
}

FqPoly PolyArith::gcd(FqPoly a, FqPoly b) const {
  while (!b.empty()) {
    FqPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

FqPoly PolyArith::derivative(const FqPoly& a) const {
  if (a.size() <= 1) return {};
  FqPoly out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    out[i - 1] = f_.mul(a[i], f_.from_integer(Integer(static_cast<unsigned long>(i))));
  return trim(std::move(out));
}

FqPoly PolyArith::powmod(const FqPoly& base, const Integer& e, const FqPoly& modulus) const {
  FqPoly result = rem({f_.one()}, modulus);
  FqPoly b = rem(base, modulus);
  for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
    result = rem(mul(result, result), modulus);
    if (mpz_tstbit(e.get_mpz_t(), bit)) result = rem(mul(result, b), modulus);
  }
  return result;
}

Element PolyArith::eval(const FqPoly& a, Element x) const {
  Element acc = f_.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), a[i]);
  return acc;
}

FactorDegrees factor_degrees(const PolyArith& arith, const FqPoly& f) {
  if (arith.degree(f) < 1) throw std::invalid_argument("factor_degrees: constant polynomial");
  const Integer q = arith.field().order();
  FactorDegrees out;
  FqPoly rest = arith.monic(f);
  FqPoly h = arith.rem(arith.x(), rest);
  for (long i = 1; arith.degree(rest) > 0; ++i) {
    // Every irreducible factor of degree < i has been removed with its multiplicity.
    if (arith.degree(rest) < 2 * i) {
      out.degrees.push_back(static_cast<int>(arith.degree(rest)));
      break;
    }
    h = arith.powmod(h, q, rest);
    FqPoly g = arith.gcd(arith.sub(h, arith.x()), rest);
    if (arith.degree(g) > 0) {
      for (long k = 0; k < arith.degree(g) / i; ++k) out.degrees.push_back(static_cast<int>(i));
      FqPoly quot, r;
      arith.divmod(rest, g, quot, r);
      rest = std::move(quot);
      for (FqPoly c = arith.gcd(rest, g); arith.degree(c) > 0; c = arith.gcd(rest, g)) {
        out.repeated = true;
        arith.divmod(rest, c, quot, r);
        rest = std::move(quot);
      }
      if (arith.degree(rest) > 0) h = arith.rem(h, rest);
    }
  }
  return out;
}

std::vector<std::int64_t> char_poly_mod(const std::vector<std::vector<std::int64_t>>& m,
                                        std::int64_t ell) {
  const ResidueField f = ResidueField::prime_field(ell);
  const PolyArith arith(f);
  const std::size_t n = m.size();
  std::vector<std::vector<Element>> h(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = f.from_integer(Integer(static_cast<long>(m[i][j])));

  // Similarity transforms to upper Hessenberg form.
  for (std::size_t col = 0; col + 2 < n; ++col) {
    std::size_t piv = col + 1;
    while (piv < n && h[piv][col] == f.zero()) ++piv;
    if (piv == n) continue;
    if (piv != col + 1) {
      std::swap(h[piv], h[col + 1]);
      for (std::size_t i = 0; i < n; ++i) std::swap(h[i][piv], h[i][col + 1]);
    }
    Element pinv = f.inv(h[col + 1][col]);
    for (std::size_t i = col + 2; i < n; ++i) {
      Element u = f.mul(h[i][col], pinv);
      if (u == f.zero()) continue;
      for (std::size_t j = 0; j < n; ++j) h[i][j] = f.sub(h[i][j], f.mul(u, h[col + 1][j]));
      for (std::size_t j = 0; j < n; ++j) h[j][col + 1] = f.add(h[j][col + 1], f.mul(u, h[j][i]));
    }
  }

  // p_k = (x - h_kk) p_{k-1} - sum_i h_ik (h_{i+1,i} ... h_{k,k-1}) p_{i-1}, 1-based.
  std::vector<FqPoly> p(n + 1);
  p[0] = {f.one()};
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = arith.mul(arith.sub(arith.x(), arith.trim({h[k - 1][k - 1]})), p[k - 1]);
    Element t = f.one();
    for (std::size_t i = k - 1; i >= 1; --i) {
      t = f.mul(t, h[i][i - 1]);
      Element coeff = f.mul(h[i - 1][k - 1], t);
      p[k] = arith.sub(p[k], arith.scale(p[i - 1], coeff));
    }
  }
  std::vector<std::int64_t> out;
  for (const auto& c : p[n]) out.push_back(c.a);
  out.resize(n + 1, 0);
  return out;
}

bool is_reducible_mod(const std::vector<std::int64_t>& poly, std::int64_t ell) {
  const ResidueField f = ResidueField::prime_field(ell);
  const PolyArith arith(f);
  FqPoly g;
  for (auto c : poly) g.push_back(f.from_integer(Integer(static_cast<long>(c))));
  g = arith.trim(std::move(g));
  FactorDegrees d = factor_degrees(arith, g);
  return d.repeated || d.degrees.size() > 1;
}

}  // namespace selord
