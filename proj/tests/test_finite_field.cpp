#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "selord/finite_field.hpp"

using namespace selord;
using Element = ResidueField::Element;

namespace {

std::vector<Element> all_elements(const ResidueField& f) {
  std::vector<Element> out;
  const std::int64_t l = f.characteristic();
  for (std::int64_t a = 0; a < l; ++a)
    for (std::int64_t b = 0; b < (f.degree() == 2 ? l : 1); ++b) out.push_back({a, b});
  return out;
}

// Shape by trial division with every monic polynomial of degree 1 and 2;
// after that, a leftover of degree <= 5 has no factor of degree <= 2 and is
// irreducible.
FactorDegrees naive_shape(const PolyArith& ar, FqPoly f) {
  const ResidueField& k = ar.field();
  FactorDegrees out;
  f = ar.monic(f);
  auto strip = [&](const FqPoly& q, int deg) {
    FqPoly quot, rem;
    ar.divmod(f, q, quot, rem);
    if (!rem.empty()) return;
    out.degrees.push_back(deg);
    int mult = 0;
    for (;;) {
      ar.divmod(f, q, quot, rem);
      if (!rem.empty()) break;
      f = quot;
      ++mult;
    }
    if (mult > 1) out.repeated = true;
  };
  auto elems = all_elements(k);
  for (const auto& r : elems) strip({k.neg(r), k.one()}, 1);
  for (const auto& c0 : elems)
    for (const auto& c1 : elems) {
      FqPoly q{c0, c1, k.one()};
      bool has_root = false;
      for (const auto& r : elems)
        if (ar.eval(q, r) == k.zero()) has_root = true;
      if (!has_root) strip(q, 2);
    }
  if (ar.degree(f) > 0) out.degrees.push_back(static_cast<int>(ar.degree(f)));
  std::sort(out.degrees.begin(), out.degrees.end());
  return out;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  ResidueField f = ResidueField::prime_field(7);
  CHECK(f.order() == 7);
  CHECK(f.mul({3, 0}, {5, 0}) == Element{1, 0});
  CHECK(f.inv({3, 0}) == Element{5, 0});
  CHECK(f.pow({3, 0}, 6) == f.one());
  CHECK_THROWS_AS(f.inv(f.zero()), std::domain_error);
}

TEST_CASE("quadratic extension arithmetic") {
  // F_25 = F_5[t]/(t^2 - t + 6), the residue field of an inert prime above 5 for d = -23.
  ResidueField f = ResidueField::quadratic(5, -1, 6);
  CHECK(f.order() == 25);
  Element t = f.generator();
  CHECK(f.add(f.sub(f.mul(t, t), t), f.from_integer(6)) == f.zero());
  for (const auto& x : all_elements(f)) {
    if (x == f.zero()) continue;
    CHECK(f.mul(x, f.inv(x)) == f.one());
    CHECK(f.pow(x, 24) == f.one());
  }
  CHECK_THROWS_AS(ResidueField::quadratic(5, 0, -1), std::invalid_argument);  // t^2 - 1
}

TEST_CASE("shapes: fixed examples") {
  PolyArith f5(ResidueField::prime_field(5));
  auto e5 = [&](std::initializer_list<long> c) {
    FqPoly out;
    for (long x : c) out.push_back(f5.field().from_integer(x));
    return f5.trim(out);
  };
  CHECK(factor_degrees(f5, e5({0, -1, 0, 1})).degrees == std::vector<int>{1, 1, 1});
  PolyArith f2(ResidueField::prime_field(2));
  FqPoly g{{1, 0}, {1, 0}, {0, 0}, {1, 0}};
  CHECK(factor_degrees(f2, g).degrees == std::vector<int>{3});
  FactorDegrees sq = factor_degrees(f5, e5({1, -2, 1}));
  CHECK(sq.degrees == std::vector<int>{1});
  CHECK(sq.repeated);
}

TEST_CASE("shapes agree with trial division over small fields") {
  std::mt19937_64 rng(31);
  std::vector<ResidueField> fields{ResidueField::prime_field(2), ResidueField::prime_field(3),
                                   ResidueField::prime_field(5), ResidueField::prime_field(7),
                                   ResidueField::prime_field(11), ResidueField::quadratic(2, 1, 1),
                                   ResidueField::quadratic(3, 0, 1), ResidueField::quadratic(5, -1, 6),
                                   ResidueField::quadratic(11, 0, 1)};
  for (const auto& k : fields) {
    PolyArith ar(k);
    std::uniform_int_distribution<std::int64_t> coeff(0, k.characteristic() - 1);
    const int samples = k.order() > 100 ? 6 : 60;
    for (int iter = 0; iter < samples; ++iter) {
      const int deg = 1 + iter % 5;
      FqPoly f;
      for (int i = 0; i < deg; ++i) f.push_back({coeff(rng), k.degree() == 2 ? coeff(rng) : 0});
      f.push_back(k.one());
      FactorDegrees fast = factor_degrees(ar, f);
      FactorDegrees slow = naive_shape(ar, f);
      std::sort(fast.degrees.begin(), fast.degrees.end());
      CHECK(fast.degrees == slow.degrees);
      CHECK(fast.repeated == slow.repeated);
      FqPoly g = ar.gcd(f, ar.derivative(f));
      CHECK(fast.repeated == (ar.degree(g) > 0));
    }
  }
}

TEST_CASE("characteristic polynomials mod p") {
  // Cofactor expansion of det(xI - M) for 3x3 matrices.
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<std::int64_t> entry(-9, 9);
  for (int iter = 0; iter < 100; ++iter) {
    const std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7}[iter % 4];
    std::vector<std::vector<std::int64_t>> m(3, std::vector<std::int64_t>(3));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    const auto& a = m;
    std::int64_t tr = a[0][0] + a[1][1] + a[2][2];
    std::int64_t minors = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0] +
                          a[1][1] * a[2][2] - a[1][2] * a[2][1];
    std::int64_t det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    auto r = [p](std::int64_t x) { return ((x % p) + p) % p; };
    std::vector<std::int64_t> expect{r(-det), r(minors), r(-tr), 1};
    CHECK(char_poly_mod(m, p) == expect);
  }
}
