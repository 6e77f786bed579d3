#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"
#include "selord/dvr.hpp"

using namespace selord;

namespace {

bool is_hnf(const LocalMatrix& h) {
  const Integer& p = h.prime();
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (h(i, j) != 0) return false;
    Rational d = h(i, i);
    long e = val(d, p).value();
    if (d != prime_power(p, e)) return false;
    for (std::size_t j = i + 1; j < h.size(); ++j)
      if (reduce_mod_prime_power(h(i, j), p, e) != h(i, j)) return false;
  }
  return true;
}

bool same_span(const LocalMatrix& a, const LocalMatrix& b) {
  return (a.inverse() * b).is_integral() && (b.inverse() * a).is_integral();
}

}  // namespace

TEST_CASE("valuations of rationals") {
  CHECK(val(Rational(9, 2), 3) == Valuation(2));
  CHECK(val(Rational(1), 5) == Valuation(0));
  CHECK(val(Rational(3, 8), 2) == Valuation(-3));
  CHECK(val(Rational(0), 7).is_infinite());
  CHECK(Valuation::infinity() > Valuation(1000000));
  CHECK((Valuation(2) + Valuation::infinity()).is_infinite());
}

TEST_CASE("local scalars multiply valuations and bound sums") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-200, 200), den(1, 60);
  for (int iter = 0; iter < 300; ++iter) {
    Integer p = std::vector<int>{2, 3, 5, 7}[iter % 4];
    Rational xq(num(rng), den(rng)), yq(num(rng), den(rng));
    xq.canonicalize();
    yq.canonicalize();
    LocalScalar x(xq, p), y(yq, p);
    CHECK((x * y).val() == x.val() + y.val());
    CHECK((x + y).val() >= std::min(x.val(), y.val()));
    if (x.is_integral()) CHECK(!mpz_divisible_p(xq.get_den_mpz_t(), p.get_mpz_t()));
  }
}

TEST_CASE("smith invariants: fixed examples") {
  CHECK(smith_invariants(LocalMatrix::identity(4, 5)) == std::vector<long>{0, 0, 0, 0});
  CHECK(smith_invariants(LocalMatrix::diagonal({9, 1, 3}, 3)) == std::vector<long>{0, 1, 2});
  LocalMatrix singular({{1, 2}, {2, 4}}, 3);
  CHECK_THROWS_WITH_AS(smith_invariants(singular), "degenerate lattice", DegenerateLattice);
  CHECK_THROWS_AS(hnf_local(singular), DegenerateLattice);
}

TEST_CASE("smith invariants agree with gcds of minors") {
  std::mt19937_64 rng(1);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t n = 2 + static_cast<std::size_t>(iter % 3);
    Integer p = std::vector<int>{2, 3, 5, 7}[(iter / 3) % 4];
    LocalMatrix a = oracle::random_integer_matrix(rng, n, -20, 20, p);
    CHECK(smith_invariants(a) == oracle::smith_by_minors(a));
  }
  for (int iter = 0; iter < 60; ++iter) {
    LocalMatrix a = oracle::random_rational_matrix(rng, 3, 5);
    CHECK(smith_invariants(a) == oracle::smith_by_minors(a));
  }
}

TEST_CASE("smith invariants: products, inverses and unimodular invariance") {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 100; ++iter) {
    Integer p = std::vector<int>{2, 3, 5}[iter % 3];
    LocalMatrix a = oracle::random_rational_matrix(rng, 3, p);
    LocalMatrix b = oracle::random_rational_matrix(rng, 3, p);
    auto sum = [](const std::vector<long>& v) { return std::accumulate(v.begin(), v.end(), 0L); };
    CHECK(sum(smith_invariants(a * b)) == val(a.determinant(), p).value() + val(b.determinant(), p).value());

    std::vector<long> inv = smith_invariants(a.inverse());
    std::vector<long> expect = smith_invariants(a);
    std::reverse(expect.begin(), expect.end());
    for (auto& x : expect) x = -x;
    CHECK(inv == expect);

    LocalMatrix u = oracle::random_unimodular(rng, 3, p), w = oracle::random_unimodular(rng, 3, p);
    CHECK(smith_invariants(u * a * w) == smith_invariants(a));
  }
}

TEST_CASE("hnf_local: normal form of the column span") {
  CHECK(hnf_local(LocalMatrix::identity(3, 3)) == LocalMatrix::identity(3, 3));
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    Integer p = std::vector<int>{2, 3, 5, 7}[iter % 4];
    LocalMatrix a = oracle::random_rational_matrix(rng, 3, p);
    LocalMatrix h = hnf_local(a);
    CHECK(is_hnf(h));
    CHECK(same_span(a, h));
    CHECK(hnf_local(h) == h);
    LocalMatrix u = oracle::random_unimodular(rng, 3, p);
    CHECK(hnf_local(a * u) == h);
  }
}

TEST_CASE("hnf_local separates different lattices") {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 50; ++iter) {
    LocalMatrix a = oracle::random_integer_matrix(rng, 3, -9, 9, 3);
    LocalMatrix b = a;
    b.scale_column(0, 3);
    CHECK_FALSE(same_span(a, b));
    CHECK_FALSE(hnf_local(a) == hnf_local(b));
  }
}

TEST_CASE("reduction modulo prime powers") {
  CHECK(reduce_mod_prime_power(Rational(7), 3, 1) == 1);
  CHECK(reduce_mod_prime_power(Rational(-1), 2, 3) == 7);
  CHECK(reduce_mod_prime_power(Rational(1, 3), 3, 0) == Rational(1, 3));
  CHECK(reduce_mod_prime_power(Rational(1, 2), 3, 1) == 2);
  CHECK(reduce_mod_prime_power(Rational(5, 9), 3, -1) == Rational(2, 9));
}
