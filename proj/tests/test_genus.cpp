#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "selord/genus.hpp"

using namespace selord;

namespace {

LatticeClass conjugated(const PrimeOfK& nu, std::initializer_list<Rational> diag) {
  return LatticeClass::standard(diag.size(), nu.ell).transformed(LocalMatrix::diagonal(diag, nu.ell));
}

// |C / C^p| from the invariant factors.
std::size_t p_rank_order(const ClassGroup& c, long p) {
  std::size_t out = 1;
  for (const auto& q : c.structure())
    if (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) out *= static_cast<std::size_t>(p);
  return out;
}

}  // namespace

TEST_CASE("genus groups: examples") {
  GenusGroup g = genus_group(-23, 3, {});
  CHECK(g.order() == 3);
  CHECK(g.rank() == 1);
  CHECK(genus_group(-4, 3, {}).order() == 1);
  CHECK(genus_group(-23, 5, {}).order() == 1);
  // The class of a prime above 2 generates C_K, so ramifying there kills G.
  CHECK(genus_group(-23, 3, {prime_class(2, -23)}).order() == 1);
  // 59 is principal: ramifying there leaves G alone.
  CHECK(genus_group(-23, 3, {prime_class(59, -23), prime_class(59, -23, 1)}).order() == 3);
  CHECK(genus_group(-3299, 3, {}).order() == 9);
  CHECK(genus_group(-4027, 3, {}).order() == 9);
  CHECK_THROWS_AS(genus_group(-23, 4, {}), std::invalid_argument);
  CHECK_THROWS_AS(genus_group(-23, 2, {}), std::invalid_argument);
}

TEST_CASE("genus groups: order and exponent") {
  for (long d = -3; d > -400; --d) {
    if (!oracle::is_fundamental_slow(d)) continue;
    auto c = std::make_shared<const ClassGroup>(d);
    for (int p : {3, 5}) {
      GenusGroup g(c, p, {});
      CHECK(g.order() == p_rank_order(*c, p));
      std::size_t pr = 1;
      for (int i = 0; i < g.rank(); ++i) pr *= static_cast<std::size_t>(p);
      CHECK(pr == g.order());
      for (std::size_t k = 0; k < g.order(); ++k) {
        GenusElement x{k};
        CHECK(g.power(x, p) == g.identity());
        CHECK(g.multiply(x, g.power(x, -1)) == g.identity());
      }
      // The projection is a homomorphism.
      for (std::size_t i = 0; i < c->order(); ++i)
        for (std::size_t j = 0; j < c->order(); j += 3)
          CHECK(g.from_class(c->multiply(i, j)) == g.multiply(g.from_class(i), g.from_class(j)));
    }
  }
}

TEST_CASE("genus groups: ramified classes are killed") {
  for (long d : {-3299L, -4027L, -231L}) {
    auto c = std::make_shared<const ClassGroup>(d);
    std::vector<PrimeOfK> ram;
    for (long ell = 2; ram.size() < 2; ++ell)
      if (is_prime(ell) && kronecker(d, ell) == 1) ram.push_back(prime_class(ell, d));
    GenusGroup g(c, 3, ram);
    for (const auto& nu : ram) CHECK(g.element_of(nu) == g.identity());
    CHECK(g.order() <= GenusGroup(c, 3, {}).order());
  }
  GenusGroup g = genus_group(-23, 3, {});
  CHECK(g.element_of(prime_class(5, -23)) == g.identity());
  CHECK(g.element_of(prime_class(59, -23)) == g.identity());
  CHECK_FALSE(g.element_of(prime_class(2, -23)) == g.identity());
  CHECK(g.element_of(prime_class(2, -23, 1)) == g.power(g.element_of(prime_class(2, -23)), -1));
}

TEST_CASE("subgroups") {
  GenusGroup g = genus_group(-4027, 3, {});
  GenusElement x = g.element_of(prime_class(7, -4027));
  CHECK(GenusSubgroup::generated(g, {}).order() == 1);
  if (!(x == g.identity())) CHECK(GenusSubgroup::generated(g, {x}).order() == 3);
  std::vector<GenusElement> all;
  for (std::size_t k = 0; k < g.order(); ++k) all.push_back({k});
  CHECK(GenusSubgroup::generated(g, all).order() == 9);
}

TEST_CASE("deviations accept only primes split in K") {
  Deviation dev;
  CHECK_THROWS_AS(dev.set(prime_class(5, -23), LatticeClass::standard(3, 5)), std::invalid_argument);
  CHECK_THROWS_AS(dev.set(prime_class(23, -23), LatticeClass::standard(3, 23)), std::invalid_argument);
  CHECK_THROWS_AS(dev.set(prime_class(2, -23), LatticeClass::standard(3, 3)), std::invalid_argument);
  dev.set(prime_class(2, -23), LatticeClass::standard(3, 2));
  CHECK(dev.entries().size() == 1);
}

TEST_CASE("rho") {
  GenusGroup g = genus_group(-23, 3, {});
  PrimeOfK nu = prime_class(2, -23), nubar = prime_class(2, -23, 1);
  Deviation none;
  CHECK(rho(none, none, g) == g.identity());

  Deviation one;
  one.set(nu, conjugated(nu, {2, 1, 1}));
  CHECK(rho(none, one, g) == g.element_of(nu));
  CHECK(rho(one, none, g) == g.power(g.element_of(nu), -1));

  Deviation two;
  two.set(nu, conjugated(nu, {2, 2, 1}));
  CHECK(rho(none, two, g) == g.power(g.element_of(nu), 2));
  CHECK(rho(one, two, g) == g.element_of(nu));

  // Conjugating by the global element diag(2,1,1) moves the lattices at
  // both primes above 2; their classes cancel.
  Deviation both;
  both.set(nu, conjugated(nu, {2, 1, 1}));
  both.set(nubar, conjugated(nubar, {2, 1, 1}));
  CHECK(rho(none, both, g) == g.identity());

  // Cocycle over random deviations.
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<long> e(0, 4);
  std::vector<PrimeOfK> places{nu, nubar, prime_class(3, -23), prime_class(13, -23)};
  auto random_dev = [&] {
    Deviation d;
    for (const auto& p : places) {
      Rational a = prime_power(p.ell, e(rng)), b = prime_power(p.ell, e(rng));
      d.set(p, conjugated(p, {a, b, 1}));
    }
    return d;
  };
  for (int iter = 0; iter < 30; ++iter) {
    Deviation a = random_dev(), b = random_dev(), c = random_dev();
    CHECK(rho(a, c, g) == g.multiply(rho(a, b, g), rho(b, c, g)));
  }

  // Ramified primes do not contribute.
  GenusGroup gr(g.base_ptr(), 3, {nu});
  CHECK(rho(none, one, gr) == gr.identity());
}

TEST_CASE("choose_generators") {
  GenusGroup g = genus_group(-23, 3, {});
  auto gens = choose_generators(g, nullptr, nullptr);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0] == prime_class(2, -23, 0));
  CHECK(choose_generators(genus_group(-23, 3, {prime_class(2, -23)}), nullptr, nullptr).empty());

  GenusGroup g9 = genus_group(-4027, 3, {});
  auto gens9 = choose_generators(g9, nullptr, nullptr);
  REQUIRE(gens9.size() == 2);
  std::vector<GenusElement> images;
  for (const auto& nu : gens9) {
    CHECK(nu.kind == PrimeKind::Split);
    images.push_back(g9.element_of(nu));
  }
  CHECK(GenusSubgroup::generated(g9, images).order() == 9);

  // Constrained: first generator outside H, the rest inside.
  GenusSubgroup h = GenusSubgroup::generated(g9, {images[1]});
  auto constrained = choose_generators(g9, nullptr, &h);
  REQUIRE(constrained.size() == 2);
  CHECK_FALSE(h.contains(g9.element_of(constrained[0])));
  CHECK(h.contains(g9.element_of(constrained[1])));

  // Primes dividing disc(g) are skipped: x^3 - 2 has disc -108.
  RelativeExtension e(-23, {{-2, 0}, {0, 0}, {0, 0}, {1, 0}});
  auto gens_e = choose_generators(g, &e, nullptr);
  REQUIRE(gens_e.size() == 1);
  CHECK(gens_e[0].ell != 2);
  CHECK(gens_e[0].ell != 3);

  auto avoided = choose_generators(g, nullptr, nullptr, {Integer(2)});
  CHECK(avoided[0].ell != 2);
  CHECK_THROWS_AS(choose_generators(genus_group(-47, 5, {}), nullptr, nullptr, {Integer(2)}, 1),
                  SearchBoundExceeded);
}

TEST_CASE("parametrization is injective") {
  for (long d : {-23L, -4027L, -3299L}) {
    GenusGroup g = genus_group(d, 3, {});
    auto gens = choose_generators(g, nullptr, nullptr);
    const std::size_t m = gens.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= 3;
    std::set<std::size_t> seen;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<long> gamma(m);
      std::size_t c = code;
      for (auto& x : gamma) {
        x = static_cast<long>(c % 3);
        c /= 3;
      }
      Deviation dev = parametrization(g, gens, {}, gamma);
      GenusElement r = rho(Deviation{}, dev, g);
      GenusElement expect = g.identity();
      for (std::size_t i = 0; i < m; ++i) expect = g.multiply(expect, g.power(g.element_of(gens[i]), gamma[i]));
      CHECK(r == expect);
      seen.insert(r.coset);
    }
    CHECK(seen.size() == g.order());
  }
  GenusGroup g = genus_group(-23, 3, {});
  auto gens = choose_generators(g, nullptr, nullptr);
  CHECK(parametrization(g, gens, {}, {0}).empty());
  CHECK_THROWS_AS(parametrization(g, gens, {}, {0, 1}), std::invalid_argument);
  LocalMatrix shifted = LocalMatrix::diagonal({2, 1, 1}, 2);
  CHECK_THROWS_AS(parametrization(g, gens, {ApartmentFrame(shifted)}, {1}), std::invalid_argument);
}
