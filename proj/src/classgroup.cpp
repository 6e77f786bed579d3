#include "selord/classgroup.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace selord {

std::strong_ordering QuadForm::operator<=>(const QuadForm& o) const {
  if (int s = cmp(a, o.a)) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (int s = cmp(b, o.b)) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (int s = cmp(c, o.c)) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string QuadForm::to_string() const {
  return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

bool is_fundamental_discriminant(const Integer& d) {
  if (d == 0 || d == 1) return false;
  auto squarefree = [](const Integer& n) {
    for (const auto& [q, e] : factor(n))
      if (e > 1) return false;
    return true;
  };
  Integer r = mod(d, Integer(4));
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  Integer m = d / 4;
  Integer m4 = mod(m, Integer(4));
  return (m4 == 2 || m4 == 3) && squarefree(m);
}

bool is_reduced(const QuadForm& f) {
  Integer ab = abs(f.b);
  if (!(ab <= f.a && f.a <= f.c)) return false;
  if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

QuadForm reduce(QuadForm f) {
  const Integer d = f.discriminant();
  if (f.a <= 0 || d >= 0) throw std::invalid_argument("reduce: form is not positive definite");
  for (;;) {
    Integer two_a = 2 * f.a;
    Integer b = mod(f.b, two_a);
    if (b > f.a) b -= two_a;
    f.c = (b * b - d) / (4 * f.a);
    f.b = b;
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    break;
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  const Integer disc = f.discriminant();
  if (disc != g.discriminant()) throw std::invalid_argument("compose: discriminant mismatch");
  const QuadForm& f1 = f.a <= g.a ? f : g;
  const QuadForm& f2 = f.a <= g.a ? g : f;
  Integer s = (f1.b + f2.b) / 2;
  Integer n = f2.b - s;
  Integer y1, d;
  if (mpz_divisible_p(f2.a.get_mpz_t(), f1.a.get_mpz_t())) {
    y1 = 0;
    d = f1.a;
  } else {
    Integer v;
    mpz_gcdext(d.get_mpz_t(), y1.get_mpz_t(), v.get_mpz_t(), f2.a.get_mpz_t(), f1.a.get_mpz_t());
  }
  Integer x2, y2, d1;
  if (mpz_divisible_p(s.get_mpz_t(), d.get_mpz_t())) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    Integer v;
    mpz_gcdext(d1.get_mpz_t(), x2.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
    y2 = -v;
  }
  Integer v1 = f1.a / d1;
  Integer v2 = f2.a / d1;
  Integer r = mod(y1 * y2 * n - x2 * f2.c, v1);
  Integer b3 = f2.b + 2 * v2 * r;
  Integer a3 = v1 * v2;
  Integer c3 = (b3 * b3 - disc) / (4 * a3);
  return reduce(QuadForm{a3, b3, c3});
}

QuadForm principal_form(const Integer& d) {
  Integer b = mod(d, Integer(2));
  return QuadForm{1, b, (b * b - d) / 4};
}

QuadForm inverse(const QuadForm& f) { return reduce(QuadForm{f.a, -f.b, f.c}); }

// ClassGroup

ClassGroup::ClassGroup(const Integer& d) : d_(d) {
  if (d >= 0 || !is_fundamental_discriminant(d))
    throw std::invalid_argument("class_group: expected a negative fundamental discriminant");
  Integer bound = sqrt(Integer(-d / 3));
  for (Integer a = 1; a <= bound; ++a)
    for (Integer b = -a + 1; b <= a; ++b) {
      Integer num = b * b - d;
      if (!mpz_divisible_p(num.get_mpz_t(), Integer(4 * a).get_mpz_t())) continue;
      QuadForm f{a, b, num / (4 * a)};
      if (!is_reduced(f)) continue;
      Integer g = gcd(gcd(f.a, f.b), f.c);
      if (g != 1) continue;
      forms_.push_back(std::move(f));
    }
  index();
}

ClassGroup ClassGroup::from_forms(const Integer& d, std::vector<QuadForm> forms) {
  if (d >= 0 || !is_fundamental_discriminant(d))
    throw std::runtime_error("class group data: bad discriminant");
  ClassGroup g;
  g.d_ = d;
  g.forms_ = std::move(forms);
  if (g.forms_.empty() || g.forms_.front() != principal_form(d))
    throw std::runtime_error("class group data: principal form must come first");
  for (const auto& f : g.forms_)
    if (f.a <= 0 || f.discriminant() != d || !is_reduced(f) || gcd(gcd(f.a, f.b), f.c) != 1)
      throw std::runtime_error("class group data: invalid form " + f.to_string());
  g.index();
  if (g.position_.size() != g.forms_.size())
    throw std::runtime_error("class group data: duplicate forms");
  // Closed under the generators and containing the identity: the whole group.
  for (const auto& gen : generator_forms(d))
    for (const auto& f : g.forms_)
      if (!g.position_.count(compose(f, gen)))
        throw std::runtime_error("class group data: not closed under composition");
  return g;
}

void ClassGroup::index() {
  position_.clear();
  for (std::size_t i = 0; i < forms_.size(); ++i) position_.emplace(forms_[i], i);
}

std::size_t ClassGroup::index_of(const QuadForm& f) const {
  if (f.discriminant() != d_) throw std::invalid_argument("ClassGroup: discriminant mismatch");
  auto it = position_.find(reduce(f));
  if (it == position_.end()) throw std::logic_error("ClassGroup: form not in group");
  return it->second;
}

std::size_t ClassGroup::multiply(std::size_t i, std::size_t j) const {
  return position_.at(compose(forms_.at(i), forms_.at(j)));
}

std::size_t ClassGroup::inverse(std::size_t i) const {
  return position_.at(selord::inverse(forms_.at(i)));
}

std::size_t ClassGroup::power(std::size_t i, const Integer& e) const {
  Integer k = mod(e, Integer(static_cast<unsigned long>(order())));
  std::size_t result = identity();
  std::size_t base = i;
  for (std::size_t bit = 0; bit < mpz_sizeinbase(k.get_mpz_t(), 2); ++bit) {
    if (mpz_tstbit(k.get_mpz_t(), bit)) result = multiply(result, base);
    base = multiply(base, base);
  }
  return result;
}

std::size_t ClassGroup::element_order(std::size_t i) const {
  std::size_t k = 1;
  for (std::size_t x = i; x != identity(); x = multiply(x, i)) ++k;
  return k;
}

std::vector<Integer> ClassGroup::structure() const {
  const std::size_t h = order();
  std::vector<std::size_t> orders(h);
  for (std::size_t i = 0; i < h; ++i) orders[i] = element_order(i);
  std::vector<Integer> invariants;  // built largest first
  for (const auto& [qq, e] : factor(Integer(static_cast<unsigned long>(h)))) {
    const std::size_t q = qq.get_ui();
    // count(j) = #{x : x^{q^j} = 1}; cyclic factors of order >= q^j number
    // log_q(count(j) / count(j-1)).
    std::vector<std::size_t> at_least;
    std::size_t prev = 1, qj = 1;
    for (int j = 1; j <= e; ++j) {
      qj *= q;
      std::size_t count = 0;
      for (auto o : orders)
        if (qj % o == 0) ++count;
      std::size_t ratio = count / prev, r = 0;
      while (ratio > 1) {
        ratio /= q;
        ++r;
      }
      at_least.push_back(r);
      prev = count;
    }
    // Cyclic q-parts, largest first.
    std::vector<Integer> parts;
    for (std::size_t j = at_least.size(); j-- > 0;) {
      std::size_t exact = at_least[j] - (j + 1 < at_least.size() ? at_least[j + 1] : 0);
      Integer qpow;
      mpz_ui_pow_ui(qpow.get_mpz_t(), q, j + 1);
      for (std::size_t k = 0; k < exact; ++k) parts.push_back(qpow);
    }
    if (invariants.size() < parts.size()) invariants.resize(parts.size(), Integer(1));
    for (std::size_t k = 0; k < parts.size(); ++k) invariants[k] *= parts[k];
  }
  std::reverse(invariants.begin(), invariants.end());
  return invariants;
}

std::vector<bool> ClassGroup::closure(const std::vector<std::size_t>& generators) const {
  std::vector<bool> member(order(), false);
  member[identity()] = true;
  std::deque<std::size_t> queue{identity()};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t g : generators) {
      std::size_t y = multiply(x, g);
      if (!member[y]) {
        member[y] = true;
        queue.push_back(y);
      }
    }
  }
  return member;
}

std::vector<QuadForm> generator_forms(const Integer& d) {
  std::vector<QuadForm> out;
  Integer bound = sqrt(Integer(-d / 3));
  for (Integer ell = 2; ell <= bound; ++ell) {
    if (!is_prime(ell) || kronecker(d, ell) == -1) continue;
    out.push_back(*prime_class(ell, d).form);
  }
  return out;
}

// Primes of K

std::string to_string(PrimeKind k) {
  switch (k) {
    case PrimeKind::Split: return "split";
    case PrimeKind::Inert: return "inert";
    case PrimeKind::Ramified: return "ramified";
  }
  return "?";
}

std::string PrimeOfK::to_string() const {
  return "(" + ell.get_str() + "," + std::to_string(which) + ")";
}

int kronecker(const Integer& d, const Integer& ell) {
  if (ell == 2) {
    if (mpz_even_p(d.get_mpz_t())) return 0;
    Integer r = mod(d, Integer(8));
    return (r == 1 || r == 7) ? 1 : -1;
  }
  return mpz_kronecker(d.get_mpz_t(), ell.get_mpz_t());
}

namespace {

// Square root of a quadratic residue n modulo an odd prime p (Tonelli-Shanks).
Integer sqrt_mod(const Integer& n, const Integer& p) {
  Integer a = mod(n, p);
  if (a == 0) return 0;
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  auto powm = [&p](const Integer& b, const Integer& e) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  };
  Integer c = powm(z, q);
  Integer r = powm(a, (q + 1) / 2);
  Integer t = powm(a, q);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    for (Integer tt = t; tt != 1; tt = mod(tt * tt, p)) ++i;
    Integer b = c;
    for (unsigned long k = 0; k + i + 1 < m; ++k) b = mod(b * b, p);
    r = mod(r * b, p);
    c = mod(b * b, p);
    t = mod(t * c, p);
    m = i;
  }
  return r;
}

}  // namespace

PrimeOfK prime_class(const Integer& ell, const Integer& d, int which) {
  if (!is_prime(ell)) throw std::invalid_argument("prime_class: " + ell.get_str() + " is not prime");
  if (which != 0 && which != 1) throw std::invalid_argument("prime_class: which must be 0 or 1");
  PrimeOfK out;
  out.ell = ell;
  const int k = kronecker(d, ell);
  if (k == -1) {
    if (which != 0) throw std::invalid_argument("prime_class: inert prime has no conjugate");
    out.kind = PrimeKind::Inert;
    return out;
  }
  out.kind = k == 0 ? PrimeKind::Ramified : PrimeKind::Split;
  if (out.kind == PrimeKind::Ramified && which != 0)
    throw std::invalid_argument("prime_class: ramified prime has no conjugate");
  const Integer two_ell = 2 * ell;
  const Integer four_ell = 4 * ell;
  std::vector<Integer> candidates;
  if (ell == 2) {
    for (int b = 0; b < 4; ++b) candidates.emplace_back(b);
  } else {
    Integer r = sqrt_mod(d, ell);
    candidates = {r, ell - r, r + ell, two_ell - r};
  }
  std::optional<Integer> best;
  for (const auto& b : candidates) {
    if (b < 0 || b >= two_ell) continue;
    if (mod(b * b - d, four_ell) != 0) continue;
    if (!best || b < *best) best = b;
  }
  if (!best) throw std::logic_error("prime_class: no square root of d modulo 4 ell");
  out.which = which;
  out.b = which == 1 ? Integer(-*best) : *best;
  out.form = reduce(QuadForm{ell, out.b, (out.b * out.b - d) / four_ell});
  return out;
}

std::vector<PrimeOfK> primes_above(const Integer& ell, const Integer& d) {
  std::vector<PrimeOfK> out{prime_class(ell, d, 0)};
  if (out.front().kind == PrimeKind::Split) out.push_back(prime_class(ell, d, 1));
  return out;
}

}  // namespace selord
