#include "selord/building.hpp"

#include <algorithm>
#include <stdexcept>

namespace selord {

namespace {

LocalMatrix canonical_representative(const LocalMatrix& basis) {
  long shift = smith_invariants(basis).front();
  return hnf_local(basis.scaled(prime_power(basis.prime(), -shift)));
}

long residue(long x, long n) {
  long r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

LatticeClass::LatticeClass(LocalMatrix basis)
    : basis_(std::move(basis)), canonical_(canonical_representative(basis_)) {}

LatticeClass LatticeClass::standard(std::size_t n, const Integer& prime) {
  return LatticeClass(LocalMatrix::identity(n, prime));
}

long LatticeClass::type() const {
  return type_distance(standard(dimension(), prime()), *this);
}

LatticeClass LatticeClass::transformed(const LocalMatrix& g) const {
  return LatticeClass(g * canonical_);
}

long type_distance(const LatticeClass& l1, const LatticeClass& l2) {
  if (l1.dimension() != l2.dimension() || l1.prime() != l2.prime())
    throw std::invalid_argument("type_distance: dimension or prime mismatch");
  const long n = static_cast<long>(l1.dimension());
  // Coordinates of L2 in a basis of L1; the invariants are {Λ2 : Λ1}.
  LocalMatrix transition = l1.canonical().inverse() * l2.canonical();
  std::vector<long> inv = smith_invariants(transition);
  // Smallest e with p^e·L1 ⊆ L2.
  long e = inv.back();
  long sum = 0;
  for (long a : inv) sum += a - e;
  return residue(sum, n);
}

ApartmentFrame::ApartmentFrame(LocalMatrix basis) : basis_(std::move(basis)) {
  if (basis_.determinant() == 0) throw DegenerateLattice();
}

ApartmentFrame ApartmentFrame::standard(std::size_t n, const Integer& prime) {
  return ApartmentFrame(LocalMatrix::identity(n, prime));
}

LatticeClass vertex_from_coords(const ApartmentFrame& frame, const std::vector<long>& coords) {
  return vertex_from_coords(frame, coords, Rational(frame.prime()));
}

LatticeClass vertex_from_coords(const ApartmentFrame& frame, const std::vector<long>& coords,
                                const Rational& uniformizer) {
  if (coords.size() != frame.dimension())
    throw std::invalid_argument("vertex_from_coords: coordinate count mismatch");
  if (val(uniformizer, frame.prime()) != Valuation(1))
    throw std::invalid_argument("vertex_from_coords: uniformizer must have valuation 1");
  std::vector<Rational> diag;
  diag.reserve(coords.size());
  for (long a : coords) {
    Rational power = 1;
    Rational base = a >= 0 ? uniformizer : Rational(1 / uniformizer);
    for (long i = 0; i < (a >= 0 ? a : -a); ++i) power *= base;
    diag.push_back(power);
  }
  return LatticeClass(frame.basis() * LocalMatrix::diagonal(diag, frame.prime()));
}

std::vector<LatticeClass> chamber_vertices(const ApartmentFrame& frame) {
  const std::size_t n = frame.dimension();
  std::vector<LatticeClass> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<long> coords(n, 0);
    std::fill(coords.begin(), coords.begin() + static_cast<long>(k), 1);
    out.push_back(vertex_from_coords(frame, coords));
  }
  return out;
}

bool end_contains(const LatticeClass& lattice, const LocalMatrix& x) {
  const LocalMatrix& b = lattice.canonical();
  return (b.inverse() * x * b).is_integral();
}

OrderPattern::OrderPattern(std::vector<long> m) : m_(std::move(m)) {
  if (m_.empty()) throw std::invalid_argument("OrderPattern: empty");
  if (!std::is_sorted(m_.begin(), m_.end()))
    throw std::invalid_argument("OrderPattern: exponents must be nondecreasing");
  const long base = m_.front();
  for (auto& e : m_) e -= base;
}

std::size_t OrderPattern::first_positive() const {
  auto it = std::find_if(m_.begin(), m_.end(), [](long e) { return e >= 1; });
  return static_cast<std::size_t>(it - m_.begin()) + 1;
}

bool order_pattern_contains(const OrderPattern& pattern, const LocalMatrix& x) {
  const auto& m = pattern.exponents();
  if (x.size() != m.size()) throw std::invalid_argument("order_pattern_contains: size mismatch");
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (val(x(i, j), x.prime()) < Valuation(m[i] - m[j])) return false;
  return true;
}

}  // namespace selord
