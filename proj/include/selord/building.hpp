#pragma once

// Vertices of the affine building of SL_n over Q_p, realized as homothety
// classes of full-rank Z_(p)-lattices, together with the maximal orders
// End(Λ) they define.

#include <cstddef>
#include <vector>

#include "selord/dvr.hpp"

namespace selord {

// Homothety class of the lattice spanned by the columns of a basis matrix.
// The canonical representative is hnf_local of the basis rescaled so that its
// smallest invariant-factor valuation is 0.
class LatticeClass {
 public:
  explicit LatticeClass(LocalMatrix basis);

  static LatticeClass standard(std::size_t n, const Integer& prime);

  const LocalMatrix& basis() const { return basis_; }
  const LocalMatrix& canonical() const { return canonical_; }
  const Integer& prime() const { return canonical_.prime(); }
  std::size_t dimension() const { return canonical_.size(); }

  // Type label relative to the standard lattice, in [0, n).
  long type() const;

  // Class of g·Λ.
  LatticeClass transformed(const LocalMatrix& g) const;

  bool operator==(const LatticeClass& o) const { return canonical_ == o.canonical_; }

 private:
  LocalMatrix basis_;
  LocalMatrix canonical_;
};

// Sum of the invariant-factor valuations of L2 relative to L1, mod n, in
// [0, n). Equals val(det B2) - val(det B1) mod n for bases B1, B2.
long type_distance(const LatticeClass& l1, const LatticeClass& l2);

// A basis ω_1..ω_n of Q_p^n; its lines determine an apartment.
class ApartmentFrame {
 public:
  explicit ApartmentFrame(LocalMatrix basis);
  static ApartmentFrame standard(std::size_t n, const Integer& prime);

  const LocalMatrix& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  const Integer& prime() const { return basis_.prime(); }

 private:
  LocalMatrix basis_;
};

// Class of ⊕ O π^{a_i} ω_i with π = p.
LatticeClass vertex_from_coords(const ApartmentFrame& frame, const std::vector<long>& coords);
// Same with an explicit uniformizer (val(uniformizer) must be 1).
LatticeClass vertex_from_coords(const ApartmentFrame& frame, const std::vector<long>& coords,
                                const Rational& uniformizer);

// Λ^(k) = O πω_1 ⊕ ... ⊕ O πω_k ⊕ O ω_{k+1} ⊕ ... ⊕ O ω_n for k = 0..n-1,
// the vertices of one chamber; Λ^(k) has type distance k from Λ^(0).
std::vector<LatticeClass> chamber_vertices(const ApartmentFrame& frame);

// X·Λ ⊆ Λ.
bool end_contains(const LatticeClass& lattice, const LocalMatrix& x);

// Exponent pattern m_1 <= ... <= m_n, normalized to m_1 = 0, describing
// Λ(m) = diag(π^m) M_n(O) diag(π^m)^{-1}.
class OrderPattern {
 public:
  explicit OrderPattern(std::vector<long> m);  // must be nondecreasing

  const std::vector<long>& exponents() const { return m_; }
  bool is_trivial() const { return m_.back() == 0; }
  // Smallest 1-based index ℓ with m_ℓ >= 1 (n + 1 when trivial).
  std::size_t first_positive() const;

 private:
  std::vector<long> m_;
};

// val(X[i][j]) >= m_i - m_j for all i, j.
bool order_pattern_contains(const OrderPattern& pattern, const LocalMatrix& x);

}  // namespace selord
