#pragma once

// The genus group indexing isomorphism classes of maximal orders in a
// degree-p² central simple algebra over K, as the quotient
// C_K / (C_K^p · ⟨classes of Ram(B)⟩), plus the distance map ρ and the
// parametrization of the genus by chamber vertices at generator primes.

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "selord/building.hpp"
#include "selord/classgroup.hpp"
#include "selord/relext.hpp"

namespace selord {

struct GenusElement {
  std::size_t coset = 0;
  bool operator==(const GenusElement&) const = default;
};

class GenusGroup {
 public:
  // p an odd prime; ram the primes of K ramified in B.
  GenusGroup(std::shared_ptr<const ClassGroup> base, int p, std::vector<PrimeOfK> ram);

  const ClassGroup& base() const { return *base_; }
  std::shared_ptr<const ClassGroup> base_ptr() const { return base_; }
  int p() const { return p_; }
  const std::vector<PrimeOfK>& ram() const { return ram_; }
  bool is_ramified(const PrimeOfK& nu) const;

  std::size_t order() const { return reps_.size(); }
  int rank() const { return rank_; }  // |G| = p^rank

  GenusElement identity() const { return {0}; }
  GenusElement multiply(GenusElement x, GenusElement y) const;
  GenusElement power(GenusElement x, long k) const;
  GenusElement from_class(std::size_t class_index) const { return {coset_of_.at(class_index)}; }
  // Image of the class of ν; inert primes are principal.
  GenusElement element_of(const PrimeOfK& nu) const;
  // Smallest class index in the coset.
  std::size_t representative(GenusElement x) const { return reps_.at(x.coset); }

 private:
  std::shared_ptr<const ClassGroup> base_;
  int p_;
  std::vector<PrimeOfK> ram_;
  std::vector<std::size_t> coset_of_;  // class index -> coset
  std::vector<std::size_t> reps_;      // coset -> smallest class index
  int rank_ = 0;
};

GenusGroup genus_group(const Integer& d, int p, std::vector<PrimeOfK> ram);

// A subgroup of G, by membership.
class GenusSubgroup {
 public:
  explicit GenusSubgroup(std::vector<bool> member) : member_(std::move(member)) {}
  static GenusSubgroup generated(const GenusGroup& g, const std::vector<GenusElement>& gens);

  bool contains(GenusElement x) const { return member_.at(x.coset); }
  std::size_t order() const;
  const std::vector<bool>& membership() const { return member_; }
  bool operator==(const GenusSubgroup&) const = default;

 private:
  std::vector<bool> member_;
};

// A maximal order presented by its local lattice classes at finitely many
// primes of K; elsewhere it agrees with the reference order (the standard
// lattice). Only primes split in K/Q are allowed, so that K_ν = Q_ℓ.
class Deviation {
 public:
  void set(const PrimeOfK& nu, LatticeClass lattice);  // throws std::invalid_argument
  const std::map<PrimeOfK, LatticeClass>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<PrimeOfK, LatticeClass> entries_;
};

// Π_ν (class of ν)^{td_ν(L1, L2)} over primes not ramified in B.
GenusElement rho(const Deviation& dev1, const Deviation& dev2, const GenusGroup& g);

class SearchBoundExceeded : public std::runtime_error {
 public:
  explicit SearchBoundExceeded(std::size_t bound);
};

// Degree-one primes ν_1..ν_m (m = rank) whose classes generate G, found by
// scanning the first `bound` rational primes in order. Primes dividing
// disc(g) (when e is given) and rational primes in `avoid` are skipped. With
// h_l given, ν_1 lies outside h_l and ν_2..ν_m inside it.
std::vector<PrimeOfK> choose_generators(const GenusGroup& g, const RelativeExtension* e,
                                        const GenusSubgroup* h_l,
                                        const std::set<Integer>& avoid = {},
                                        std::size_t bound = 10000);

// D^γ: ν_i ↦ Λ^(γ_i) over frames[i], omitting γ_i = 0. An empty frame list
// means standard frames; a given frame must have Λ^(0) equal to the standard
// lattice class.
Deviation parametrization(const GenusGroup& g, const std::vector<PrimeOfK>& gens,
                          const std::vector<ApartmentFrame>& frames,
                          const std::vector<long>& gamma);

}  // namespace selord
