#pragma once

// Decides whether a commutative order Ω ⊂ O_L embeds into all, none, or
// exactly 1/p of the isomorphism classes of maximal orders in a central
// simple algebra B of degree p over K.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "selord/genus.hpp"
#include "selord/relext.hpp"

namespace selord {

struct AlgebraSpec {
  Integer d;
  int p = 3;
  std::vector<PrimeOfK> ram;  // primes where B is a division algebra
};

enum class Outcome { Yes, No, Indeterminate, Skipped };

std::string to_string(Outcome o);

struct Decision {
  Outcome outcome = Outcome::Skipped;
  std::string reason;
};

// One sampled prime of K and what was observed there.
struct ShapeSample {
  PrimeOfK prime;
  SplitShape shape;
  std::optional<GenusElement> genus_class;
};

struct SamplingOptions {
  std::size_t bound = 2000;          // rational primes scanned
  std::size_t stabilization = 200;   // unchanged samples before accepting
};

// L embeds in B iff no ν ∈ Ram(B) has a local degree [L_P : K_ν] prime to p.
Decision embeds_in_algebra(const AlgebraSpec& a, const RelativeExtension& e,
                           std::vector<ShapeSample>* trace = nullptr);

// Yes: g irreducible over K. No: a factorization exists (a root in O_K or a
// zero discriminant).
Decision irreducibility_check(const RelativeExtension& e, const SamplingOptions& options = {},
                              std::vector<ShapeSample>* trace = nullptr);

struct ClassFieldResult {
  Decision contained;                 // L ⊆ K(R)
  std::optional<GenusSubgroup> h_l;   // set when contained is Yes
  std::optional<PrimeOfK> witness;    // prime behind a negative certificate
  std::vector<ShapeSample> samples;
};

// Whether L lies in the class field K(R) attached to the genus group, and if
// so the index-p subgroup H_L of classes splitting completely in L. Negative
// answers carry finite certificates; a positive answer means the subgroup
// generated by completely split classes has index p and stayed unchanged over
// `stabilization` consecutive samples with every observation consistent.
ClassFieldResult class_field_membership(const GenusGroup& g, const RelativeExtension& e,
                                        const SamplingOptions& options = {});

struct SelectivityVerdict {
  Decision irreducible;
  Decision embeds;
  Decision cond1;  // L ⊆ K(R)
  Decision cond2;  // conductor primes split completely in L
  bool selective = false;
  // Fraction of isomorphism classes of maximal orders containing a conjugate
  // of Ω: 0, 1 or 1/p; empty when some component is indeterminate.
  std::optional<Rational> fraction;
  std::shared_ptr<const GenusGroup> genus;
  std::optional<GenusSubgroup> h_l;
  std::vector<PrimeOfK> conductor;
  std::vector<ShapeSample> certificates;

  bool complete() const { return fraction.has_value(); }
};

// A class group may be supplied (for instance from a cache); otherwise it is
// computed.
SelectivityVerdict selectivity_verdict(const AlgebraSpec& a, const OrderSpec& spec,
                                       const RelativeExtension& e,
                                       const SamplingOptions& options = {},
                                       std::shared_ptr<const ClassGroup> class_group = nullptr);

// Whether the maximal order presented by `dev` contains a conjugate of Ω.
// Throws std::logic_error for an incomplete verdict.
bool admits_order(const SelectivityVerdict& v, const Deviation& dev);

}  // namespace selord
