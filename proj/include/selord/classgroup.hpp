#pragma once

// Ideal class groups of imaginary quadratic fields via reduced positive
// definite binary quadratic forms, and the classes of prime ideals.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selord/primes.hpp"

namespace selord {

// a x^2 + b x y + c y^2
struct QuadForm {
  Integer a, b, c;

  Integer discriminant() const { return b * b - 4 * a * c; }
  bool operator==(const QuadForm&) const = default;
  std::strong_ordering operator<=>(const QuadForm& o) const;
  std::string to_string() const;
};

bool is_fundamental_discriminant(const Integer& d);
bool is_reduced(const QuadForm& f);

// Gauss reduction of a positive definite form.
QuadForm reduce(QuadForm f);

// Dirichlet composition followed by reduction.
QuadForm compose(const QuadForm& f, const QuadForm& g);

QuadForm principal_form(const Integer& d);
QuadForm inverse(const QuadForm& f);

// The class group C_K for a negative fundamental discriminant.
class ClassGroup {
 public:
  // Reduced forms enumerated with |b| <= a <= sqrt(|d|/3).
  explicit ClassGroup(const Integer& d);
  // Rebuilds from a previously computed form list after checking that the
  // list is exactly the group (see verify_forms); throws std::runtime_error otherwise.
  static ClassGroup from_forms(const Integer& d, std::vector<QuadForm> forms);

  const Integer& discriminant() const { return d_; }
  std::size_t order() const { return forms_.size(); }
  const std::vector<QuadForm>& elements() const { return forms_; }
  const QuadForm& element(std::size_t i) const { return forms_.at(i); }

  // Element 0 is the principal form.
  std::size_t identity() const { return 0; }
  std::size_t index_of(const QuadForm& f) const;  // f need not be reduced
  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;
  std::size_t power(std::size_t i, const Integer& e) const;
  std::size_t element_order(std::size_t i) const;

  // Invariant factors d_1 | d_2 | ... (all > 1), computed from element orders.
  std::vector<Integer> structure() const;

  // Subgroup generated by the given elements (membership by index).
  std::vector<bool> closure(const std::vector<std::size_t>& generators) const;

 private:
  ClassGroup() = default;
  void index();

  Integer d_;
  std::vector<QuadForm> forms_;
  std::map<QuadForm, std::size_t> position_;
};

// Reduced forms of the prime ideals above rational primes <= sqrt(|d|/3);
// their classes generate C_K.
std::vector<QuadForm> generator_forms(const Integer& d);

enum class PrimeKind { Split, Inert, Ramified };

std::string to_string(PrimeKind k);

// A prime ideal of K above a rational prime ell. For split and ramified
// primes the ideal is ell Z + ((-b + sqrt d)/2) Z, with b in [0, 2 ell)
// minimal subject to b^2 ≡ d (mod 4 ell); `which == 1` is the conjugate
// (b replaced by -b).
struct PrimeOfK {
  Integer ell;
  PrimeKind kind = PrimeKind::Inert;
  int which = 0;
  Integer b;                    // sqrt(d) ≡ b modulo the prime (split, ramified)
  std::optional<QuadForm> form;  // reduced form of the class; none for inert

  bool operator==(const PrimeOfK& o) const { return ell == o.ell && which == o.which; }
  bool operator<(const PrimeOfK& o) const {
    return ell != o.ell ? ell < o.ell : which < o.which;
  }
  std::string to_string() const;
};

int kronecker(const Integer& d, const Integer& ell);

// Throws std::invalid_argument when ell is not prime or `which` is not 0/1
// (only split primes have which == 1).
PrimeOfK prime_class(const Integer& ell, const Integer& d, int which = 0);

// The one or two primes of K above ell.
std::vector<PrimeOfK> primes_above(const Integer& ell, const Integer& d);

}  // namespace selord
