#include "selord/genus.hpp"

#include <algorithm>
#include <deque>

namespace selord {

GenusGroup::GenusGroup(std::shared_ptr<const ClassGroup> base, int p, std::vector<PrimeOfK> ram)
    : base_(std::move(base)), p_(p), ram_(std::move(ram)) {
  if (p < 3 || !is_prime(Integer(p))) throw std::invalid_argument("genus_group: p must be an odd prime");
  std::sort(ram_.begin(), ram_.end());
  ram_.erase(std::unique(ram_.begin(), ram_.end()), ram_.end());
  const ClassGroup& c = *base_;
  for (const auto& nu : ram_) {
    PrimeOfK check = prime_class(nu.ell, c.discriminant(), nu.which);
    if (check.kind != nu.kind) throw std::invalid_argument("genus_group: inconsistent prime " + nu.to_string());
  }

  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < c.order(); ++i) gens.push_back(c.power(i, p));
  for (const auto& nu : ram_)
    if (nu.form) gens.push_back(c.index_of(*nu.form));
  std::vector<bool> in_s = c.closure(gens);
  std::vector<std::size_t> s_elems;
  for (std::size_t i = 0; i < in_s.size(); ++i)
    if (in_s[i]) s_elems.push_back(i);

  const std::size_t unset = c.order();
  coset_of_.assign(c.order(), unset);
  for (std::size_t i = 0; i < c.order(); ++i) {
    if (coset_of_[i] != unset) continue;
    const std::size_t id = reps_.size();
    reps_.push_back(i);
    for (std::size_t s : s_elems) coset_of_[c.multiply(i, s)] = id;
  }

  std::size_t q = order();
  while (q % static_cast<std::size_t>(p) == 0) {
    q /= static_cast<std::size_t>(p);
    ++rank_;
  }
  if (q != 1) throw std::logic_error("genus_group: quotient order is not a power of p");
}

bool GenusGroup::is_ramified(const PrimeOfK& nu) const {
  return std::binary_search(ram_.begin(), ram_.end(), nu);
}

GenusElement GenusGroup::multiply(GenusElement x, GenusElement y) const {
  return from_class(base_->multiply(representative(x), representative(y)));
}

GenusElement GenusGroup::power(GenusElement x, long k) const {
  return from_class(base_->power(representative(x), Integer(k)));
}

GenusElement GenusGroup::element_of(const PrimeOfK& nu) const {
  if (!nu.form) return identity();
  return from_class(base_->index_of(*nu.form));
}

GenusGroup genus_group(const Integer& d, int p, std::vector<PrimeOfK> ram) {
  return GenusGroup(std::make_shared<const ClassGroup>(d), p, std::move(ram));
}

GenusSubgroup GenusSubgroup::generated(const GenusGroup& g, const std::vector<GenusElement>& gens) {
  std::vector<bool> member(g.order(), false);
  member[0] = true;
  std::deque<GenusElement> queue{g.identity()};
  while (!queue.empty()) {
    GenusElement x = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      GenusElement y = g.multiply(x, s);
      if (!member[y.coset]) {
        member[y.coset] = true;
        queue.push_back(y);
      }
    }
  }
  return GenusSubgroup(std::move(member));
}

std::size_t GenusSubgroup::order() const {
  return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true));
}

void Deviation::set(const PrimeOfK& nu, LatticeClass lattice) {
  if (nu.kind != PrimeKind::Split)
    throw std::invalid_argument("deviation: prime " + nu.to_string() + " is " + to_string(nu.kind) +
                                " in K; only split primes are supported");
  if (lattice.prime() != nu.ell)
    throw std::invalid_argument("deviation: lattice prime differs from " + nu.ell.get_str());
  entries_.insert_or_assign(nu, std::move(lattice));
}

GenusElement rho(const Deviation& dev1, const Deviation& dev2, const GenusGroup& g) {
  const std::size_t n = static_cast<std::size_t>(g.p());
  std::set<PrimeOfK> support;
  for (const auto& [nu, l] : dev1.entries()) support.insert(nu);
  for (const auto& [nu, l] : dev2.entries()) support.insert(nu);
  GenusElement out = g.identity();
  for (const auto& nu : support) {
    auto local = [&](const Deviation& dev) {
      auto it = dev.entries().find(nu);
      if (it == dev.entries().end()) return LatticeClass::standard(n, nu.ell);
      if (it->second.dimension() != n) throw std::invalid_argument("rho: lattice dimension must be p");
      return it->second;
    };
    LatticeClass l1 = local(dev1), l2 = local(dev2);
    if (g.is_ramified(nu)) continue;
    out = g.multiply(out, g.power(g.element_of(nu), type_distance(l1, l2)));
  }
  return out;
}

SearchBoundExceeded::SearchBoundExceeded(std::size_t bound)
    : std::runtime_error("generator search exceeded the first " + std::to_string(bound) +
                         " rational primes") {}

std::vector<PrimeOfK> choose_generators(const GenusGroup& g, const RelativeExtension* e,
                                        const GenusSubgroup* h_l, const std::set<Integer>& avoid,
                                        std::size_t bound) {
  if (g.order() == 1) return {};
  const Integer& d = g.base().discriminant();
  std::optional<PrimeOfK> first;  // constrained: outside h_l
  std::vector<PrimeOfK> rest;     // inside h_l, or all when unconstrained
  std::vector<GenusElement> chosen;
  auto generated = [&] { return GenusSubgroup::generated(g, chosen); };
  GenusSubgroup current = generated();
  for (std::int64_t ell_small : first_primes(bound)) {
    Integer ell(static_cast<long>(ell_small));
    if (avoid.count(ell) || kronecker(d, ell) != 1) continue;
    for (const auto& nu : primes_above(ell, d)) {
      if (g.is_ramified(nu)) continue;
      if (e && divides(nu, e->disc(), d)) continue;
      GenusElement c = g.element_of(nu);
      if (current.contains(c)) continue;
      if (h_l) {
        if (h_l->contains(c)) {
          rest.push_back(nu);
        } else {
          if (first) continue;
          first = nu;
        }
      } else {
        rest.push_back(nu);
      }
      chosen.push_back(c);
      current = generated();
      if (current.order() == g.order()) {
        std::vector<PrimeOfK> out;
        if (first) out.push_back(*first);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
      }
    }
  }
  throw SearchBoundExceeded(bound);
}

Deviation parametrization(const GenusGroup& g, const std::vector<PrimeOfK>& gens,
                          const std::vector<ApartmentFrame>& frames,
                          const std::vector<long>& gamma) {
  const auto m = static_cast<std::size_t>(g.rank());
  if (gens.size() != m || gamma.size() != m)
    throw std::invalid_argument("parametrization: expected " + std::to_string(m) + " generators and coordinates");
  if (!frames.empty() && frames.size() != m)
    throw std::invalid_argument("parametrization: one frame per generator");
  const std::size_t n = static_cast<std::size_t>(g.p());
  Deviation out;
  for (std::size_t i = 0; i < m; ++i) {
    long k = gamma[i] % g.p();
    if (k < 0) k += g.p();
    ApartmentFrame frame = frames.empty() ? ApartmentFrame::standard(n, gens[i].ell) : frames[i];
    if (frame.dimension() != n || frame.prime() != gens[i].ell)
      throw std::invalid_argument("parametrization: frame dimension or prime mismatch");
    auto vertices = chamber_vertices(frame);
    if (!(vertices[0] == LatticeClass::standard(n, gens[i].ell)))
      throw std::invalid_argument("parametrization: frame must contain the reference lattice as vertex 0");
    if (k != 0) out.set(gens[i], vertices[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace selord
