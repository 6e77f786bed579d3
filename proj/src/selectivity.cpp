#include "selord/selectivity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

namespace selord {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::Indeterminate: return "indeterminate";
    case Outcome::Skipped: return "skipped";
  }
  return "?";
}

namespace {

Decision yes(std::string r) { return {Outcome::Yes, std::move(r)}; }
Decision no(std::string r) { return {Outcome::No, std::move(r)}; }
Decision unknown(std::string r) { return {Outcome::Indeterminate, std::move(r)}; }

std::string shape_string(const SplitShape& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.degrees.size(); ++i) out += (i ? "," : "") + std::to_string(s.degrees[i]);
  return out + "}" + (s.repeated ? " with repeated factor" : "");
}

bool mixed(const SplitShape& s) { return !s.splits_completely() && !s.inert(); }

QuadraticNumber evaluate(const RelativeExtension& e, const QuadraticNumber& x) {
  const QuadraticField& k = e.field();
  QuadraticNumber acc{0, 0};
  const auto& c = e.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) acc = k.add(k.mul(acc, x), c[i]);
  return acc;
}

// A root of g in O_K, if any. Candidates come from complex roots (Durand-Kerner)
// rounded to the lattice O_K; small coefficient sizes are also scanned
// exhaustively inside the Cauchy bound.
std::optional<QuadraticNumber> root_in_ok(const RelativeExtension& e, bool* exhaustive) {
  using C = std::complex<long double>;
  const QuadraticField& k = e.field();
  const long double sd = std::sqrt(static_cast<long double>(Integer(abs(k.discriminant())).get_d()));
  const long double t = k.trace_omega().get_d();
  const C omega(t / 2, sd / 2);
  const auto& coeffs = e.coefficients();
  const int p = e.degree();

  auto check = [&](const Integer& u, const Integer& v) -> std::optional<QuadraticNumber> {
    QuadraticNumber x{Rational(u), Rational(v)};
    if (evaluate(e, x).is_zero()) return x;
    return std::nullopt;
  };

  Rational max_norm = 0;
  for (const auto& c : coeffs) max_norm = std::max(max_norm, k.norm(c));
  const double bound = 1 + std::sqrt(max_norm.get_d());
  const double vmax = 2 * bound / static_cast<double>(sd);
  *exhaustive = bound <= 200;
  if (*exhaustive) {
    for (long v = -static_cast<long>(vmax) - 1; v <= static_cast<long>(vmax) + 1; ++v) {
      long center = static_cast<long>(std::lround(-static_cast<double>(t) * v / 2));
      for (long u = center - static_cast<long>(bound) - 1; u <= center + static_cast<long>(bound) + 1; ++u)
        if (auto r = check(u, v)) return r;
    }
    return std::nullopt;
  }

  std::vector<C> c;
  for (const auto& q : coeffs) c.push_back(C(q.u.get_d()) + C(q.v.get_d()) * omega);
  auto eval = [&](C z) {
    C acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
  };
  std::vector<C> z(static_cast<std::size_t>(p));
  const C seed(0.4L, 0.9L);
  z[0] = 1;
  for (int i = 1; i < p; ++i) z[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i) - 1] * seed;
  for (int iter = 0; iter < 2000; ++iter)
    for (int i = 0; i < p; ++i) {
      C denom = 1;
      for (int j = 0; j < p; ++j)
        if (j != i) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      if (std::abs(denom) > 0) z[static_cast<std::size_t>(i)] -= eval(z[static_cast<std::size_t>(i)]) / denom;
    }
  for (const C& r : z) {
    long double vv = r.imag() / (sd / 2);
    long double uu = r.real() - vv * t / 2;
    if (!std::isfinite(uu) || !std::isfinite(vv)) continue;
    Integer u0(static_cast<double>(std::llround(uu))), v0(static_cast<double>(std::llround(vv)));
    for (int du = -1; du <= 1; ++du)
      for (int dv = -1; dv <= 1; ++dv)
        if (auto x = check(u0 + du, v0 + dv)) return x;
  }
  return std::nullopt;
}

// Degrees k in [1, p-1] that a factor of g over K could still have, given
// shapes at primes where g mod ν is squarefree.
void restrict_factor_degrees(std::set<int>& possible, const SplitShape& s) {
  std::vector<bool> reach(64, false);
  reach[0] = true;
  for (int deg : s.degrees)
    for (int x = 63 - deg; x >= 0; --x)
      if (reach[static_cast<std::size_t>(x)]) reach[static_cast<std::size_t>(x + deg)] = true;
  for (auto it = possible.begin(); it != possible.end();)
    it = reach[static_cast<std::size_t>(*it)] ? std::next(it) : possible.erase(it);
}

}  // namespace

Decision embeds_in_algebra(const AlgebraSpec& a, const RelativeExtension& e,
                           std::vector<ShapeSample>* trace) {
  if (a.ram.empty()) return yes("Ram(B) is empty");
  std::vector<std::string> unresolved;
  for (const auto& nu : a.ram) {
    SplitShape s = splitting_shape(nu, e);
    if (trace) trace->push_back({nu, s, std::nullopt});
    if (!s.indeterminate) {
      if (!s.inert())
        return no("ramified prime " + nu.to_string() + " has shape " + shape_string(s) + " in L");
      continue;
    }
    // ν | disc(g): two coprime factors mod ν lift to a splitting over K_ν into
    // factors of degree < p; an Eisenstein shift makes ν totally ramified.
    if (s.degrees.size() >= 2)
      return no("ramified prime " + nu.to_string() + " has local degrees below p in L");
    if (s.degrees.size() == 1 && !s.repeated) continue;
    if (eisenstein_after_shift(nu, e)) continue;
    unresolved.push_back(nu.to_string());
  }
  if (!unresolved.empty()) {
    std::string r = "local degree undetermined at";
    for (const auto& u : unresolved) r += " " + u;
    return unknown(r);
  }
  return yes("every ramified prime of B has local degree p in L");
}

Decision irreducibility_check(const RelativeExtension& e, const SamplingOptions& options,
                              std::vector<ShapeSample>* trace) {
  if (e.disc().is_zero()) return no("g has a repeated factor over K");
  const Integer& d = e.base_discriminant();
  const int p = e.degree();
  std::set<int> possible;
  for (int k = 1; k < p; ++k) possible.insert(k);
  for (std::int64_t ell_small : first_primes(options.bound)) {
    Integer ell(static_cast<long>(ell_small));
    for (const auto& nu : primes_above(ell, d)) {
      SplitShape s = splitting_shape(nu, e);
      if (s.indeterminate || s.repeated) continue;
      restrict_factor_degrees(possible, s);
      if (possible.empty()) {
        if (trace) trace->push_back({nu, s, std::nullopt});
        return yes("shape " + shape_string(s) + " at " + nu.to_string() + " admits no proper factor");
      }
    }
  }
  bool exhaustive = false;
  if (auto root = root_in_ok(e, &exhaustive)) return no("root " + e.field().to_string(*root) + " in O_K");
  if (p == 3) {
    return exhaustive ? yes("no root in O_K within the Cauchy bound")
                      : yes("no root in O_K near the complex roots of g");
  }
  return unknown("no root in O_K, but sampled shapes allow a proper factor");
}

ClassFieldResult class_field_membership(const GenusGroup& g, const RelativeExtension& e,
                                        const SamplingOptions& options) {
  ClassFieldResult out;
  const Integer& d = e.base_discriminant();
  auto refuse = [&](std::string reason, const PrimeOfK& nu) {
    out.contained = no(std::move(reason));
    out.witness = nu;
    return out;
  };
  if (g.order() == 1) {
    out.contained = no("trivial-genus-group");
    return out;
  }
  // Primes of Ram(B) have trivial class, so they split completely in K(R).
  for (const auto& nu : g.ram()) {
    if (!divides(nu, e.disc(), d)) {
      SplitShape s = splitting_shape(nu, e);
      out.samples.push_back({nu, s, g.identity()});
      if (!s.splits_completely()) return refuse("ramified-prime-not-split", nu);
    } else if (eisenstein_after_shift(nu, e)) {
      return refuse("ramified-in-L", nu);
    }
  }
  // K(R) is unramified over K.
  try {
    for (const auto& nu : primes_dividing(e.disc(), d))
      if (eisenstein_after_shift(nu, e)) return refuse("ramified-in-L", nu);
  } catch (const std::runtime_error&) {
    // disc(g) could not be factored; only the sampling below applies.
  }

  std::vector<GenusElement> split_classes;
  GenusSubgroup h = GenusSubgroup::generated(g, split_classes);
  std::vector<std::pair<PrimeOfK, GenusElement>> inert_seen;
  std::size_t unchanged = 0;
  for (std::int64_t ell_small : first_primes(options.bound)) {
    Integer ell(static_cast<long>(ell_small));
    if (kronecker(d, ell) == -1) continue;
    for (const auto& nu : primes_above(ell, d)) {
      if (divides(nu, e.disc(), d)) continue;
      SplitShape s = splitting_shape(nu, e);
      GenusElement c = g.element_of(nu);
      out.samples.push_back({nu, s, c});
      if (mixed(s)) return refuse("non-galois-shape", nu);
      if (s.splits_completely()) {
        if (!h.contains(c)) {
          split_classes.push_back(c);
          h = GenusSubgroup::generated(g, split_classes);
          unchanged = 0;
          if (h.order() == g.order()) return refuse("split-classes-exhaust-genus", nu);
          for (const auto& [prev, pc] : inert_seen)
            if (h.contains(pc)) return refuse("split-classes-generate-inert", prev);
          continue;
        }
      } else {
        if (c == g.identity()) return refuse("identity-class-not-split", nu);
        if (h.contains(c)) return refuse("split-classes-generate-inert", nu);
        inert_seen.emplace_back(nu, c);
      }
      ++unchanged;
      if (h.order() * static_cast<std::size_t>(g.p()) == g.order() && !inert_seen.empty() &&
          unchanged >= options.stabilization) {
        out.contained = yes("accepted-by-stabilization");
        out.h_l = h;
        return out;
      }
    }
  }
  out.contained = unknown("bound-exhausted after " + std::to_string(out.samples.size()) +
                          " samples; split classes generate a subgroup of order " +
                          std::to_string(h.order()) + " in a group of order " +
                          std::to_string(g.order()));
  return out;
}

SelectivityVerdict selectivity_verdict(const AlgebraSpec& a, const OrderSpec& spec,
                                       const RelativeExtension& e, const SamplingOptions& options,
                                       std::shared_ptr<const ClassGroup> class_group) {
  if (a.d != e.base_discriminant()) throw std::invalid_argument("verdict: K differs between B and L");
  if (a.p != e.degree()) throw std::invalid_argument("verdict: [L:K] must equal the degree of B");
  if (spec.family == OrderSpec::Family::Multiplier && !spec.prime)
    throw std::invalid_argument("verdict: multiplier family needs a prime");

  SelectivityVerdict v;
  v.cond1 = {Outcome::Skipped, ""};
  v.cond2 = {Outcome::Skipped, ""};
  v.embeds = {Outcome::Skipped, ""};
  v.irreducible = irreducibility_check(e, options, &v.certificates);
  if (v.irreducible.outcome == Outcome::No)
    throw std::invalid_argument("verdict: g is reducible over K (" + v.irreducible.reason + ")");
  if (v.irreducible.outcome == Outcome::Indeterminate) return v;

  v.embeds = embeds_in_algebra(a, e, &v.certificates);
  if (v.embeds.outcome == Outcome::No) {
    v.fraction = Rational(0);
    return v;
  }
  if (v.embeds.outcome == Outcome::Indeterminate) return v;

  if (!class_group) class_group = std::make_shared<const ClassGroup>(a.d);
  v.genus = std::make_shared<const GenusGroup>(class_group, a.p, a.ram);
  ClassFieldResult cf = class_field_membership(*v.genus, e, options);
  v.cond1 = cf.contained;
  if (cf.witness) v.cond1.reason += " at " + cf.witness->to_string();
  v.certificates.insert(v.certificates.end(), cf.samples.begin(), cf.samples.end());
  if (v.cond1.outcome == Outcome::No) {
    v.fraction = Rational(1);
    return v;
  }
  if (v.cond1.outcome == Outcome::Indeterminate) return v;
  v.h_l = cf.h_l;

  ConductorSupport support;
  try {
    support = conductor_support(spec, e, true);
  } catch (const std::runtime_error& err) {
    v.cond2 = unknown(std::string("conductor support unavailable: ") + err.what());
    return v;
  }
  v.conductor = support.primes;
  v.cond2 = yes("every conductor prime splits completely in L");
  for (const auto& nu : support.primes)
    if (!v.h_l->contains(v.genus->element_of(nu))) {
      v.cond2 = no("conductor prime " + nu.to_string() + " does not split completely in L");
      break;
    }
  v.selective = v.cond2.outcome == Outcome::Yes;
  v.fraction = v.selective ? Rational(1, a.p) : Rational(1);
  return v;
}

bool admits_order(const SelectivityVerdict& v, const Deviation& dev) {
  if (!v.complete()) throw std::logic_error("admits_order: verdict is indeterminate");
  if (v.embeds.outcome == Outcome::No) return false;
  if (!v.selective) return true;
  return v.h_l->contains(rho(Deviation{}, dev, *v.genus));
}

}  // namespace selord
