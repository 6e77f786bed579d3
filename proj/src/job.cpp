#include "selord/job.hpp"

#include <chrono>
#include <regex>

#include "selord/cache.hpp"
#include "selord/selectivity.hpp"

namespace selord {

using nlohmann::json;

namespace {

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Signals exit code 2 with a partial outcome.
struct Indeterminate {
  json outcome;
};

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

Integer parse_integer(const json& j, const char* what) {
  if (j.is_number_integer()) return Integer(j.dump());
  static const std::regex pattern("-?[0-9]+");
  if (!j.is_string() || !std::regex_match(j.get<std::string>(), pattern))
    throw InputError(std::string(what) + ": expected a decimal integer string");
  return Integer(j.get<std::string>());
}

Rational parse_rational(const json& j, const char* what) {
  if (j.is_string()) {
    static const std::regex pattern("-?[0-9]+(/[0-9]+)?");
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, pattern)) throw InputError(std::string(what) + ": expected \"a\" or \"a/b\"");
    Rational q(s);
    if (q.get_den() == 0) throw InputError(std::string(what) + ": zero denominator");
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(j, what));
}

int parse_small(const json& j, const char* what, long lo, long hi) {
  Integer v = parse_integer(j, what);
  if (v < lo || v > hi) throw InputError(std::string(what) + " out of range");
  return static_cast<int>(v.get_si());
}

LocalMatrix parse_matrix(const json& j, const Integer& prime, const char* what) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected a square matrix");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) throw InputError(std::string(what) + ": expected a square matrix");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(parse_rational(x, what));
    rows.push_back(std::move(r));
  }
  return LocalMatrix(rows, prime);
}

Integer parse_prime_number(const json& j, const char* what) {
  Integer p = parse_integer(j, what);
  if (!is_prime(p)) throw InputError(std::string(what) + ": not a prime");
  return p;
}

Integer parse_discriminant(const json& j) {
  Integer d = parse_integer(j, "d");
  if (d >= 0 || !is_fundamental_discriminant(d)) throw InputError("d: expected a negative fundamental discriminant");
  return d;
}

int parse_degree(const json& j) {
  int p = parse_small(j, "p", 3, 97);
  if (!is_prime(Integer(p))) throw InputError("p: expected an odd prime");
  return p;
}

PrimeOfK parse_prime_of_k(const json& j, const Integer& d) {
  Integer ell = parse_prime_number(field(j, "ell"), "ell");
  int which = j.contains("which") ? parse_small(j.at("which"), "which", 0, 1) : 0;
  return prime_class(ell, d, which);
}

std::vector<PrimeOfK> parse_ram(const json& job, const Integer& d) {
  std::vector<PrimeOfK> out;
  if (!job.contains("ram")) return out;
  if (!job.at("ram").is_array()) throw InputError("ram: expected a list of primes");
  for (const auto& nu : job.at("ram")) out.push_back(parse_prime_of_k(nu, d));
  return out;
}

RelativeExtension parse_extension(const json& job, const Integer& d) {
  const json& g = field(job, "g");
  if (!g.is_array()) throw InputError("g: expected a coefficient list");
  std::vector<QuadraticNumber> coeffs;
  for (const auto& c : g) {
    if (c.is_array()) {
      if (c.size() != 2) throw InputError("g: coefficient pairs are [u, v]");
      coeffs.push_back({Rational(parse_integer(c[0], "g")), Rational(parse_integer(c[1], "g"))});
    } else {
      coeffs.push_back({Rational(parse_integer(c, "g")), 0});
    }
  }
  return RelativeExtension(d, std::move(coeffs));
}

OrderSpec parse_order(const json& job, const Integer& d) {
  const json& o = field(job, "order");
  const json& family = field(o, "family");
  if (family == "monogenic") return OrderSpec::monogenic();
  if (family == "multiplier") return OrderSpec::multiplier(parse_prime_of_k(field(o, "prime"), d));
  throw InputError("order.family: expected \"monogenic\" or \"multiplier\"");
}

Deviation parse_deviation(const json& j, const Integer& d, int p) {
  Deviation dev;
  if (!j.is_array()) throw InputError("deviation: expected a list of entries");
  for (const auto& entry : j) {
    PrimeOfK nu = parse_prime_of_k(field(entry, "prime"), d);
    LocalMatrix basis = parse_matrix(field(entry, "basis"), nu.ell, "basis");
    if (basis.size() != static_cast<std::size_t>(p)) throw InputError("deviation: basis must be p x p");
    dev.set(nu, LatticeClass(basis));
  }
  return dev;
}

json matrix_json(const LocalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

json form_json(const QuadForm& f) { return {f.a.get_str(), f.b.get_str(), f.c.get_str()}; }

json prime_json(const PrimeOfK& nu) {
  return {{"ell", nu.ell.get_str()}, {"which", nu.which}, {"kind", to_string(nu.kind)}};
}

json genus_json(const GenusGroup& g, GenusElement x) {
  return form_json(g.base().element(g.representative(x)));
}

json decision_json(const Decision& d) {
  return {{"outcome", to_string(d.outcome)}, {"reason", d.reason}};
}

json sample_json(const ShapeSample& s, const GenusGroup* g) {
  json out{{"prime", prime_json(s.prime)},
           {"degrees", s.shape.degrees},
           {"repeated", s.shape.repeated},
           {"indeterminate", s.shape.indeterminate}};
  if (s.genus_class && g) out["class"] = genus_json(*g, *s.genus_class);
  return out;
}

struct Context {
  const RunOptions& options;
  const json& job;
  json certificates = json::array();

  SamplingOptions sampling() const {
    SamplingOptions s;
    if (job.contains("bound")) s.bound = static_cast<std::size_t>(parse_small(job.at("bound"), "bound", 1, 10'000'000));
    if (job.contains("stabilization"))
      s.stabilization = static_cast<std::size_t>(parse_small(job.at("stabilization"), "stabilization", 1, 10'000'000));
    if (options.bound) s.bound = *options.bound;
    if (options.stabilization) s.stabilization = *options.stabilization;
    return s;
  }

  std::shared_ptr<const ClassGroup> class_group(const Integer& d) const {
    return load_class_group(d, CacheOptions{options.use_cache, options.cache_path});
  }
};

json run_td(Context& ctx) {
  Integer prime = parse_prime_number(field(ctx.job, "prime"), "prime");
  LatticeClass l1(parse_matrix(field(ctx.job, "L1"), prime, "L1"));
  LatticeClass l2(parse_matrix(field(ctx.job, "L2"), prime, "L2"));
  if (l1.dimension() != l2.dimension()) throw InputError("L1 and L2 differ in dimension");
  return {{"type_distance", type_distance(l1, l2)}};
}

json run_chamber(Context& ctx) {
  Integer prime = parse_prime_number(field(ctx.job, "prime"), "prime");
  ApartmentFrame frame(parse_matrix(field(ctx.job, "frame"), prime, "frame"));
  auto vertices = chamber_vertices(frame);
  json vs = json::array();
  json tds = json::array();
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    vs.push_back({{"index", k}, {"canonical", matrix_json(vertices[k].canonical())}, {"type", vertices[k].type()}});
    json row = json::array();
    for (const auto& other : vertices) row.push_back(type_distance(vertices[k], other));
    tds.push_back(row);
  }
  return {{"vertices", vs}, {"type_distances", tds}};
}

json run_classgroup(Context& ctx) {
  Integer d = parse_discriminant(field(ctx.job, "d"));
  auto g = ctx.class_group(d);
  json forms = json::array();
  for (const auto& f : g->elements()) forms.push_back(form_json(f));
  json structure = json::array();
  for (const auto& s : g->structure()) structure.push_back(s.get_str());
  return {{"h", g->order()}, {"structure", structure}, {"forms", forms}};
}

json run_split(Context& ctx) {
  Integer d = parse_discriminant(field(ctx.job, "d"));
  RelativeExtension e = parse_extension(ctx.job, d);
  PrimeOfK nu = parse_prime_of_k(field(ctx.job, "prime"), d);
  SplitShape s = splitting_shape(nu, e);
  json out{{"prime", prime_json(nu)},
           {"degrees", s.degrees},
           {"repeated", s.repeated},
           {"indeterminate", s.indeterminate},
           {"splits_completely", s.splits_completely()},
           {"inert", s.inert()},
           {"residue_field_order", residue_field(nu, d).field.order().get_str()}};
  if (s.indeterminate) throw Indeterminate{out};
  return out;
}

json run_rho(Context& ctx) {
  Integer d = parse_discriminant(field(ctx.job, "d"));
  int p = parse_degree(field(ctx.job, "p"));
  GenusGroup g(ctx.class_group(d), p, parse_ram(ctx.job, d));
  Deviation dev1 = parse_deviation(field(ctx.job, "dev1"), d, p);
  Deviation dev2 = parse_deviation(field(ctx.job, "dev2"), d, p);
  GenusElement r = rho(dev1, dev2, g);
  return {{"class", genus_json(g, r)}, {"identity", r == g.identity()}, {"genus_order", g.order()}};
}

json verdict_json(const SelectivityVerdict& v) {
  json out{{"irreducible", decision_json(v.irreducible)},
           {"embeds", decision_json(v.embeds)},
           {"cond1", decision_json(v.cond1)},
           {"cond2", decision_json(v.cond2)},
           {"selective", v.selective},
           {"fraction", v.fraction ? json(v.fraction->get_str()) : json(nullptr)}};
  if (v.genus) out["genus_order"] = v.genus->order();
  if (v.h_l && v.genus) {
    json members = json::array();
    for (std::size_t c = 0; c < v.genus->order(); ++c)
      if (v.h_l->contains({c})) members.push_back(genus_json(*v.genus, {c}));
    out["h_l"] = members;
  }
  json conductor = json::array();
  for (const auto& nu : v.conductor) conductor.push_back(prime_json(nu));
  out["conductor"] = conductor;
  return out;
}

SelectivityVerdict compute_verdict(Context& ctx, const Integer& d, int p) {
  AlgebraSpec a{d, p, parse_ram(ctx.job, d)};
  RelativeExtension e = parse_extension(ctx.job, d);
  OrderSpec spec = parse_order(ctx.job, d);
  SelectivityVerdict v = selectivity_verdict(a, spec, e, ctx.sampling(), ctx.class_group(d));
  if (ctx.options.certificates)
    for (const auto& s : v.certificates) ctx.certificates.push_back(sample_json(s, v.genus.get()));
  return v;
}

json run_verdict(Context& ctx) {
  Integer d = parse_discriminant(field(ctx.job, "d"));
  int p = parse_degree(field(ctx.job, "p"));
  SelectivityVerdict v = compute_verdict(ctx, d, p);
  json out = verdict_json(v);
  if (!v.complete()) throw Indeterminate{out};
  return out;
}

json run_parametrize(Context& ctx) {
  Integer d = parse_discriminant(field(ctx.job, "d"));
  int p = parse_degree(field(ctx.job, "p"));
  std::optional<SelectivityVerdict> verdict;
  std::optional<RelativeExtension> e;
  if (ctx.job.contains("g")) {
    e = parse_extension(ctx.job, d);
    if (ctx.job.contains("order")) verdict = compute_verdict(ctx, d, p);
  }
  GenusGroup g(ctx.class_group(d), p, parse_ram(ctx.job, d));
  if (g.order() > 729) throw InputError("genus group too large to enumerate");
  const GenusSubgroup* h_l = verdict && verdict->selective ? &*verdict->h_l : nullptr;
  auto gens = choose_generators(g, e ? &*e : nullptr, h_l);

  json out;
  if (verdict) out["verdict"] = verdict_json(*verdict);
  json gj = json::array();
  for (const auto& nu : gens) gj.push_back(prime_json(nu));
  out["generators"] = gj;
  json orders = json::array();
  std::size_t admissible = 0;
  std::vector<long> gamma(gens.size(), 0);
  for (std::size_t count = 0; count < g.order(); ++count) {
    Deviation dev = parametrization(g, gens, {}, gamma);
    json entries = json::array();
    for (const auto& [nu, l] : dev.entries())
      entries.push_back({{"prime", prime_json(nu)}, {"canonical", matrix_json(l.canonical())}});
    json item{{"gamma", gamma}, {"deviation", entries}, {"rho", genus_json(g, rho(Deviation{}, dev, g))}};
    if (verdict && verdict->complete()) {
      bool ok = admits_order(*verdict, dev);
      admissible += ok;
      item["admissible"] = ok;
    }
    orders.push_back(item);
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      if (++gamma[i] < p) break;
      gamma[i] = 0;
    }
  }
  out["orders"] = orders;
  if (verdict && verdict->complete()) out["admissible_count"] = admissible;
  if (verdict && !verdict->complete()) throw Indeterminate{out};
  return out;
}

}  // namespace

RunResult run_job(const std::string& subcommand, const json& job, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  json& doc = result.document;
  doc["subcommand"] = subcommand;
  doc["job"] = job;
  doc["version"] = kVersion;
  Context ctx{options, job};
  auto error = [&](const char* kind, const std::string& message) {
    doc["error"] = {{"kind", kind}, {"message", message}};
  };
  try {
    if (!job.is_object()) throw InputError("job must be a JSON object");
    if (subcommand == "td") doc["outcome"] = run_td(ctx);
    else if (subcommand == "chamber") doc["outcome"] = run_chamber(ctx);
    else if (subcommand == "classgroup") doc["outcome"] = run_classgroup(ctx);
    else if (subcommand == "split") doc["outcome"] = run_split(ctx);
    else if (subcommand == "rho") doc["outcome"] = run_rho(ctx);
    else if (subcommand == "verdict") doc["outcome"] = run_verdict(ctx);
    else if (subcommand == "parametrize") doc["outcome"] = run_parametrize(ctx);
    else throw InputError("unknown subcommand \"" + subcommand + "\"");
    result.exit_code = 0;
  } catch (const Indeterminate& ind) {
    doc["outcome"] = ind.outcome;
    result.exit_code = 2;
  } catch (const SearchBoundExceeded& err) {
    error("indeterminate", err.what());
    result.exit_code = 2;
  } catch (const json::exception& err) {
    error("input", err.what());
    result.exit_code = 1;
  } catch (const std::logic_error& err) {
    error("input", err.what());
    result.exit_code = 1;
  } catch (const std::runtime_error& err) {
    error("indeterminate", err.what());
    result.exit_code = 2;
  }
  if (options.certificates) doc["certificates"] = ctx.certificates;
  doc["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return result;
}

}  // namespace selord
