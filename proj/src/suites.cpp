#include "residueseq/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>

namespace residueseq {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

template <typename T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

std::string coeff_list(const std::vector<Residue>& coeffs) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out += (i ? "," : "") + std::to_string(coeffs[i]);
  return out;
}

// The polynomial a suite runs on: the configured one, or the first
// (strongly) primitive polynomial in lexicographic order.
PrimitivityCertificate pick_certificate(const RingContext& ctx, const SuiteConfig& config, bool strongly) {
  if (config.f) {
    RingPolynomial f(ctx, *config.f);
    auto cert = certify(f, config.seed);
    if (!cert.primitive) throw InvalidInput("configured f is not primitive over Z/" + std::to_string(ctx.modulus()));
    if (strongly && !cert.strongly_primitive) throw InvalidInput("configured f is not strongly primitive");
    return cert;
  }
  const auto f = find_primitive(ctx, config.n, {.strongly = strongly, .budget = config.budget, .seed = config.seed});
  if (!f) {
    throw InvalidInput("no " + std::string(strongly ? "strongly " : "") + "primitive polynomial of degree " +
                       std::to_string(config.n) + " found over Z/" + std::to_string(ctx.modulus()));
  }
  return certify(*f, config.seed);
}

ordered_json ring_params(const PrimitivityCertificate& cert) {
  return {{"p", cert.context().p()}, {"e", cert.context().e()}, {"n", cert.n()}, {"f", format_polynomial(cert.f)}};
}

// phi(a) from the top digit and a mod p^(e-1), which is the mixed-radix
// index of the lower digits in eta's table.
struct FastMap {
  std::vector<Digit> g;
  const std::vector<Digit>* eta;
  std::int64_t low_modulus;
  std::int64_t p;

  FastMap(const CompressingMap& m, std::int64_t low) : g(m.g().table()), eta(&m.eta().table()), low_modulus(low), p(m.p()) {}
  Digit operator()(Residue a) const {
    return (g[static_cast<std::size_t>(a / low_modulus)] + (*eta)[static_cast<std::size_t>(a % low_modulus)]) % p;
  }
};

std::vector<std::vector<Residue>> primitive_sequences(const PrimitivityCertificate& cert) {
  std::vector<std::vector<Residue>> out;
  for (const auto& init : primitive_states(cert.context(), cert.n())) out.push_back(generate(cert.f, init).terms());
  return out;
}

// --- recurrence ---------------------------------------------------------

std::vector<UniformityReport> suite_recurrence(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {3})) {
    for (int e : or_default(config.exponents, {2, 3, 4})) {
      const RingContext ctx(p, e);
      if (e < 2) throw InvalidInput("recurrence suite needs e >= 2");
      const auto cert = pick_certificate(ctx, config, false);
      auto states = primitive_states(ctx, cert.n());
      std::mt19937_64 rng(config.seed);
      std::shuffle(states.begin(), states.end(), rng);
      if (states.size() > config.states) states.resize(config.states);

      std::vector<RecurringIdentity> identities{RecurringIdentity::top_level};
      if (e == 3) identities.push_back(RecurringIdentity::binomial_e3);
      if (e >= 4) identities.push_back(RecurringIdentity::two_below);

      for (auto identity : identities) {
        UniformityReport report;
        report.experiment = identity == RecurringIdentity::top_level     ? "recurrence-top-level"
                            : identity == RecurringIdentity::two_below ? "recurrence-two-below"
                                                                       : "recurrence-binomial-e3";
        report.params = ring_params(cert);
        report.params["states"] = states.size();
        report.seed = config.seed;
        bool fallback_used = false;
        for (const auto& init : states) {
          const auto s = generate(cert.f, init);
          for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(p); ++j) {
            ++report.pairs;
            auto check = check_recurring_identity(s, cert, j, identity);
            if (!check.holds && identity != RecurringIdentity::top_level) {
              const auto fallback = check_recurring_identity(s, cert, j, identity, CarryReading::nested);
              if (fallback.holds) {
                fallback_used = true;
                check = fallback;
              }
            }
            report.positions += check.positions;
            if (!check.holds) report.fail({{"state", init}, {"j", j}, {"t", *check.witness_t}});
          }
        }
        if (identity != RecurringIdentity::top_level) {
          report.details["carry_reading"] = fallback_used ? "nested" : "separate";
          report.details["fallback_used"] = fallback_used;
        }
        out.push_back(std::move(report));
      }
    }
  }
  return out;
}

// --- carry --------------------------------------------------------------

std::vector<UniformityReport> suite_carry(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {3, 5, 7, 11})) {
    UniformityReport report;
    report.experiment = "carry-coefficient";
    report.params = {{"p", p}};
    report.seed = config.seed;
    for (Digit u = 0; u < p; ++u) {
      ++report.positions;
      const auto poly = carry_map_poly(u, p);
      const auto top = poly.coeff(static_cast<int>(p - 1));
      if (top != (p - u) % p) report.fail({{"u", u}, {"coefficient", top}});
    }
    out.push_back(std::move(report));
  }
  return out;
}

// --- periods ------------------------------------------------------------

std::vector<UniformityReport> suite_periods(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {3})) {
    for (int e : or_default(config.exponents, {2, 3})) {
      const RingContext ctx(p, e);
      const auto n = config.n;
      const auto pu = static_cast<std::uint64_t>(p);
      std::uint64_t T = 1;
      for (int i = 0; i < n; ++i) T *= pu;
      T -= 1;

      // Ward bound and order lift chain over every candidate.
      UniformityReport ward;
      ward.experiment = "ward-bound";
      ward.params = {{"p", p}, {"e", e}, {"n", n}};
      ward.seed = config.seed;
      std::vector<RingPolynomial> primitive;
      const auto field = ctx.residue_field();
      for (const auto& coeffs : all_states(ctx, n)) {
        if (coeffs[0] % p == 0) continue;
        auto full = coeffs;
        full.push_back(1);
        RingPolynomial f(ctx, full);
        ++ward.positions;
        const auto order = order_of_x(f);
        const auto base = order_of_x(f.in_context(field));
        bool in_chain = false;
        for (std::uint64_t j = 0, q = 1; j < static_cast<std::uint64_t>(e); ++j, q *= pu) in_chain |= order == base * q;
        if (order > ward_bound(ctx, n) || !in_chain) {
          ward.fail({{"f", format_polynomial(f)}, {"order", order}, {"order_mod_p", base}});
        }
        if (order == ward_bound(ctx, n)) primitive.push_back(std::move(f));
      }
      ward.details["primitive_count"] = primitive.size();
      out.push_back(std::move(ward));

      UniformityReport report;
      report.experiment = "level-periods";
      report.params = {{"p", p}, {"e", e}, {"n", n}, {"polynomials", primitive.size()}};
      report.seed = config.seed;
      for (const auto& f : primitive) {
        for (const auto& init : all_states(ctx, n)) {
          ++report.pairs;
          const auto s = generate(f, init);
          int first_nonzero = -1;
          for (int i = 0; i < e && first_nonzero < 0; ++i) {
            if (!level(s, i).is_zero()) first_nonzero = i;
          }
          std::uint64_t expected = 1;
          if (first_nonzero >= 0) {
            expected = T;
            for (int i = 0; i < e - 1 - first_nonzero; ++i) expected *= pu;
          }
          ++report.positions;
          if (s.period() != expected) {
            report.fail({{"f", format_polynomial(f)}, {"state", init}, {"period", s.period()}, {"expected", expected}});
          }
          if (first_nonzero == 0) {
            std::uint64_t level_expected = T;
            for (int i = 0; i < e; ++i, level_expected *= pu) {
              ++report.positions;
              if (level(s, i).period() != level_expected) {
                report.fail({{"f", format_polynomial(f)}, {"state", init}, {"level", i},
                             {"period", level(s, i).period()}, {"expected", level_expected}});
              }
            }
          }
        }
      }
      out.push_back(std::move(report));
    }
  }
  return out;
}

// --- distribution -------------------------------------------------------

UniformityReport linear_relation(std::int64_t p, int n, std::uint64_t seed) {
  const RingContext field(p, 1);
  UniformityReport report;
  report.experiment = "linear-relation";
  report.seed = seed;
  const auto fs = enumerate_primitive(field, n);
  report.params = {{"p", p}, {"n", n}, {"polynomials", fs.size()}};
  for (const auto& f : fs) {
    const auto bs = primitive_states(field, n);
    const auto as = all_states(field, n);
    for (const auto& b_init : bs) {
      const auto b = generate(f, b_init);
      for (const auto& a_init : as) {
        const auto a = generate(f, a_init);
        ++report.pairs;
        std::optional<Digit> lambda;
        for (Digit l = 0; l < p && !lambda; ++l) {
          bool match = true;
          for (std::uint64_t t = 0; t < b.period() && match; ++t) match = a.at(t) == l * b.at(t) % p;
          if (match) lambda = l;
        }
        for (Digit k = 1; k < p; ++k) {
          std::set<Digit> values;
          for (std::uint64_t t = 0; t < b.period(); ++t) {
            ++report.positions;
            if (b.at(t) == k) values.insert(a.at(t));
          }
          const std::set<Digit> expected = [&] {
            if (lambda) return std::set<Digit>{*lambda * k % p};
            std::set<Digit> all;
            for (Digit v = 0; v < p; ++v) all.insert(v);
            return all;
          }();
          if (values != expected) {
            report.fail({{"f", format_polynomial(f)}, {"a", a_init}, {"b", b_init}, {"k", k}});
          }
        }
      }
    }
  }
  return report;
}

UniformityReport top_level_relation(const PrimitivityCertificate& cert, std::uint64_t seed) {
  const auto& ctx = cert.context();
  const auto p = ctx.p();
  const int e = ctx.e();
  const auto field = ctx.residue_field();
  const auto fp = cert.f.in_context(field);
  UniformityReport report;
  report.experiment = "top-level-relation";
  report.params = ring_params(cert);
  report.seed = seed;
  std::uint64_t singletons = 0;
  const auto gammas = primitive_states(field, cert.n());
  for (const auto& c_init : all_states(ctx, cert.n())) {
    const auto c = generate(cert.f, c_init);
    bool lower_zero = true;
    for (int i = 0; i < e - 1 && lower_zero; ++i) lower_zero = level(c, i).is_zero();
    const auto top = level(c, e - 1);
    for (const auto& g_init : gammas) {
      const auto gamma = generate(fp, g_init);
      std::optional<Digit> lambda;
      if (lower_zero) {
        for (Digit l = 0; l < p && !lambda; ++l) {
          bool match = true;
          for (std::uint64_t t = 0; t < cert.period && match; ++t) match = top.at(t) == l * gamma.at(t) % p;
          if (match) lambda = l;
        }
      }
      ++report.pairs;
      for (Digit k = 1; k < p; ++k) {
        std::set<Digit> values;
        for (std::uint64_t t = 0; t < cert.period; ++t) {
          ++report.positions;
          if (gamma.at(t) == k) values.insert(top.at(t));
        }
        bool ok = false;
        if (values.size() == static_cast<std::size_t>(p)) {
          ok = !lambda;
        } else if (values.size() == 1) {
          ++singletons;
          ok = lambda && *values.begin() == *lambda * k % p;
        }
        if (!ok) report.fail({{"c", c_init}, {"gamma", g_init}, {"k", k}, {"values", values}});
      }
    }
  }
  report.details["singleton_cases"] = singletons;
  return report;
}

UniformityReport top_level_shift(const PrimitivityCertificate& cert, std::uint64_t seed) {
  const auto& ctx = cert.context();
  const auto p = ctx.p();
  const int e = ctx.e();
  UniformityReport report;
  report.experiment = "top-level-shift";
  report.params = ring_params(cert);
  report.seed = seed;
  const auto low_mod = ctx.modulus() / p;
  const auto states = primitive_states(ctx, cert.n());
  std::vector<LRSequence> seqs;
  std::vector<LevelSequence> alphas;
  for (const auto& init : states) {
    seqs.push_back(generate(cert.f, init));
    alphas.push_back(alpha_sequence(seqs.back(), cert));
  }
  std::uint64_t premises = 0;
  for (std::size_t ia = 0; ia < seqs.size(); ++ia) {
    for (std::size_t ib = 0; ib < seqs.size(); ++ib) {
      const auto& a = seqs[ia];
      const auto& b = seqs[ib];
      const auto& alpha = alphas[ia];
      const auto& beta = alphas[ib];
      std::optional<Digit> lambda;
      for (Digit l = 1; l < p && !lambda; ++l) {
        bool match = true;
        for (std::uint64_t t = 0; t < cert.period && match; ++t) match = beta.at(t) == l * alpha.at(t) % p;
        if (match) lambda = l;
      }
      if (!lambda) continue;
      ++report.pairs;
      for (Digit k = 1; k < p; ++k) {
        for (Digit delta = 0; delta < p; ++delta) {
          bool premise = true;
          for (std::uint64_t t = 0; t < cert.period && premise; ++t) {
            ++report.positions;
            if (alpha.at(t) != k) continue;
            premise = b.digit(t, e - 1) == (delta + *lambda * a.digit(t, e - 1)) % p;
          }
          if (!premise) continue;
          ++premises;
          const auto scale = delta * mod_inverse(k, p) % p;
          bool conclusion = *lambda == 1;
          for (std::uint64_t t = 0; t < cert.period && conclusion; ++t) {
            conclusion = a.at(t) % low_mod == b.at(t) % low_mod &&
                         ((b.digit(t, e - 1) - a.digit(t, e - 1)) % p + p) % p == scale * alpha.at(t) % p;
          }
          if (!conclusion) {
            report.fail({{"a", states[ia]}, {"b", states[ib]}, {"k", k}, {"delta", delta}, {"lambda", *lambda}});
          }
        }
      }
    }
  }
  report.details["premise_cases"] = premises;
  if (premises == 0) report.fail({{"reason", "no pair satisfied the premise"}});
  return report;
}

std::vector<UniformityReport> suite_distribution(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {3})) {
    out.push_back(linear_relation(p, config.n, config.seed));
    for (int e : or_default(config.exponents, {2})) {
      const RingContext ctx(p, e);
      out.push_back(top_level_relation(pick_certificate(ctx, config, false), config.seed));
      out.push_back(top_level_shift(pick_certificate(ctx, config, true), config.seed));
    }
  }
  return out;
}

// --- alpha-k ------------------------------------------------------------

std::vector<MultivariatePoly> eta_grid(const SuiteConfig& config, std::int64_t p, int e) {
  if (config.all_eta) {
    const auto arity = e - 1;
    std::size_t size = 1;
    for (int i = 0; i < arity; ++i) size *= static_cast<std::size_t>(p);
    double count = 1;
    for (std::size_t i = 0; i < size; ++i) count *= static_cast<double>(p);
    if (count > 100000) throw InvalidInput("--all-eta would enumerate more than 100000 functions");
    std::vector<MultivariatePoly> out;
    std::vector<Digit> table(size, 0);
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(count); ++idx) {
      auto rest = idx;
      for (auto& v : table) {
        v = static_cast<Digit>(rest % static_cast<std::size_t>(p));
        rest /= static_cast<std::size_t>(p);
      }
      out.push_back(MultivariatePoly::from_table(p, arity, table));
    }
    return out;
  }
  if (config.eta) return {parse_map_spec("g=x; eta=" + *config.eta, p, e).eta()};
  return {MultivariatePoly(p, e - 1)};
}

UnivariateFn suite_g(const SuiteConfig& config, std::int64_t p, int fallback_degree) {
  if (config.g) return parse_univariate(*config.g, p);
  const int d = config.deg_g.value_or(fallback_degree);
  if (d < 1 || d > p - 1) throw InvalidInput("--deg-g must lie in [1, p-1]");
  std::vector<Digit> coeffs(static_cast<std::size_t>(d) + 1, 0);
  coeffs.back() = 1;
  return UnivariateFn(p, coeffs);
}

std::vector<UniformityReport> suite_alpha_k(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {3})) {
    for (int e : or_default(config.exponents, {2})) {
      const RingContext ctx(p, e);
      const auto g = suite_g(config, p, 1);
      const auto cert = pick_certificate(ctx, config, g.degree() >= 2);
      std::vector<Digit> ks;
      if (config.k) {
        ks.push_back(*config.k);
      } else {
        for (Digit k = 1; k < p; ++k) ks.push_back(k);
      }
      const ScanOptions options{.budget = config.budget, .seed = config.seed};
      for (const auto& eta : eta_grid(config, p, e)) {
        const CompressingMap m(g, eta);
        for (auto k : ks) out.push_back(verify_alpha_k_injectivity(cert, m, k, options));
        out.push_back(verify_injectivity(cert, m, options));
      }
    }
  }
  return out;
}

// --- thm7 ---------------------------------------------------------------

std::vector<UnivariateFn> permutation_polys(std::int64_t p) {
  std::vector<Digit> perm(static_cast<std::size_t>(p));
  for (Digit i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<UnivariateFn> out;
  do {
    auto g = interpolate(perm, p);
    if (g.degree() >= 1) out.push_back(std::move(g));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<UniformityReport> suite_thm7(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {3, 5})) {
    for (int e : or_default(config.exponents, {2})) {
      const RingContext ctx(p, e);
      const auto cert = pick_certificate(ctx, config, true);
      const auto low_mod = ctx.modulus() / p;

      UniformityReport identity_case;
      identity_case.experiment = "thm7-identity-map";
      identity_case.params = {{"p", p}, {"e", e}};
      identity_case.seed = config.seed;
      const auto identity = construct_thm7(UnivariateFn::identity(p), 0, e);
      identity_case.details = {{"z", identity.z}, {"w", identity.w}};
      // Cited form: x_{e-1} + (-1)^e (x_{e-2}^(p-1) - 1)...(x_0^(p-1) - 1) - (p-1)/2.
      std::vector<std::pair<Exponents, Digit>> terms;
      terms.emplace_back(Exponents(static_cast<std::size_t>(e - 1), 0), -(p - 1) / 2);
      for (unsigned mask = 0; mask < (1U << (e - 1)); ++mask) {
        Exponents exps(static_cast<std::size_t>(e - 1), 0);
        int zeros = 0;
        for (int i = 0; i < e - 1; ++i) {
          if (mask & (1U << i)) {
            exps[static_cast<std::size_t>(i)] = static_cast<int>(p - 1);
          } else {
            ++zeros;
          }
        }
        terms.emplace_back(std::move(exps), (e + zeros) % 2 == 0 ? 1 : -1);
      }
      const CompressingMap cited(UnivariateFn::identity(p), MultivariatePoly::from_terms(p, e - 1, terms));
      const FastMap cited_phi(cited, low_mod);
      bool cited_uniform = true;
      for (const auto& seq : primitive_sequences(cert)) {
        for (auto a : seq) cited_uniform &= (cited_phi(a) == 0) == (cited_phi(ctx.neg(a)) == 0);
      }
      const auto coefficient = full_monomial_coefficient(identity.map.eta());
      identity_case.details["full_coefficient"] = coefficient;
      identity_case.details["cited_form_zero_uniform"] = cited_uniform;
      identity_case.positions = 1;
      if (identity.z != 0 || identity.w != (p + 1) / 2 || coefficient != excluded_full_coefficient(p, e)) {
        identity_case.fail({{"z", identity.z}, {"w", identity.w}, {"full_coefficient", coefficient}});
      }
      out.push_back(std::move(identity_case));

      UniformityReport report;
      report.experiment = "thm7";
      report.params = ring_params(cert);
      report.seed = config.seed;
      std::vector<UnivariateFn> gs;
      if (config.g) {
        gs.push_back(parse_univariate(*config.g, p));
      } else if (p <= 5) {
        gs = permutation_polys(p);
      } else {
        gs.push_back(UnivariateFn::identity(p));
      }
      std::vector<Digit> ss;
      if (config.s) {
        ss.push_back(*config.s);
      } else {
        for (Digit s = 0; s < p; ++s) ss.push_back(s);
      }
      report.params["g_count"] = gs.size();
      const auto seqs = primitive_sequences(cert);
      for (const auto& g : gs) {
        for (auto s : ss) {
          const auto built = construct_thm7(g, s, e);
          const FastMap phi(built.map, low_mod);
          for (std::size_t i = 0; i < seqs.size(); ++i) {
            ++report.pairs;
            for (std::size_t t = 0; t < seqs[i].size(); ++t) {
              ++report.positions;
              const auto a = seqs[i][t];
              if ((phi(a) == s) != (phi(ctx.neg(a)) == s)) {
                report.fail({{"g", format_univariate(g)}, {"s", s}, {"state", primitive_states(ctx, cert.n())[i]},
                             {"t", t}});
                break;
              }
            }
          }
        }
      }
      out.push_back(std::move(report));
    }
  }
  return out;
}

// --- thm8 ---------------------------------------------------------------

std::vector<UniformityReport> suite_thm8(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {5, 7})) {
    for (int e : or_default(config.exponents, {2})) {
      const RingContext ctx(p, e);
      const auto cert = pick_certificate(ctx, config, true);
      const auto g = config.g ? parse_univariate(*config.g, p) : UnivariateFn(p, {0, 0, 1});
      const Digit lambda = config.lambda.value_or(p - 1);
      if (lambda == 1) throw InvalidInput("thm8 suite excludes lambda = 1 (trivially uniform)");
      const auto low_mod = ctx.modulus() / p;

      UniformityReport report;
      report.experiment = "thm8";
      report.params = ring_params(cert);
      report.params["g"] = format_univariate(g);
      report.params["lambda"] = lambda;
      report.seed = config.seed;
      const auto seqs = primitive_sequences(cert);
      std::mt19937_64 rng(config.seed);
      std::uint64_t applicable = 0;
      ordered_json cells = ordered_json::array();
      for (Digit s = 0; s < p; ++s) {
        if (config.s && *config.s != s) continue;
        for (auto r : image_set(g)) {
          const auto plain = construct_thm8(g, s, lambda, r, e);
          if (!plain) continue;
          ++applicable;
          cells.push_back({{"s", s}, {"r", r}, {"W", plain->W}, {"z", plain->z}});
          std::vector<Digit> random_assignment(static_cast<std::size_t>(low_mod) - 1);
          std::uniform_int_distribution<std::size_t> pick(0, plain->W.size() - 1);
          for (auto& v : random_assignment) v = plain->W[pick(rng)];
          const auto mixed = construct_thm8(g, s, lambda, r, e, random_assignment);
          for (const auto* built : {&*plain, &*mixed}) {
            const FastMap phi(built->map, low_mod);
            for (std::size_t i = 0; i < seqs.size(); ++i) {
              ++report.pairs;
              for (std::size_t t = 0; t < seqs[i].size(); ++t) {
                ++report.positions;
                const auto a = seqs[i][t];
                if ((phi(a) == s) != (phi(ctx.mul(ctx.reduce(lambda), a)) == s)) {
                  report.fail({{"s", s}, {"r", r}, {"state", primitive_states(ctx, cert.n())[i]}, {"t", t}});
                  break;
                }
              }
            }
          }
        }
      }
      report.details["applicable_cells"] = cells;
      if (applicable == 0) report.details["note"] = "no applicable (s, r) cell";
      out.push_back(std::move(report));
    }
  }
  return out;
}

// --- thm9 ---------------------------------------------------------------

std::vector<UniformityReport> suite_thm9(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {5, 7, 11})) {
    for (int e : or_default(config.exponents, {2})) {
      const RingContext ctx(p, e);
      const auto cert = pick_certificate(ctx, config, true);
      const Digit lambda = config.lambda.value_or(p - 1);
      const UnivariateFn square(p, {0, 0, 1});
      const ScanOptions options{.budget = config.budget, .seed = config.seed};

      const auto w = thm9_choose_w(p);
      const CompressingMap m(square, psi_zw(0, w, p, e));
      const auto count = count_uniform_s(cert, m, lambda, options);
      const auto predicted = thm9_prediction(p, w);

      UniformityReport report;
      report.experiment = "thm9";
      report.params = ring_params(cert);
      report.params["w"] = w;
      report.params["lambda"] = lambda;
      report.seed = config.seed;
      report.sampled = count.sampled;
      report.pairs = count.sequences;
      report.positions = count.positions;
      report.details = {{"uniform", count.uniform},
                        {"vacuous", count.vacuous},
                        {"predicted", predicted},
                        {"expected_count", p / 4 + 1}};
      if (count.uniform != predicted || count.uniform.size() != static_cast<std::size_t>(p / 4 + 1)) {
        report.fail({{"uniform", count.uniform}, {"predicted", predicted}});
      }
      if (config.all_w) {
        ordered_json others = ordered_json::object();
        for (Digit other = 1; other < p; ++other) {
          const CompressingMap alt(square, psi_zw(0, other, p, e));
          others[std::to_string(other)] = count_uniform_s(cert, alt, lambda, options).uniform.size();
        }
        report.details["counts_by_w"] = others;
      }
      out.push_back(std::move(report));
    }
  }
  return out;
}

// --- legendre -----------------------------------------------------------

std::vector<UniformityReport> suite_legendre(const SuiteConfig& config) {
  std::vector<UniformityReport> out;
  for (auto p : or_default(config.primes, {3, 5, 7, 11, 13})) {
    UniformityReport sum;
    sum.experiment = "legendre-sum";
    sum.params = {{"p", p}};
    sum.seed = config.seed;
    for (Digit w = 0; w < p; ++w) {
      ++sum.positions;
      const auto got = legendre_sum(w, p);
      const auto expected = w == 0 ? p - 1 : -1;
      if (got != expected) sum.fail({{"w", w}, {"sum", got}, {"expected", expected}});
    }
    out.push_back(std::move(sum));

    UniformityReport inter;
    inter.experiment = "intersection-formula";
    inter.params = {{"p", p}};
    inter.seed = config.seed;
    for (Digit w = 1; w < p; ++w) {
      ++inter.positions;
      const auto brute = intersection_count(p, w);
      const auto formula = intersection_formula(p, w);
      if (brute != formula) inter.fail({{"w", w}, {"brute_force", brute}, {"formula", formula}});
    }
    const auto w = thm9_choose_w(p);
    inter.details["thm9_w"] = w;
    inter.details["difference_size"] = thm9_prediction(p, w).size();
    if (thm9_prediction(p, w).size() != static_cast<std::size_t>(p / 4 + 1)) {
      inter.fail({{"w", w}, {"difference_size", thm9_prediction(p, w).size()}});
    }
    out.push_back(std::move(inter));
  }
  return out;
}

using SuiteFn = std::vector<UniformityReport> (*)(const SuiteConfig&);

const std::map<std::string, SuiteFn, std::less<>>& suite_table() {
  static const std::map<std::string, SuiteFn, std::less<>> table{
      {"recurrence", suite_recurrence}, {"carry", suite_carry}, {"periods", suite_periods},
      {"distribution", suite_distribution}, {"alpha-k", suite_alpha_k}, {"thm7", suite_thm7},
      {"thm8", suite_thm8}, {"thm9", suite_thm9}, {"legendre", suite_legendre}};
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"recurrence", "carry", "periods", "distribution", "alpha-k",
                                              "thm7",       "thm8",  "thm9",    "legendre",     "all"};
  return names;
}

std::vector<UniformityReport> run_suite(std::string_view name, const SuiteConfig& config) {
  if (name == "all") {
    SuiteConfig defaults;
    defaults.seed = config.seed;
    defaults.budget = config.budget;
    defaults.states = config.states;
    defaults.timing = config.timing;
    std::vector<UniformityReport> out;
    for (const auto& suite : suite_names()) {
      if (suite == "all") continue;
      auto part = run_suite(suite, defaults);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
  }
  const auto it = suite_table().find(name);
  if (it == suite_table().end()) throw InvalidInput("unknown suite '" + std::string(name) + "'");
  const auto start = Clock::now();
  auto reports = it->second(config);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  for (auto& report : reports) {
    if (config.timing) report.ms = static_cast<std::uint64_t>(elapsed);
    if (!report.holds()) report.repro = repro_command(name, report, config);
  }
  return reports;
}

std::string repro_command(std::string_view suite, const UniformityReport& report, const SuiteConfig& config) {
  std::string cmd = "residueseq verify " + std::string(suite);
  const auto& params = report.params;
  if (params.contains("p")) cmd += " --p " + params["p"].dump();
  if (params.contains("e")) cmd += " --e " + params["e"].dump();
  if (params.contains("n")) cmd += " --n " + params["n"].dump();
  if (params.contains("f")) cmd += " --f " + coeff_list(parse_polynomial(params["f"].get<std::string>()).poly.coeffs());
  if (params.contains("g")) cmd += " --g '" + params["g"].get<std::string>() + "'";
  if (params.contains("eta")) {
    const auto text = params["eta"].get<std::string>();
    cmd += " --eta '" + text.substr(text.find(';') + 2) + "'";
  }
  if (params.contains("k")) cmd += " --k " + params["k"].dump();
  if (params.contains("lambda")) cmd += " --lambda " + params["lambda"].dump();
  if (report.witness && report.witness->contains("s")) cmd += " --s " + (*report.witness)["s"].dump();
  if (params.contains("states")) cmd += " --states " + std::to_string(config.states);
  cmd += " --seed " + std::to_string(config.seed) + " --budget " + std::to_string(config.budget);
  return cmd;
}

}  // namespace residueseq
