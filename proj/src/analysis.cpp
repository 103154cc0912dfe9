#include "residueseq/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

namespace residueseq {

namespace {

void require_digit(Digit v, std::int64_t p, const char* what) {
  if (v < 0 || v >= p) throw InvalidInput(std::string(what) + " must lie in [0, p)");
}

// One primitive sequence with the columns the scans need, all at the common
// length p^(e-1) T.
struct ScannedSequence {
  std::vector<Residue> init;
  std::vector<Residue> terms;
  std::vector<Digit> phi;
  std::vector<Digit> alpha;
};

std::vector<Digit> alpha_terms(const LRSequence& s, const PrimitivityCertificate& cert) {
  std::vector<Residue> a0(s.terms().size());
  for (std::size_t t = 0; t < a0.size(); ++t) a0[t] = s.terms()[t] % s.context().p();
  return apply_poly_to_sequence(*cert.h_f, a0);
}

std::vector<ScannedSequence> scan_primitive(const PrimitivityCertificate& cert, const CompressingMap& m) {
  std::vector<ScannedSequence> out;
  for (auto& init : primitive_states(cert.context(), cert.n())) {
    const auto s = generate(cert.f, init);
    if (s.period() != cert.period) throw std::logic_error("primitive sequence with unexpected period");
    out.push_back({std::move(init), s.terms(), compress_terms(m, s), alpha_terms(s, cert)});
  }
  return out;
}

nlohmann::ordered_json state_json(const std::vector<Residue>& init) { return init; }

}  // namespace

nlohmann::ordered_json report_to_json(const UniformityReport& report) {
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  j["params"] = report.params;
  j["verdict"] = report.holds() ? "holds" : "fails";
  if (report.witness) j["witness"] = *report.witness;
  j["counts"] = {{"positions", report.positions}, {"pairs", report.pairs}};
  j["sampled"] = report.sampled;
  j["seed"] = report.seed;
  j["ms"] = report.ms;
  if (!report.details.empty()) j["details"] = report.details;
  if (!report.repro.empty()) j["repro"] = report.repro;
  return j;
}

std::string report_to_text(const UniformityReport& report) {
  std::string out = (report.holds() ? "HOLDS " : "FAILS ") + report.experiment + " " + report.params.dump() +
                    " positions=" + std::to_string(report.positions) + " pairs=" + std::to_string(report.pairs);
  if (report.sampled) out += " sampled";
  if (report.witness) out += " witness=" + report.witness->dump();
  if (!report.repro.empty()) out += " repro: " + report.repro;
  return out;
}

int legendre(std::int64_t a, std::int64_t p) {
  if (!is_odd_prime(p)) throw InvalidInput("legendre: p must be an odd prime");
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  return mod_pow(a, static_cast<std::uint64_t>((p - 1) / 2), p) == 1 ? 1 : -1;
}

std::int64_t legendre_sum(std::int64_t w, std::int64_t p) {
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) sum += legendre(x * x + w, p);
  return sum;
}

std::int64_t intersection_count(std::int64_t p, std::int64_t w) {
  if (!is_odd_prime(p)) throw InvalidInput("intersection_count: p must be an odd prime");
  if (((w % p) + p) % p == 0) throw InvalidInput("intersection_count: w must be nonzero mod p");
  std::set<std::int64_t> squares;
  for (std::int64_t x = 0; x < p; ++x) squares.insert(x * x % p);
  std::int64_t count = 0;
  for (auto sq : squares) count += squares.contains((((sq - w) % p) + p) % p) ? 1 : 0;
  return count;
}

std::int64_t intersection_formula(std::int64_t p, std::int64_t w) {
  return (p + 1 + legendre(w, p) + legendre(-w, p)) / 4;
}

UniformCheck s_uniform_check(const LevelSequence& u, const LevelSequence& v, Digit s, UniformMode mode,
                             const LevelSequence* c, std::optional<Digit> k) {
  if (mode != UniformMode::plain && c == nullptr) throw InvalidInput("s_uniform: mode needs the sequence c");
  if (mode == UniformMode::c_equals_k && !k) throw InvalidInput("s_uniform: mode needs k");
  std::uint64_t len = std::lcm(u.period(), v.period());
  if (c) len = std::lcm(len, c->period());
  UniformCheck out;
  for (std::uint64_t t = 0; t < len; ++t) {
    if (mode == UniformMode::nonzero_c && c->at(t) == 0) continue;
    if (mode == UniformMode::c_equals_k && c->at(t) != *k) continue;
    ++out.positions;
    if ((u.at(t) == s) != (v.at(t) == s)) {
      out.holds = false;
      out.witness_t = t;
      return out;
    }
  }
  return out;
}

bool s_uniform(const LevelSequence& u, const LevelSequence& v, Digit s, UniformMode mode, const LevelSequence* c,
               std::optional<Digit> k) {
  return s_uniform_check(u, v, s, mode, c, k).holds;
}

bool equal_at_alpha_k(const LRSequence& s_a, const LRSequence& s_b, const CompressingMap& m,
                      const PrimitivityCertificate& cert, Digit k) {
  if (k == 0) throw InvalidInput("equal_at_alpha_k: k must be nonzero");
  require_digit(k, m.p(), "k");
  const auto alpha = alpha_sequence(s_a, cert);
  if (!is_primitive_sequence(s_b, cert)) throw InvalidInput("equal_at_alpha_k: s_b is not primitive");
  const auto phi_a = compress_terms(m, s_a);
  const auto phi_b = compress_terms(m, s_b);
  const std::uint64_t len = std::lcm(s_a.period(), s_b.period());
  for (std::uint64_t t = 0; t < len; ++t) {
    if (alpha.at(t) == k && phi_a[t % phi_a.size()] != phi_b[t % phi_b.size()]) return false;
  }
  return true;
}

UniformityReport verify_alpha_k_injectivity(const PrimitivityCertificate& cert, const CompressingMap& m, Digit k,
                                            const ScanOptions& options) {
  const auto& ctx = cert.context();
  if (!cert.primitive) throw InvalidInput("alpha-k scan needs a primitive polynomial");
  if (ctx.e() < 2 || m.e() != ctx.e() || m.p() != ctx.p()) throw InvalidInput("alpha-k scan: map/ring mismatch");
  if (k == 0) throw InvalidInput("alpha-k scan: k must be nonzero");
  require_digit(k, ctx.p(), "k");
  if (m.g().degree() >= 2 && !cert.strongly_primitive) {
    throw InvalidInput("alpha-k scan with deg g >= 2 needs a strongly primitive polynomial");
  }

  UniformityReport report;
  report.experiment = "alpha-k";
  report.params = {{"p", ctx.p()},
                   {"e", ctx.e()},
                   {"n", cert.n()},
                   {"f", format_polynomial(cert.f)},
                   {"g", format_univariate(m.g())},
                   {"eta", format_multivariate(m.eta())},
                   {"k", k}};
  report.seed = options.seed;

  const auto seqs = scan_primitive(cert, m);
  std::vector<std::vector<std::uint64_t>> hits(seqs.size());
  std::uint64_t hit_total = 0;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::uint64_t t = 0; t < seqs[i].alpha.size(); ++t) {
      if (seqs[i].alpha[t] == k) hits[i].push_back(t);
    }
    hit_total += hits[i].size();
  }

  auto check_pair = [&](std::size_t a, std::size_t b) {
    ++report.pairs;
    bool equal = true;
    for (auto t : hits[a]) {
      ++report.positions;
      if (seqs[a].phi[t] != seqs[b].phi[t]) {
        equal = false;
        break;
      }
    }
    if (equal && a != b) {
      report.fail({{"a", state_json(seqs[a].init)}, {"b", state_json(seqs[b].init)}, {"k", k}});
    }
  };

  const std::uint64_t n = seqs.size();
  const std::uint64_t avg_hits = n ? std::max<std::uint64_t>(1, hit_total / n) : 1;
  if (n * n * avg_hits <= options.budget) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) check_pair(a, b);
    }
  } else {
    report.sampled = true;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::uint64_t draws = std::max<std::uint64_t>(1, options.budget / avg_hits);
    for (std::uint64_t d = 0; d < draws; ++d) check_pair(pick(rng), pick(rng));
  }
  report.details["primitive_states"] = n;
  return report;
}

UniformityReport verify_injectivity(const PrimitivityCertificate& cert, const CompressingMap& m,
                                    const ScanOptions& options) {
  const auto& ctx = cert.context();
  if (!cert.primitive) throw InvalidInput("injectivity scan needs a primitive polynomial");
  if (m.e() != ctx.e() || m.p() != ctx.p()) throw InvalidInput("injectivity scan: map/ring mismatch");
  UniformityReport report;
  report.experiment = "injectivity";
  report.params = {{"p", ctx.p()},
                   {"e", ctx.e()},
                   {"n", cert.n()},
                   {"f", format_polynomial(cert.f)},
                   {"g", format_univariate(m.g())},
                   {"eta", format_multivariate(m.eta())}};
  report.seed = options.seed;
  std::map<std::vector<Digit>, std::vector<Residue>> seen;
  for (auto& seq : scan_primitive(cert, m)) {
    report.positions += seq.phi.size();
    ++report.pairs;
    auto [it, inserted] = seen.emplace(seq.phi, seq.init);
    if (!inserted) report.fail({{"a", state_json(it->second)}, {"b", state_json(seq.init)}});
  }
  return report;
}

Thm7Construction construct_thm7(const UnivariateFn& g, Digit s, int e) {
  const auto p = g.p();
  require_digit(s, p, "s");
  if (!is_permutation(g)) throw InvalidInput("construct_thm7: g must be a permutation polynomial");
  const Digit z = ((s - g(0)) % p + p) % p;
  const Digit w = ((s - g((p - 1) / 2)) % p + p) % p;
  return {z, w, CompressingMap(g, psi_zw(z, w, p, e))};
}

bool scaling_condition(const UnivariateFn& g, Digit lambda, Digit r) {
  for (Digit y = 0; y < g.p(); ++y) {
    if ((g(y) == r) != (g(lambda * y % g.p()) == r)) return false;
  }
  return true;
}

std::optional<Thm8Construction> construct_thm8(const UnivariateFn& g, Digit s, Digit lambda, Digit r, int e,
                                               std::optional<std::vector<Digit>> assignment) {
  const auto p = g.p();
  require_digit(s, p, "s");
  require_digit(lambda, p, "lambda");
  if (lambda == 0 || lambda == 1) throw InvalidInput("construct_thm8: lambda must not be 0 or 1");
  const auto image = image_set(g);
  if (!std::binary_search(image.begin(), image.end(), r)) throw InvalidInput("construct_thm8: r is not in the image");
  if (image.size() == static_cast<std::size_t>(p)) return std::nullopt;
  if (!scaling_condition(g, lambda, r)) return std::nullopt;

  std::vector<Digit> W;
  for (Digit w = 0; w < p; ++w) {
    const bool hits = std::any_of(image.begin(), image.end(), [&](Digit i) { return (w + i) % p == s; });
    if (!hits) W.push_back(w);
  }
  if (W.empty()) return std::nullopt;
  const Digit z = ((s - r) % p + p) % p;

  std::size_t tuples = 1;
  for (int i = 0; i < e - 1; ++i) tuples *= static_cast<std::size_t>(p);
  const auto values = assignment ? *assignment : std::vector<Digit>(tuples - 1, W.front());
  return Thm8Construction{image, W, z, CompressingMap(g, psi_zW(z, W, values, p, e))};
}

Digit thm9_choose_w(std::int64_t p) {
  if (!is_odd_prime(p)) throw InvalidInput("thm9_choose_w: p must be an odd prime");
  if (p % 4 == 3) return 1;
  for (Digit w = 1; w < p; ++w) {
    if (legendre(w, p) == -1 && legendre(-w, p) == -1) return w;
  }
  throw std::logic_error("thm9_choose_w: no w found");
}

std::vector<Digit> thm9_prediction(std::int64_t p, Digit w) {
  std::set<Digit> squares;
  for (Digit x = 0; x < p; ++x) squares.insert(x * x % p);
  std::vector<Digit> out;
  for (auto s : squares) {
    if (!squares.contains(((s - w) % p + p) % p)) out.push_back(s);
  }
  return out;
}

std::vector<Digit> map_image(const CompressingMap& m) {
  std::set<Digit> out;
  for (Digit top = 0; top < m.p(); ++top) {
    for (Digit v : m.eta().table()) out.insert((m.g()(top) + v) % m.p());
  }
  return {out.begin(), out.end()};
}

UniformCount count_uniform_s(const PrimitivityCertificate& cert, const CompressingMap& m, Digit lambda,
                             const ScanOptions& options) {
  const auto& ctx = cert.context();
  if (!cert.strongly_primitive) throw InvalidInput("count_uniform_s needs a strongly primitive polynomial");
  if (m.e() != ctx.e() || m.p() != ctx.p()) throw InvalidInput("count_uniform_s: map/ring mismatch");
  require_digit(lambda, ctx.p(), "lambda");
  if (lambda == 0) throw InvalidInput("count_uniform_s: lambda must be nonzero");

  auto states = primitive_states(ctx, cert.n());
  UniformCount out;
  if (states.size() * cert.period > options.budget) {
    out.sampled = true;
    std::mt19937_64 rng(options.seed);
    std::shuffle(states.begin(), states.end(), rng);
    states.resize(std::max<std::size_t>(1, options.budget / cert.period));
  }

  const auto p = static_cast<std::size_t>(ctx.p());
  std::vector<bool> broken(p, false);
  for (const auto& init : states) {
    const auto a = generate(cert.f, init);
    const auto b = scaled(a, lambda);
    const auto phi_a = compress_terms(m, a);
    const auto phi_b = compress_terms(m, b);
    for (std::size_t t = 0; t < phi_a.size(); ++t) {
      if (phi_a[t] != phi_b[t % phi_b.size()]) {
        broken[static_cast<std::size_t>(phi_a[t])] = true;
        broken[static_cast<std::size_t>(phi_b[t % phi_b.size()])] = true;
      }
    }
    ++out.sequences;
    out.positions += phi_a.size();
  }
  const auto image = map_image(m);
  for (Digit s = 0; s < ctx.p(); ++s) {
    if (!std::binary_search(image.begin(), image.end(), s)) {
      out.vacuous.push_back(s);
    } else if (!broken[static_cast<std::size_t>(s)]) {
      out.uniform.push_back(s);
    }
  }
  return out;
}

}  // namespace residueseq
