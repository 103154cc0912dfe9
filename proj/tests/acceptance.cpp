// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails or exceeds its runtime limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "residueseq/suites.hpp"

using namespace residueseq;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      note = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0 means no limit
  std::function<Outcome()> body;
};

bool all_hold(const std::vector<UniformityReport>& reports, Outcome& out) {
  for (const auto& r : reports) {
    if (!r.holds()) {
      out.require(false, r.experiment + " failed: " + report_to_text(r));
      return false;
    }
  }
  return true;
}

Outcome primitivity_ground_truth() {
  Outcome out;
  const RingContext Z9(3, 2);
  out.require(order_of_x(RingPolynomial(Z9, {8, 8, 1})) == 24, "order of x^2-x-1 over Z/9 is not 24");
  int candidates = 0;
  for (Residue c0 = 0; c0 < 9; ++c0) {
    if (c0 % 3 == 0) continue;
    for (Residue c1 = 0; c1 < 9; ++c1) {
      ++candidates;
      const auto expected = oracle::order_sequential({c0, c1, 1}, 9, 10000);
      out.require(expected.has_value(), "sequential oracle found no order");
      out.require(expected && order_of_x(RingPolynomial(Z9, {c0, c1, 1})) == *expected,
                  "order mismatch at f=" + std::to_string(c0) + "," + std::to_string(c1) + ",1");
    }
  }
  out.note = out.pass ? std::to_string(candidates) + " candidates" : out.note;
  return out;
}

Outcome certificates_eq1() {
  Outcome out;
  int checked = 0;
  for (int e : {2, 3}) {
    const RingContext ctx(3, e);
    const auto lifted = ctx.with_exponent(e + 1);
    for (const auto& f : enumerate_primitive(ctx, 2)) {
      const auto cert = certify(f);
      out.require(cert.h.size() == static_cast<std::size_t>(e), "missing h_e");
      const auto x = RingPolynomial::monomial(ctx, 1);
      std::uint64_t exponent = cert.T;
      std::int64_t pi = 1;
      for (int i = 1; i <= e; ++i, exponent *= 3) {
        pi *= 3;
        const auto& h = cert.h_at(i);
        if (i < e) {
          const auto lhs = poly_powmod(x, exponent, f);
          const auto rhs = RingPolynomial::constant(ctx, 1) + pi * h;
          out.require(lhs == rhs, "x^(p^(i-1)T) != 1 + p^i h_i in Z/p^e");
        } else {
          // p^e h_e vanishes in Z/p^e; compare one level up.
          out.require(poly_powmod(x, exponent, f).is_one(), "x^(p^(e-1)T) != 1");
          const auto fl = f.in_context(lifted);
          const auto lhs = poly_powmod(RingPolynomial::monomial(lifted, 1), exponent, fl);
          const auto rhs = RingPolynomial::constant(lifted, 1) + pi * h.in_context(lifted);
          out.require(lhs == rhs, "x^(p^(e-1)T) != 1 + p^e h_e in Z/p^(e+1)");
        }
        out.require(h.in_context(ctx.residue_field()) == *cert.h_f, "h_i differs from h_1 mod p");
        ++checked;
      }
    }
  }
  if (out.pass) out.note = std::to_string(checked) + " (f, i) cells";
  return out;
}

Outcome carry_coefficient() {
  Outcome out;
  SuiteConfig config;
  config.primes = {3, 5, 7, 11};
  all_hold(run_suite("carry", config), out);
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (Digit u = 0; u < p; ++u) {
      out.require(carry_map_poly(u, p).coeff(static_cast<int>(p - 1)) == oracle::md(-u, p), "carry coefficient");
    }
  }
  return out;
}

Outcome recurrence_identities() {
  Outcome out;
  SuiteConfig config;
  config.primes = {3};
  config.exponents = {2, 3, 4};
  config.states = 10;
  const auto reports = run_suite("recurrence", config);
  all_hold(reports, out);
  out.require(reports.size() == 5, "expected five identity reports");
  bool fallback = false;
  for (const auto& r : reports) {
    out.require(r.params["states"].get<std::size_t>() >= 10, "fewer than 10 states");
    out.require(r.pairs == 10 * 3, "not every j in [0, p) covered");
    if (r.params["e"] == 4) {
      out.require(r.positions == 10 * 3 * 216, "e = 4 period is not 216");
    }
    if (r.details.contains("fallback_used")) fallback |= r.details["fallback_used"].get<bool>();
  }
  if (out.pass) out.note = fallback ? "holds under the fallback reading (flagged)" : "holds under the primary reading";
  return out;
}

Outcome deg1_injectivity() {
  Outcome out;
  SuiteConfig config;
  config.primes = {3};
  config.exponents = {2};
  config.f = std::vector<Residue>{8, 8, 1};
  config.deg_g = 1;
  config.all_eta = true;
  const auto reports = run_suite("alpha-k", config);
  all_hold(reports, out);
  std::size_t cells = 0;
  for (const auto& r : reports) {
    if (r.experiment != "alpha-k") continue;
    ++cells;
    out.require(r.pairs == 72 * 72, "not all 72 x 72 pairs scanned");
    out.require(!r.sampled, "scan was sampled");
  }
  out.require(cells == 27 * 2, "expected 27 eta x 2 k cells");
  if (out.pass) out.note = std::to_string(cells) + " cells";
  return out;
}

Outcome deg2_injectivity() {
  Outcome out;
  const RingContext ctx(3, 2);
  int n = 2;
  auto f = find_primitive(ctx, n, {.strongly = true});
  if (!f) {
    n = 3;
    f = find_primitive(ctx, n, {.strongly = true});
  }
  out.require(f.has_value(), "no strongly primitive f at n = 2 or 3");
  if (!f) return out;
  SuiteConfig config;
  config.primes = {3};
  config.exponents = {2};
  config.n = n;
  config.f = f->coeffs();
  config.deg_g = 2;
  config.all_eta = true;
  const auto reports = run_suite("alpha-k", config);
  all_hold(reports, out);
  std::size_t cells = 0;
  for (const auto& r : reports) {
    if (r.experiment != "alpha-k") continue;
    ++cells;
    out.require(!r.sampled, "scan was sampled");
  }
  out.require(cells >= 27 * 2, "fewer than 27 eta x 2 k cells");
  if (out.pass) out.note = format_polynomial(*f) + ", " + std::to_string(cells) + " cells";
  return out;
}

Outcome thm7_construction() {
  Outcome out;
  SuiteConfig config;
  config.primes = {3, 5};
  config.exponents = {2};
  const auto reports = run_suite("thm7", config);
  all_hold(reports, out);
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    const auto c = construct_thm7(UnivariateFn::identity(p), 0, 2);
    out.require(c.z == 0 && c.w == (p + 1) / 2, "identity map gives z = 0, w = (p+1)/2");
  }
  std::size_t cells = 0;
  for (const auto& r : reports) {
    if (r.experiment == "thm7") cells += r.pairs;
  }
  if (out.pass) out.note = std::to_string(cells) + " (g, s, a) cells";
  return out;
}

Outcome legendre_sums() {
  Outcome out;
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    for (std::int64_t w = 0; w < p; ++w) out.require(legendre_sum(w, p) == (w % p == 0 ? p - 1 : -1), "legendre sum");
  }
  return out;
}

Outcome intersection_formula_check() {
  Outcome out;
  for (std::int64_t p : {5, 7, 11, 13}) {
    const auto I = oracle::squares(p);
    for (std::int64_t w = 1; w < p; ++w) {
      std::int64_t brute = 0;
      for (auto x : I) brute += I.contains(oracle::md(x - w, p)) ? 1 : 0;
      const auto formula = (p + 1 + oracle::legendre_brute(w, p) + oracle::legendre_brute(-w, p)) / 4;
      out.require(intersection_count(p, w) == brute && brute == formula && intersection_formula(p, w) == formula,
                  "intersection at p=" + std::to_string(p) + " w=" + std::to_string(w));
    }
  }
  return out;
}

Outcome thm9_counts() {
  Outcome out;
  SuiteConfig config;
  config.primes = {5, 7, 11};
  config.exponents = {2};
  const auto reports = run_suite("thm9", config);
  all_hold(reports, out);
  std::string counts;
  for (const auto& r : reports) {
    const auto p = r.params["p"].get<std::int64_t>();
    const auto uniform = r.details["uniform"].get<std::vector<Digit>>();
    out.require(uniform.size() == static_cast<std::size_t>(p / 4 + 1), "count differs from floor(p/4)+1");
    out.require(uniform == thm9_prediction(p, r.params["w"].get<Digit>()), "scan differs from I \\ I_w");
    out.require(!r.sampled, "scan was sampled");
    counts += (counts.empty() ? "" : ",") + std::to_string(uniform.size());
  }
  if (out.pass) out.note = "counts {" + counts + "}";
  return out;
}

Outcome period_and_linear_relation() {
  Outcome out;
  SuiteConfig config;
  config.primes = {3};
  config.exponents = {2, 3};
  all_hold(run_suite("periods", config), out);
  SuiteConfig linear;
  linear.primes = {3};
  linear.exponents = {2, 3};
  const auto reports = run_suite("distribution", linear);
  all_hold(reports, out);
  bool saw_linear = false;
  for (const auto& r : reports) saw_linear |= r.experiment == "linear-relation";
  out.require(saw_linear, "linear relation not run");
  return out;
}

Outcome determinism() {
  Outcome out;
  for (const char* suite : {"recurrence", "periods", "distribution", "alpha-k", "thm8", "thm9", "legendre", "carry"}) {
    SuiteConfig config;
    config.seed = 1;
    std::string first, second;
    for (const auto& r : run_suite(suite, config)) first += report_to_json(r).dump() + "\n";
    for (const auto& r : run_suite(suite, config)) second += report_to_json(r).dump() + "\n";
    out.require(first == second, std::string("suite ") + suite + " is not byte-identical");
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "primitivity ground truth", 5, primitivity_ground_truth},
      {2, "h_i certificates", 0, certificates_eq1},
      {3, "carry coefficient", 0, carry_coefficient},
      {4, "recurrence identities", 30, recurrence_identities},
      {5, "degree-1 alpha-k injectivity", 60, deg1_injectivity},
      {6, "degree-2 alpha-k injectivity", 300, deg2_injectivity},
      {7, "thm7 construction and identity map", 60, thm7_construction},
      {8, "legendre sums", 1, legendre_sums},
      {9, "intersection formula", 0, intersection_formula_check},
      {10, "thm9 counts", 300, thm9_counts},
      {11, "period and linear relation", 30, period_and_linear_relation},
      {12, "determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.note = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds && outcome.pass) {
      outcome.pass = false;
      outcome.note = "exceeded runtime limit";
    }
    char timing[64];
    if (c.limit_seconds > 0) {
      std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", seconds, c.limit_seconds);
    } else {
      std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    }
    std::printf("%s %2d %s (%s)%s%s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), timing,
                outcome.note.empty() ? "" : ": ", outcome.note.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
