#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "residueseq/compress.hpp"

namespace residueseq {

enum class Verdict { holds, fails };

/// Outcome of one experiment. A failing verdict always carries a witness.
struct UniformityReport {
  std::string experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  Verdict verdict = Verdict::holds;
  std::optional<nlohmann::ordered_json> witness;
  std::uint64_t positions = 0;
  std::uint64_t pairs = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::uint64_t ms = 0;
  // Extra observations such as computed sets or fallback flags.
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::string repro;

  bool holds() const { return verdict == Verdict::holds; }
  void fail(nlohmann::ordered_json w) {
    verdict = Verdict::fails;
    if (!witness) witness = std::move(w);
  }
};

nlohmann::ordered_json report_to_json(const UniformityReport& report);
std::string report_to_text(const UniformityReport& report);

// Default limit on elementary checks before pair scans switch to sampling.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Legendre symbol via Euler's criterion.
int legendre(std::int64_t a, std::int64_t p);
std::int64_t legendre_sum(std::int64_t w, std::int64_t p);
// |I ∩ (w + I)| for the squares I, by brute force.
std::int64_t intersection_count(std::int64_t p, std::int64_t w);
// (p + 1 + (w/p) + (-w/p)) / 4.
std::int64_t intersection_formula(std::int64_t p, std::int64_t w);

enum class UniformMode { plain, nonzero_c, c_equals_k };

struct UniformCheck {
  bool holds = true;
  std::uint64_t positions = 0;  // positions in the applicable set
  std::optional<std::uint64_t> witness_t;
};

// u(t) = s iff v(t) = s over one common period, restricted by mode.
UniformCheck s_uniform_check(const LevelSequence& u, const LevelSequence& v, Digit s,
                             UniformMode mode = UniformMode::plain, const LevelSequence* c = nullptr,
                             std::optional<Digit> k = std::nullopt);
bool s_uniform(const LevelSequence& u, const LevelSequence& v, Digit s, UniformMode mode = UniformMode::plain,
               const LevelSequence* c = nullptr, std::optional<Digit> k = std::nullopt);

// phi(a(t)) = phi(b(t)) at every t of one period with alpha(t) = k, alpha
// taken from s_a.
bool equal_at_alpha_k(const LRSequence& s_a, const LRSequence& s_b, const CompressingMap& m,
                      const PrimitivityCertificate& cert, Digit k);

struct ScanOptions {
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
};

/// Over ordered pairs of primitive initial states (a, b), checks that
/// equality at alpha(t) = k forces a = b. deg g >= 2 needs a strongly
/// primitive certificate.
UniformityReport verify_alpha_k_injectivity(const PrimitivityCertificate& cert, const CompressingMap& m, Digit k,
                                            const ScanOptions& options = {});

// Distinct primitive sequences give distinct compressing sequences.
UniformityReport verify_injectivity(const PrimitivityCertificate& cert, const CompressingMap& m,
                                    const ScanOptions& options = {});

struct Thm7Construction {
  Digit z = 0;
  Digit w = 0;
  CompressingMap map;
};
// g((p-1)/2) + w = s and g(0) + z = s; phi = g(x_{e-1}) + psi_{z,w}.
Thm7Construction construct_thm7(const UnivariateFn& g, Digit s, int e);

struct Thm8Construction {
  std::vector<Digit> image;
  std::vector<Digit> W;
  Digit z = 0;
  CompressingMap map;
};
// W = {w : s not in w + I}, z = s - r, phi = g(x_{e-1}) + psi_{z,W}. Returns
// nullopt when W is empty or the scaling condition fails at r. Without an
// assignment the constant min(W) is used.
std::optional<Thm8Construction> construct_thm8(const UnivariateFn& g, Digit s, Digit lambda, Digit r, int e,
                                               std::optional<std::vector<Digit>> assignment = std::nullopt);
// g(y) = r iff g(lambda y) = r for all y.
bool scaling_condition(const UnivariateFn& g, Digit lambda, Digit r);

Digit thm9_choose_w(std::int64_t p);

struct UniformCount {
  std::vector<Digit> uniform;     // non-vacuous s where s-uniformity held for every a
  std::vector<Digit> vacuous;     // s outside the image of phi
  std::uint64_t sequences = 0;
  std::uint64_t positions = 0;
  bool sampled = false;
};

// For each s, is compress(a) s-uniform with compress(lambda a) for all
// primitive a (or a seeded sample when the budget is exceeded)?
UniformCount count_uniform_s(const PrimitivityCertificate& cert, const CompressingMap& m, Digit lambda,
                             const ScanOptions& options = {});

// I \ (w + I) for the squares I: the s values that g = x^2 with
// eta = psi_{0,w} and lambda = -1 is expected to make s-uniform.
std::vector<Digit> thm9_prediction(std::int64_t p, Digit w);

// Image of phi over all digit tuples.
std::vector<Digit> map_image(const CompressingMap& m);

}  // namespace residueseq
