#include "residueseq/primitivity.hpp"

#include <random>

namespace residueseq {

namespace {

constexpr std::uint64_t kExhaustiveLimit = 1'000'000;

std::uint64_t pow_u64(std::uint64_t b, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= b;
  return r;
}

void require_candidate(const RingPolynomial& f) {
  if (!f.is_monic() || f.degree() < 1) throw InvalidInput("f must be monic of degree >= 1");
  if (f.coeff(0) % f.context().p() == 0) throw InvalidInput("f(0) must be a unit mod p");
}

bool fits_lifted(const RingContext& ctx) {
  try {
    (void)ctx.with_exponent(ctx.e() + 1);
    return true;
  } catch (const InvalidInput&) {
    return false;
  }
}

// (x^(p^(i-1) T) - 1) / p^i inside the ring of f, coefficients in [0, p^(e-i)).
RingPolynomial extract_h(const RingPolynomial& f, int i) {
  const auto& ctx = f.context();
  const std::uint64_t T = pow_u64(static_cast<std::uint64_t>(ctx.p()), f.degree()) - 1;
  const std::uint64_t exponent = pow_u64(static_cast<std::uint64_t>(ctx.p()), i - 1) * T;
  const auto power = poly_powmod(RingPolynomial::monomial(ctx, 1), exponent, f);
  const auto diff = power - RingPolynomial::constant(ctx, 1);

  std::int64_t pi = 1;
  for (int k = 0; k < i; ++k) pi *= ctx.p();
  const std::int64_t rest = ctx.modulus() / pi;
  std::vector<Residue> h(static_cast<std::size_t>(f.degree()), 0);
  for (std::size_t k = 0; k < diff.coeffs().size(); ++k) {
    const auto c = diff.coeffs()[k];
    if (c % pi != 0) {
      throw CertificateError("x^(p^" + std::to_string(i - 1) + " T) - 1 has coefficient " + std::to_string(c) +
                             " not divisible by p^" + std::to_string(i) + "; f is not primitive");
    }
    h[k] = (c / pi) % rest;
  }
  return {ctx, std::move(h)};
}

bool qualifies(const RingPolynomial& f, bool strongly) {
  if (!is_primitive(f)) return false;
  return !strongly || is_strongly_primitive(f);
}

RingPolynomial candidate_from_index(const RingContext& ctx, int n, std::uint64_t index) {
  // c_0 is the most significant digit so indices run in lexicographic order.
  std::vector<Residue> coeffs(static_cast<std::size_t>(n) + 1, 0);
  coeffs.back() = 1;
  const auto m = static_cast<std::uint64_t>(ctx.modulus());
  for (int k = n - 1; k >= 0; --k) {
    coeffs[static_cast<std::size_t>(k)] = static_cast<Residue>(index % m);
    index /= m;
  }
  return {ctx, std::move(coeffs)};
}

std::optional<std::uint64_t> candidate_count(const RingContext& ctx, int n) {
  std::uint64_t total = 1;
  const auto m = static_cast<std::uint64_t>(ctx.modulus());
  for (int k = 0; k < n; ++k) {
    if (total > kExhaustiveLimit / m) return std::nullopt;
    total *= m;
  }
  return total;
}

}  // namespace

const RingPolynomial& PrimitivityCertificate::h_at(int i) const {
  if (i < 1 || static_cast<std::size_t>(i) > h.size()) {
    throw InvalidInput("certificate has no h_" + std::to_string(i));
  }
  return h[static_cast<std::size_t>(i - 1)];
}

std::uint64_t ward_bound(const RingContext& ctx, int n) {
  const auto p = static_cast<std::uint64_t>(ctx.p());
  return pow_u64(p, ctx.e() - 1) * (pow_u64(p, n) - 1);
}

bool is_primitive(const RingPolynomial& f) {
  require_candidate(f);
  return order_of_x(f) == ward_bound(f.context(), f.degree());
}

RingPolynomial compute_h(const RingPolynomial& f, int i) {
  require_candidate(f);
  const auto& ctx = f.context();
  if (i < 1 || i > ctx.e()) throw InvalidInput("compute_h: level index must lie in [1, e]");
  if (i < ctx.e()) return extract_h(f, i);
  // h_e vanishes inside Z/(p^e); read it off one level up.
  const auto lifted = f.in_context(ctx.with_exponent(ctx.e() + 1));
  const auto h_lifted = extract_h(lifted, i);
  return h_lifted.in_context(ctx);
}

bool is_strongly_primitive(const RingPolynomial& f) {
  if (!is_primitive(f)) throw InvalidInput("is_strongly_primitive: f is not primitive");
  const auto h1 = compute_h(f, 1);
  return h1.in_context(f.context().residue_field()).degree() >= 1;
}

PrimitivityCertificate certify(const RingPolynomial& f, std::uint64_t seed) {
  require_candidate(f);
  const auto& ctx = f.context();
  PrimitivityCertificate cert{.f = f, .h = {}, .h_f = std::nullopt, .seed = seed};
  cert.T = pow_u64(static_cast<std::uint64_t>(ctx.p()), f.degree()) - 1;
  cert.period = order_of_x(f);
  cert.primitive = cert.period == ward_bound(ctx, f.degree());
  if (!cert.primitive) return cert;

  const int top = fits_lifted(ctx) ? ctx.e() : ctx.e() - 1;
  for (int i = 1; i <= top; ++i) cert.h.push_back(compute_h(f, i));
  if (cert.h.empty()) throw CertificateError("ring too large to recover h_1");
  cert.h_f = cert.h.front().in_context(ctx.residue_field());
  cert.strongly_primitive = cert.h_f->degree() >= 1;
  return cert;
}

std::vector<RingPolynomial> enumerate_primitive(const RingContext& ctx, int n, bool strongly) {
  if (n < 1) throw InvalidInput("degree must be >= 1");
  const auto total = candidate_count(ctx, n);
  if (!total) throw InvalidInput("p^(en) exceeds the exhaustive enumeration limit");
  std::vector<RingPolynomial> out;
  for (std::uint64_t idx = 0; idx < *total; ++idx) {
    auto f = candidate_from_index(ctx, n, idx);
    if (f.coeff(0) % ctx.p() == 0) continue;
    if (qualifies(f, strongly)) out.push_back(std::move(f));
  }
  return out;
}

std::optional<RingPolynomial> find_primitive(const RingContext& ctx, int n, const SearchOptions& options) {
  if (n < 1) throw InvalidInput("degree must be >= 1");
  if (const auto total = candidate_count(ctx, n)) {
    const auto limit = std::min(*total, options.budget);
    for (std::uint64_t idx = 0; idx < limit; ++idx) {
      auto f = candidate_from_index(ctx, n, idx);
      if (f.coeff(0) % ctx.p() == 0) continue;
      if (qualifies(f, options.strongly)) return f;
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<Residue> coeff(0, ctx.modulus() - 1);
  for (std::uint64_t tries = 0; tries < options.budget; ++tries) {
    std::vector<Residue> coeffs(static_cast<std::size_t>(n) + 1, 1);
    for (int k = 0; k < n; ++k) coeffs[static_cast<std::size_t>(k)] = coeff(rng);
    RingPolynomial f(ctx, std::move(coeffs));
    if (f.coeff(0) % ctx.p() == 0) continue;
    if (qualifies(f, options.strongly)) return f;
  }
  return std::nullopt;
}

nlohmann::ordered_json certificate_to_json(const PrimitivityCertificate& cert) {
  nlohmann::ordered_json j;
  j["p"] = cert.context().p();
  j["e"] = cert.context().e();
  j["n"] = cert.n();
  j["f"] = cert.f.coeffs();
  j["period"] = cert.period;
  j["primitive"] = cert.primitive;
  j["h1"] = cert.h.empty() ? std::vector<Residue>{} : cert.h.front().coeffs();
  j["h_f"] = cert.h_f ? cert.h_f->coeffs() : std::vector<Residue>{};
  j["strongly_primitive"] = cert.strongly_primitive;
  j["seed"] = cert.seed;
  return j;
}

PrimitivityCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    const RingContext ctx(j.at("p").get<std::int64_t>(), j.at("e").get<int>());
    RingPolynomial f(ctx, j.at("f").get<std::vector<Residue>>());
    if (f.degree() != j.at("n").get<int>()) throw InvalidInput("certificate: n disagrees with f");
    auto cert = certify(f, j.value("seed", std::uint64_t{0}));
    if (cert.period != j.at("period").get<std::uint64_t>() ||
        cert.strongly_primitive != j.at("strongly_primitive").get<bool>()) {
      throw CertificateError("certificate fields disagree with recomputation");
    }
    return cert;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("certificate JSON: ") + ex.what());
  }
}

}  // namespace residueseq
