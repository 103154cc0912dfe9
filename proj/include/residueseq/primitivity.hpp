#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "residueseq/polyring.hpp"

namespace residueseq {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Period data for a polynomial f over Z/(p^e), and when f is primitive the
/// lift polynomials of x^(p^(i-1) T) = 1 + p^i h_i(x) mod f.
struct PrimitivityCertificate {
  RingPolynomial f;
  std::uint64_t T = 0;       // p^n - 1
  std::uint64_t period = 0;  // order of x mod f
  bool primitive = false;
  // h[i-1] = h_i for i = 1..e (h_e only when the lifted ring fits).
  std::vector<RingPolynomial> h;
  std::optional<RingPolynomial> h_f;  // h_1 mod p, over Z/p
  bool strongly_primitive = false;
  std::uint64_t seed = 0;

  int n() const { return f.degree(); }
  const RingContext& context() const { return f.context(); }
  // h_i for 1 <= i <= h.size().
  const RingPolynomial& h_at(int i) const;
};

// p^(e-1) (p^n - 1).
std::uint64_t ward_bound(const RingContext& ctx, int n);

bool is_primitive(const RingPolynomial& f);

/// h_i with deg < n, as the representative in [0, p^(e-i)). For i = e the
/// coefficient list is lifted to Z/(p^(e+1)) and h_e is returned mod p.
RingPolynomial compute_h(const RingPolynomial& f, int i);

bool is_strongly_primitive(const RingPolynomial& f);

PrimitivityCertificate certify(const RingPolynomial& f, std::uint64_t seed = 0);

struct SearchOptions {
  bool strongly = false;
  std::uint64_t budget = 1'000'000;  // candidates examined
  std::uint64_t seed = 0;
};

// Monic degree-n polynomials passing is_primitive (and is_strongly_primitive
// when requested). Exhaustive in lexicographic order of (c_0, ..., c_{n-1})
// when p^(en) <= 10^6, seeded sampling otherwise.
std::optional<RingPolynomial> find_primitive(const RingContext& ctx, int n, const SearchOptions& options = {});

// Every qualifying polynomial, in the same lexicographic order. Exhaustive
// only; throws when p^(en) exceeds the limit.
std::vector<RingPolynomial> enumerate_primitive(const RingContext& ctx, int n, bool strongly = false);

nlohmann::ordered_json certificate_to_json(const PrimitivityCertificate& cert);
PrimitivityCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace residueseq
