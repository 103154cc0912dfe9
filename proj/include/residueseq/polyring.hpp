#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "residueseq/ringcore.hpp"

namespace residueseq {

/// Univariate polynomial over Z/(p^e), coefficients constant term first,
/// trailing zeros trimmed.
class RingPolynomial {
 public:
  RingPolynomial(RingContext ctx, std::vector<Residue> coeffs);

  static RingPolynomial zero(const RingContext& ctx) { return {ctx, {}}; }
  static RingPolynomial constant(const RingContext& ctx, Residue c) { return {ctx, {c}}; }
  static RingPolynomial monomial(const RingContext& ctx, int k, Residue c = 1);

  const RingContext& context() const { return ctx_; }
  const std::vector<Residue>& coeffs() const { return coeffs_; }
  Residue coeff(int k) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  // Reinterpret the coefficient list in Z/(p^e') for the same p. Going down
  // reduces; going up keeps the representatives unchanged.
  RingPolynomial in_context(const RingContext& ctx) const;

  friend bool operator==(const RingPolynomial&, const RingPolynomial&) = default;

 private:
  RingContext ctx_;
  std::vector<Residue> coeffs_;
};

RingPolynomial operator+(const RingPolynomial& a, const RingPolynomial& b);
RingPolynomial operator-(const RingPolynomial& a, const RingPolynomial& b);
RingPolynomial operator*(const RingPolynomial& a, const RingPolynomial& b);
RingPolynomial operator*(Residue c, const RingPolynomial& a);

// Remainder of a modulo a monic f.
RingPolynomial poly_mod(const RingPolynomial& a, const RingPolynomial& f);
RingPolynomial poly_mulmod(const RingPolynomial& a, const RingPolynomial& b, const RingPolynomial& f);
RingPolynomial poly_powmod(const RingPolynomial& base, std::uint64_t k, const RingPolynomial& f);

// Prime factorisation by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

/// Least T > 0 with x^T = 1 mod f over Z/(p^e). The mod-p order T1 is found
/// by reducing a known exponent of (Z/p[x]/f)^* prime by prime; the full
/// order is then T1 * p^j for the least such j.
std::uint64_t order_of_x(const RingPolynomial& f);

enum class SequenceWrap { cyclic, none };

/// (g(x) s)(t) = sum_k g_k s(t + k). With SequenceWrap::cyclic the input is
/// one period and the output has the same length; otherwise the output is
/// shorter by deg g.
std::vector<Residue> apply_poly_to_sequence(const RingPolynomial& g, std::span<const Residue> s,
                                            SequenceWrap wrap = SequenceWrap::cyclic);

// Text form `p=3 e=2; f=8,8,1`.
struct NamedPolynomial {
  std::string name;
  RingPolynomial poly;
};
std::string format_polynomial(const RingPolynomial& f, std::string_view name = "f");
NamedPolynomial parse_polynomial(std::string_view text);

// Comma separated integers, e.g. "8,8,1".
std::vector<std::int64_t> parse_int_list(std::string_view text);

}  // namespace residueseq
