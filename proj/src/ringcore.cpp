#include "residueseq/ringcore.hpp"

#include <limits>

namespace residueseq {

bool is_odd_prime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t mod_pow(std::int64_t base, std::uint64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1U) result = result * base % m;
    base = base * base % m;
    exp >>= 1U;
  }
  return result;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw InvalidInput("mod_inverse: zero has no inverse");
  return mod_pow(a, static_cast<std::uint64_t>(p - 2), p);
}

RingContext::RingContext(std::int64_t p, int e) : p_(p), e_(e), modulus_(1) {
  if (!is_odd_prime(p)) {
    throw InvalidInput("p=" + std::to_string(p) + " is not an odd prime");
  }
  if (e < 1) throw InvalidInput("exponent e must be >= 1");
  constexpr std::int64_t kLimit = std::int64_t{1} << 31;
  for (int i = 0; i < e; ++i) {
    modulus_ *= p;
    if (modulus_ >= kLimit) {
      throw InvalidInput("p^e must be below 2^31 (p=" + std::to_string(p) +
                         " e=" + std::to_string(e) + ")");
    }
  }
}

std::string RingContext::describe() const {
  return "p=" + std::to_string(p_) + " e=" + std::to_string(e_);
}

DigitVector padic_expand(Residue a, const RingContext& ctx) {
  if (!ctx.contains(a)) throw InvalidInput("residue out of range");
  DigitVector digits(static_cast<std::size_t>(ctx.e()));
  for (auto& d : digits) {
    d = a % ctx.p();
    a /= ctx.p();
  }
  return digits;
}

Residue padic_compose(std::span<const Digit> digits, const RingContext& ctx) {
  if (digits.size() != static_cast<std::size_t>(ctx.e())) {
    throw InvalidInput("digit vector length differs from e");
  }
  Residue value = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it < 0 || *it >= ctx.p()) throw InvalidInput("digit out of range");
    value = value * ctx.p() + *it;
  }
  return value;
}

Digit padic_digit(std::int64_t a, std::int64_t p, int i) {
  for (int k = 0; k < i; ++k) a /= p;
  return a % p;
}

Digit carry_c1(std::int64_t a, std::int64_t p) {
  if (a < 0) throw InvalidInput("carry_c1 expects a nonnegative integer");
  return (a / p) % p;
}

UnivariateFn::UnivariateFn(std::int64_t p, std::vector<Digit> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  if (!is_odd_prime(p)) throw InvalidInput("UnivariateFn: p must be an odd prime");
  // x^p = x as functions, so fold exponents >= p down before trimming.
  for (std::size_t k = coeffs_.size(); k-- > static_cast<std::size_t>(p);) {
    const auto target = (k - 1) % static_cast<std::size_t>(p - 1) + 1;
    coeffs_[target] += coeffs_[k];
  }
  if (coeffs_.size() > static_cast<std::size_t>(p)) coeffs_.resize(static_cast<std::size_t>(p));
  for (auto& c : coeffs_) {
    c %= p;
    if (c < 0) c += p;
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UnivariateFn UnivariateFn::identity(std::int64_t p) { return UnivariateFn(p, {0, 1}); }

UnivariateFn UnivariateFn::constant(std::int64_t p, Digit c) { return UnivariateFn(p, {c}); }

Digit UnivariateFn::coeff(int k) const {
  return k >= 0 && static_cast<std::size_t>(k) < coeffs_.size() ? coeffs_[static_cast<std::size_t>(k)]
                                                                 : 0;
}

Digit UnivariateFn::operator()(Digit x) const {
  x %= p_;
  if (x < 0) x += p_;
  Digit acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * x + *it) % p_;
  return acc;
}

std::vector<Digit> UnivariateFn::table() const {
  std::vector<Digit> out(static_cast<std::size_t>(p_));
  for (Digit x = 0; x < p_; ++x) out[static_cast<std::size_t>(x)] = (*this)(x);
  return out;
}

UnivariateFn interpolate(std::span<const Digit> values, std::int64_t p) {
  if (!is_odd_prime(p)) throw InvalidInput("interpolate: p must be an odd prime");
  if (values.size() != static_cast<std::size_t>(p)) {
    throw InvalidInput("interpolate: table must have exactly p entries");
  }
  for (Digit v : values) {
    if (v < 0 || v >= p) throw InvalidInput("interpolate: table entry outside [0, p)");
  }
  // F(x) = sum_a F(a) (1 - (x - a)^(p-1)); expanding with C(p-1, k) = (-1)^k
  // gives c_0 = F(0) and c_k = -sum_a F(a) a^(p-1-k) for k >= 1.
  std::vector<Digit> coeffs(static_cast<std::size_t>(p), 0);
  coeffs[0] = values[0];
  for (std::int64_t k = 1; k < p; ++k) {
    std::int64_t sum = 0;
    for (std::int64_t a = 0; a < p; ++a) {
      sum += values[static_cast<std::size_t>(a)] * mod_pow(a, static_cast<std::uint64_t>(p - 1 - k), p);
      sum %= p;
    }
    coeffs[static_cast<std::size_t>(k)] = (p - sum) % p;
  }
  return UnivariateFn(p, std::move(coeffs));
}

UnivariateFn carry_map_poly(Digit u, std::int64_t p) {
  if (u < 0 || u >= p) throw InvalidInput("carry_map_poly: u must be a digit");
  std::vector<Digit> table(static_cast<std::size_t>(p));
  for (Digit x = 0; x < p; ++x) table[static_cast<std::size_t>(x)] = carry_c1(u + x, p);
  return interpolate(table, p);
}

}  // namespace residueseq
