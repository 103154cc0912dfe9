#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace residueseq {

using Residue = std::int64_t;
using Digit = std::int64_t;
using DigitVector = std::vector<Digit>;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_odd_prime(std::int64_t p);

std::int64_t mod_pow(std::int64_t base, std::uint64_t exp, std::int64_t m);
// Inverse of a unit modulo a prime.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

/// The ring Z/(p^e) for an odd prime p. Residues are canonical values in
/// [0, p^e); p^e must stay below 2^31 so a product of two residues fits
/// in 64 bits.
class RingContext {
 public:
  RingContext(std::int64_t p, int e);

  std::int64_t p() const { return p_; }
  int e() const { return e_; }
  std::int64_t modulus() const { return modulus_; }

  bool contains(Residue a) const { return a >= 0 && a < modulus_; }

  Residue reduce(std::int64_t v) const {
    v %= modulus_;
    return v < 0 ? v + modulus_ : v;
  }
  Residue add(Residue a, Residue b) const { return reduce(a + b); }
  Residue sub(Residue a, Residue b) const { return reduce(a - b); }
  Residue mul(Residue a, Residue b) const { return reduce(a * b); }
  Residue neg(Residue a) const { return reduce(-a); }

  // Same p with a different exponent.
  RingContext with_exponent(int e) const { return RingContext(p_, e); }
  RingContext residue_field() const { return RingContext(p_, 1); }

  std::string describe() const;

  friend bool operator==(const RingContext&, const RingContext&) = default;

 private:
  std::int64_t p_;
  int e_;
  std::int64_t modulus_;
};

// Base-p digits of a, least significant first, always ctx.e() entries.
DigitVector padic_expand(Residue a, const RingContext& ctx);
Residue padic_compose(std::span<const Digit> digits, const RingContext& ctx);

// Digit i of the base-p expansion of a nonnegative integer.
Digit padic_digit(std::int64_t a, std::int64_t p, int i);

// C1(a): the second base-p digit of a >= 0. Defined on any nonnegative
// integer since carries are taken of digit sums outside [0, p^e).
Digit carry_c1(std::int64_t a, std::int64_t p);

/// A function Z/p -> Z/p held as its unique polynomial of degree < p.
class UnivariateFn {
 public:
  UnivariateFn(std::int64_t p, std::vector<Digit> coeffs);

  static UnivariateFn identity(std::int64_t p);
  static UnivariateFn constant(std::int64_t p, Digit c);

  std::int64_t p() const { return p_; }
  // Trimmed, constant term first. Empty for the zero function.
  const std::vector<Digit>& coeffs() const { return coeffs_; }
  Digit coeff(int k) const;
  // -1 for the zero function.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Digit operator()(Digit x) const;
  std::vector<Digit> table() const;

  friend bool operator==(const UnivariateFn&, const UnivariateFn&) = default;

 private:
  std::int64_t p_;
  std::vector<Digit> coeffs_;
};

UnivariateFn interpolate(std::span<const Digit> values, std::int64_t p);

// Polynomial of x -> C1(u + x) over Z/p.
UnivariateFn carry_map_poly(Digit u, std::int64_t p);

}  // namespace residueseq
