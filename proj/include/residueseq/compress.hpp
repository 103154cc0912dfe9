#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "residueseq/sequences.hpp"

namespace residueseq {

using Exponents = std::vector<int>;

/// Polynomial over Z/p in `arity` variables, reduced so every exponent is at
/// most p-1. Holds both the dense coefficient array and the value table;
/// entries are indexed mixed-radix with x_0 least significant. Two values
/// compare equal iff they agree as functions.
class MultivariatePoly {
 public:
  MultivariatePoly(std::int64_t p, int arity);

  static MultivariatePoly from_table(std::int64_t p, int arity, std::vector<Digit> table);
  // Exponents above p-1 are folded with x^p = x; repeated monomials add up.
  static MultivariatePoly from_terms(std::int64_t p, int arity, std::span<const std::pair<Exponents, Digit>> terms);

  std::int64_t p() const { return p_; }
  int arity() const { return arity_; }
  std::size_t size() const { return table_.size(); }

  Digit operator()(std::span<const Digit> point) const;
  Digit coefficient(std::span<const int> exponents) const;
  const std::vector<Digit>& table() const { return table_; }
  const std::vector<Digit>& coefficients() const { return coeffs_; }
  // Nonzero monomials, lexicographically descending by exponent tuple.
  std::vector<std::pair<Exponents, Digit>> terms() const;
  bool is_zero() const;

  Exponents exponents_of(std::size_t index) const;
  std::size_t index_of(std::span<const int> exponents) const;

  friend bool operator==(const MultivariatePoly& a, const MultivariatePoly& b) {
    return a.p_ == b.p_ && a.arity_ == b.arity_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::int64_t p_;
  int arity_;
  std::vector<Digit> coeffs_;
  std::vector<Digit> table_;
};

/// phi(x_0, ..., x_{e-1}) = g(x_{e-1}) + eta(x_0, ..., x_{e-2}) with
/// 1 <= deg g <= p-1.
class CompressingMap {
 public:
  CompressingMap(UnivariateFn g, MultivariatePoly eta);

  const UnivariateFn& g() const { return g_; }
  const MultivariatePoly& eta() const { return eta_; }
  std::int64_t p() const { return g_.p(); }
  int e() const { return eta_.arity() + 1; }

 private:
  UnivariateFn g_;
  MultivariatePoly eta_;
};

Digit eval_map(const CompressingMap& m, std::span<const Digit> digits);
LevelSequence compress_sequence(const CompressingMap& m, const LRSequence& s);
// Same values over the full length of s, without period reduction.
std::vector<Digit> compress_terms(const CompressingMap& m, const LRSequence& s);

// z at the all-zero tuple of e-1 variables, w elsewhere; built from the
// product (z-w)(1-x_0^(p-1))...(1-x_{e-2}^(p-1)) + w.
MultivariatePoly psi_zw(Digit z, Digit w, std::int64_t p, int e);

// z at the zero tuple; `assignment` lists the values on the nonzero tuples
// in increasing mixed-radix order (p^(e-1) - 1 entries), each drawn from W.
MultivariatePoly psi_zW(Digit z, std::span<const Digit> W, std::span<const Digit> assignment, std::int64_t p, int e);

std::vector<Digit> image_set(const UnivariateFn& g);
bool is_permutation(const UnivariateFn& g);

// Coefficient of x_0^(p-1) ... x_{m-1}^(p-1).
Digit full_monomial_coefficient(const MultivariatePoly& eta);
// (-1)^e (p+1)/2 mod p, the excluded value of that coefficient.
Digit excluded_full_coefficient(std::int64_t p, int e);

// `p=3 vars=2; 2:(2,0) 1:(0,0)`; the zero polynomial body is `0`.
std::string format_multivariate(const MultivariatePoly& poly);
MultivariatePoly parse_multivariate(std::string_view text);
// Body only, with p and arity supplied.
MultivariatePoly parse_multivariate_terms(std::string_view body, std::int64_t p, int arity);

nlohmann::ordered_json multivariate_to_json(const MultivariatePoly& poly);
MultivariatePoly multivariate_from_json(const nlohmann::json& j);

// Polynomial in x such as `x^2+2x+1`, `2*x`, `x`, `3`.
UnivariateFn parse_univariate(std::string_view text, std::int64_t p);
std::string format_univariate(const UnivariateFn& g);

/// `g=<poly in x>; eta=<terms | psi(z,w) | table@file | 0>`.
CompressingMap parse_map_spec(std::string_view spec, std::int64_t p, int e);

}  // namespace residueseq
