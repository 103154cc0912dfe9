#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "residueseq/primitivity.hpp"

namespace residueseq {

/// A periodic sequence over Z/p stored as exactly one least period.
class LevelSequence {
 public:
  LevelSequence(std::int64_t p, std::vector<Digit> one_period);

  std::int64_t p() const { return p_; }
  std::uint64_t period() const { return terms_.size(); }
  const std::vector<Digit>& terms() const { return terms_; }
  Digit at(std::uint64_t t) const { return terms_[t % terms_.size()]; }
  bool is_zero() const;

  friend bool operator==(const LevelSequence&, const LevelSequence&) = default;

 private:
  std::int64_t p_;
  std::vector<Digit> terms_;
};

// Cuts a cyclic sequence down to its least period.
std::vector<std::int64_t> least_period_prefix(std::span<const std::int64_t> cyclic);

/// A sequence of G(f, p^e), materialised for one least period.
class LRSequence {
 public:
  LRSequence(RingPolynomial f, std::vector<Residue> initial_state, std::vector<Residue> one_period);

  const RingPolynomial& f() const { return f_; }
  const RingContext& context() const { return f_.context(); }
  const std::vector<Residue>& initial_state() const { return init_; }
  const std::vector<Residue>& terms() const { return terms_; }
  std::uint64_t period() const { return terms_.size(); }
  Residue at(std::uint64_t t) const { return terms_[t % terms_.size()]; }
  Digit digit(std::uint64_t t, int level) const { return padic_digit(at(t), context().p(), level); }

 private:
  RingPolynomial f_;
  std::vector<Residue> init_;
  std::vector<Residue> terms_;
};

// a(i+n) = -(f_0 a(i) + ... + f_{n-1} a(i+n-1)) mod p^e until the state
// returns to the initial one.
LRSequence generate(const RingPolynomial& f, std::span<const Residue> init);

// lambda * s, generated from the scaled initial state.
LRSequence scaled(const LRSequence& s, Residue lambda);

LevelSequence level(const LRSequence& s, int i);

bool is_primitive_sequence(const LRSequence& s, const PrimitivityCertificate& cert);

// [h_f(x) a_0] mod p.
LevelSequence alpha_sequence(const LRSequence& s, const PrimitivityCertificate& cert);

// Initial states whose mod-p reduction is nonzero, lexicographic with the
// first entry most significant.
std::vector<std::vector<Residue>> primitive_states(const RingContext& ctx, int n);
std::vector<std::vector<Residue>> all_states(const RingContext& ctx, int n);

enum class RecurringIdentity {
  top_level,         // (x^(j p^(e-2) T) - 1) a_{e-1} = j alpha, e >= 2
  two_below,         // shift by j p^(e-3) T, e >= 4
  binomial_e3,       // shift by j T with the C(j,2) h_f^2 a_0 term, e = 3
};

// How the carry terms of the e >= 4 identity are grouped.
enum class CarryReading {
  separate,  // C1(j (h_{e-2} a_0)) + C1(a_{e-2} + [j alpha])
  nested,    // C1(j (h_{e-2} a_0) + C1(a_{e-2} + [j alpha]))
};

struct IdentityCheck {
  bool holds = true;
  std::uint64_t positions = 0;
  std::optional<std::uint64_t> witness_t;
};

IdentityCheck check_recurring_identity(const LRSequence& s, const PrimitivityCertificate& cert, std::uint64_t j,
                                       RecurringIdentity identity, CarryReading reading = CarryReading::separate);

// Every identity that applies to e: top_level always, plus binomial_e3 for
// e = 3 or two_below for e >= 4.
bool verify_recurring_identities(const LRSequence& s, const PrimitivityCertificate& cert, std::uint64_t j);

// CSV with columns t,a,a0..a{e-1} and any extra named columns.
struct CsvColumn {
  std::string name;
  const LevelSequence* values;
};
std::string sequence_csv(const LRSequence& s, std::span<const CsvColumn> extra = {});

}  // namespace residueseq
