#include <doctest.h>

#include "oracles.hpp"
#include "residueseq/sequences.hpp"

using namespace residueseq;

namespace {

const RingContext Z9(3, 2);
const RingPolynomial fib9(Z9, {8, 8, 1});

}  // namespace

TEST_CASE("Fibonacci m-sequence over Z/3") {
  const RingContext Z3(3, 1);
  const auto s = generate(RingPolynomial(Z3, {2, 2, 1}), std::vector<Residue>{0, 1});
  CHECK(s.terms() == std::vector<Residue>{0, 1, 1, 2, 0, 2, 2, 1});
  CHECK(s.period() == 8);
  CHECK(s.at(9) == 1);
}

TEST_CASE("Fibonacci sequence over Z/9") {
  const auto s = generate(fib9, std::vector<Residue>{0, 1});
  CHECK(s.period() == 24);
  CHECK(s.terms() == std::vector<Residue>(oracle::simulate({8, 8, 1}, {0, 1}, 9, 24)));
  CHECK(oracle::sequence_period({8, 8, 1}, {0, 1}, 9) == 24);
  const auto a0 = level(s, 0);
  CHECK(a0.terms() == std::vector<Digit>{0, 1, 1, 2, 0, 2, 2, 1});
  for (std::uint64_t t = 0; t < 24; ++t) {
    CHECK(a0.at(t) == s.at(t) % 3);
    CHECK(level(s, 1).at(t) == s.at(t) / 3);
    CHECK(s.digit(t, 1) == s.at(t) / 3);
  }
  CHECK(level(s, 1).period() == 24);
  CHECK_THROWS_AS(generate(fib9, std::vector<Residue>{0}), InvalidInput);
  CHECK_THROWS_AS(generate(RingPolynomial(Z9, {3, 1, 1}), std::vector<Residue>{0, 1}), InvalidInput);
}

TEST_CASE("level sequences") {
  const LevelSequence l(3, {1, 2, 1, 2});
  CHECK(l.period() == 4);
  CHECK(l.at(5) == 2);
  CHECK_FALSE(l.is_zero());
  CHECK(LevelSequence(3, {0, 0}).is_zero());
  CHECK(least_period_prefix(std::vector<std::int64_t>{1, 2, 1, 2}) == std::vector<std::int64_t>{1, 2});
  CHECK(least_period_prefix(std::vector<std::int64_t>{1, 2, 3}) == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("alpha of the Fibonacci sequence") {
  const auto cert = certify(fib9);
  const auto s = generate(fib9, std::vector<Residue>{0, 1});
  CHECK(is_primitive_sequence(s, cert));
  const auto alpha = alpha_sequence(s, cert);
  CHECK(alpha.terms() == std::vector<Digit>{1, 2, 0, 2, 2, 1, 0, 1});
  // Oracle: h_f = x + 1, so alpha(t) = a0(t + 1) + a0(t).
  const auto raw = oracle::simulate({8, 8, 1}, {0, 1}, 9, 25);
  for (std::uint64_t t = 0; t < 24; ++t) CHECK(alpha.at(t) == (raw[t + 1] + raw[t]) % 3);
  const auto p_times = generate(fib9, std::vector<Residue>{0, 3});
  CHECK_FALSE(is_primitive_sequence(p_times, cert));
  CHECK_THROWS_AS(alpha_sequence(p_times, cert), InvalidInput);
}

TEST_CASE("alpha commutes with shifts") {
  const auto cert = certify(fib9);
  for (const auto& init : primitive_states(Z9, 2)) {
    const auto s = generate(fib9, init);
    const auto shifted = generate(fib9, std::vector<Residue>{s.at(1), s.at(2)});
    const auto a = alpha_sequence(s, cert);
    const auto b = alpha_sequence(shifted, cert);
    for (std::uint64_t t = 0; t < 24; ++t) CHECK(b.at(t) == a.at(t + 1));
  }
}

TEST_CASE("scaling and state enumeration") {
  const auto s = generate(fib9, std::vector<Residue>{0, 1});
  const auto twice = scaled(s, 2);
  for (std::uint64_t t = 0; t < 24; ++t) CHECK(twice.at(t) == Z9.mul(2, s.at(t)));
  CHECK(all_states(Z9, 2).size() == 81);
  CHECK(primitive_states(Z9, 2).size() == 72);
  CHECK(primitive_states(Z9, 2).front() == std::vector<Residue>{0, 1});
}

TEST_CASE("top-level identity on Z/9 checked against direct simulation") {
  const auto cert = certify(fib9);
  for (const auto& init : primitive_states(Z9, 2)) {
    const auto s = generate(fib9, init);
    const auto raw = oracle::simulate({8, 8, 1}, init, 9, 60);
    for (std::uint64_t j = 0; j < 3; ++j) {
      CHECK(check_recurring_identity(s, cert, j, RecurringIdentity::top_level).holds);
      // a1(t + 8j) - a1(t) = j (a0(t+1) + a0(t)) mod 3.
      for (std::size_t t = 0; t < 24; ++t) {
        const auto lhs = oracle::md(raw[t + 8 * j] / 3 - raw[t] / 3, 3);
        const auto rhs = oracle::md(static_cast<std::int64_t>(j) * (raw[t + 1] + raw[t]), 3);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("recurring identities at e = 3 and e = 4") {
  for (int e : {3, 4}) {
    const RingContext ctx(3, e);
    const RingPolynomial f(ctx, {ctx.modulus() - 1, ctx.modulus() - 1, 1});
    const auto cert = certify(f);
    REQUIRE(cert.primitive);
    const auto identity = e == 3 ? RecurringIdentity::binomial_e3 : RecurringIdentity::two_below;
    for (const auto& init : {std::vector<Residue>{0, 1}, std::vector<Residue>{5, 7}, std::vector<Residue>{1, 0}}) {
      const auto s = generate(f, init);
      CHECK(s.period() == cert.period);
      for (std::uint64_t j = 0; j < 3; ++j) {
        const auto top = check_recurring_identity(s, cert, j, RecurringIdentity::top_level);
        CHECK(top.holds);
        CHECK(top.positions == cert.period);
        CHECK(check_recurring_identity(s, cert, j, identity).holds);
        CHECK(verify_recurring_identities(s, cert, j));
      }
    }
  }
}

TEST_CASE("a wrong identity is caught") {
  const auto cert = certify(fib9);
  const auto s = generate(fib9, std::vector<Residue>{0, 1});
  CHECK_THROWS_AS(check_recurring_identity(s, cert, 1, RecurringIdentity::binomial_e3), InvalidInput);
  CHECK_THROWS_AS(check_recurring_identity(s, cert, 1, RecurringIdentity::two_below), InvalidInput);
  const auto other = generate(RingPolynomial(Z9, {2, 1, 1}), std::vector<Residue>{0, 1});
  CHECK_THROWS_AS(check_recurring_identity(other, cert, 1, RecurringIdentity::top_level), InvalidInput);
  // Corrupting one top digit breaks the identity at that position.
  auto terms = s.terms();
  terms[5] = Z9.add(terms[5], 3);
  const LRSequence corrupted(fib9, {0, 1}, terms);
  const auto result = check_recurring_identity(corrupted, cert, 1, RecurringIdentity::top_level);
  CHECK_FALSE(result.holds);
  REQUIRE(result.witness_t.has_value());
  CHECK((*result.witness_t == 5 || (*result.witness_t + 8) % 24 == 5));
}

TEST_CASE("CSV dump") {
  const auto s = generate(fib9, std::vector<Residue>{0, 1});
  const auto csv = sequence_csv(s);
  CHECK(csv.rfind("t,a,a0,a1\n0,0,0,0\n1,1,1,0\n2,1,1,0\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 25);
  const auto alpha = alpha_sequence(s, certify(fib9));
  const std::vector<CsvColumn> extra{{"alpha", &alpha}};
  CHECK(sequence_csv(s, extra).rfind("t,a,a0,a1,alpha\n0,0,0,0,1\n", 0) == 0);
}
