#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "residueseq/compress.hpp"

using namespace residueseq;

namespace {

// Evaluates a term list directly at a point.
Digit eval_terms(const std::vector<std::pair<Exponents, Digit>>& terms, const std::vector<Digit>& point,
                 std::int64_t p) {
  std::int64_t sum = 0;
  for (const auto& [exps, c] : terms) {
    std::int64_t v = c;
    for (std::size_t i = 0; i < exps.size(); ++i) v = v * oracle::ipow(point[i], exps[i]) % p;
    sum = (sum + v) % p;
  }
  return oracle::md(sum, p);
}

std::vector<Digit> point_of(std::size_t index, std::int64_t p, int arity) {
  std::vector<Digit> point(static_cast<std::size_t>(arity));
  for (auto& d : point) {
    d = static_cast<Digit>(index % static_cast<std::size_t>(p));
    index /= static_cast<std::size_t>(p);
  }
  return point;
}

}  // namespace

TEST_CASE("multivariate polynomials fold exponents and add repeated monomials") {
  const std::vector<std::pair<Exponents, Digit>> terms{{{3, 0}, 1}, {{1, 0}, 1}, {{0, 0}, 5}};
  const auto poly = MultivariatePoly::from_terms(3, 2, terms);
  // x0^3 = x0, so the result is 2 x0 + 2.
  CHECK(poly.coefficient(std::vector<int>{1, 0}) == 2);
  CHECK(poly.coefficient(std::vector<int>{0, 0}) == 2);
  CHECK(poly.terms().size() == 2);
  CHECK(poly(std::vector<Digit>{1, 2}) == 1);
  CHECK(MultivariatePoly(3, 2).is_zero());
  CHECK(poly.index_of(std::vector<int>{1, 2}) == 7);
  CHECK(poly.exponents_of(7) == Exponents{1, 2});
}

TEST_CASE("canonical reduction matches direct evaluation for p = 3, arity up to 3") {
  std::uint64_t state = 99;
  auto next = [&state](std::uint64_t bound) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int>((state >> 33) % bound);
  };
  for (int arity = 0; arity <= 3; ++arity) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::pair<Exponents, Digit>> terms;
      const int count = next(6);
      for (int k = 0; k < count; ++k) {
        Exponents exps(static_cast<std::size_t>(arity));
        for (auto& x : exps) x = next(6);
        terms.emplace_back(exps, next(3));
      }
      const auto poly = MultivariatePoly::from_terms(3, arity, terms);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto point = point_of(i, 3, arity);
        CHECK(poly.table()[i] == eval_terms(terms, point, 3));
        CHECK(poly(point) == poly.table()[i]);
      }
      const auto rebuilt = MultivariatePoly::from_table(3, arity, poly.table());
      CHECK(rebuilt == poly);
      CHECK(rebuilt.coefficients() == poly.coefficients());
      for (const auto& [exps, c] : poly.terms()) {
        for (int x : exps) CHECK(x < 3);
        CHECK(c != 0);
      }
    }
  }
}

TEST_CASE("psi with two values") {
  const auto psi = psi_zw(1, 2, 3, 2);
  CHECK(psi.table() == std::vector<Digit>{1, 2, 2});
  CHECK(format_multivariate(psi) == "p=3 vars=1; 1:(2) 1:(0)");
  CHECK(psi.coefficient(std::vector<int>{2}) == 1);
  const auto psi3 = psi_zw(0, 1, 3, 3);
  for (std::size_t i = 0; i < psi3.size(); ++i) CHECK(psi3.table()[i] == (i == 0 ? 0 : 1));
}

TEST_CASE("psi product expansion agrees with the two-branch table") {
  for (std::int64_t p : {3, 5, 7}) {
    for (int e : {2, 3}) {
      for (Digit z = 0; z < p; ++z) {
        for (Digit w = 0; w < p; ++w) {
          const auto psi = psi_zw(z, w, p, e);
          std::vector<Digit> table(psi.size(), w);
          table[0] = z;
          CHECK(psi == MultivariatePoly::from_table(p, e - 1, table));
          CHECK(full_monomial_coefficient(psi) == oracle::md((z - w) * ((e - 1) % 2 == 0 ? 1 : -1), p));
        }
      }
    }
  }
}

TEST_CASE("psi with a set of values") {
  const std::vector<Digit> W{1, 2};
  const std::vector<Digit> assignment{1, 2};
  const auto psi = psi_zW(0, W, assignment, 3, 2);
  CHECK(psi.table() == std::vector<Digit>{0, 1, 2});
  CHECK(psi.terms() == std::vector<std::pair<Exponents, Digit>>{{{1}, 1}});
  CHECK_THROWS_AS(psi_zW(0, W, std::vector<Digit>{0, 2}, 3, 2), InvalidInput);
  CHECK_THROWS_AS(psi_zW(0, W, std::vector<Digit>{1}, 3, 2), InvalidInput);
  CHECK_THROWS_AS(psi_zW(0, std::vector<Digit>{}, assignment, 3, 2), InvalidInput);
}

TEST_CASE("compressing maps") {
  const CompressingMap m(UnivariateFn::identity(3), psi_zw(1, 2, 3, 2));
  CHECK(m.e() == 2);
  // digits (x0, x1) = (0, 2): 2 + psi(0) = 2 + 1 = 0.
  CHECK(eval_map(m, std::vector<Digit>{0, 2}) == 0);
  CHECK_THROWS_AS(CompressingMap(UnivariateFn::constant(3, 1), MultivariatePoly(3, 1)), InvalidInput);
  CHECK_THROWS_AS(eval_map(m, std::vector<Digit>{0}), InvalidInput);
}

TEST_CASE("compressing the Fibonacci sequence over Z/9") {
  const RingContext Z9(3, 2);
  const RingPolynomial fib9(Z9, {8, 8, 1});
  const auto s = generate(fib9, std::vector<Residue>{0, 1});
  const CompressingMap m(UnivariateFn::identity(3), MultivariatePoly::from_terms(3, 1, std::vector<std::pair<Exponents, Digit>>{{{2}, 1}}));
  const auto terms = compress_terms(m, s);
  REQUIRE(terms.size() == 24);
  for (std::uint64_t t = 0; t < 24; ++t) {
    const auto a = s.at(t);
    CHECK(terms[t] == oracle::md(a / 3 + (a % 3) * (a % 3), 3));
  }
  const auto least = compress_sequence(m, s);
  for (std::uint64_t t = 0; t < 48; ++t) CHECK(least.at(t) == terms[t % 24]);
}

TEST_CASE("images, permutations and the excluded coefficient") {
  CHECK(image_set(UnivariateFn(7, {0, 0, 1})) == std::vector<Digit>{0, 1, 2, 4});
  CHECK(image_set(UnivariateFn(5, {0, 0, 1})) == std::vector<Digit>{0, 1, 4});
  CHECK_FALSE(is_permutation(UnivariateFn(7, {0, 0, 1})));
  CHECK(is_permutation(UnivariateFn(5, {0, 2})));
  CHECK(is_permutation(UnivariateFn(5, {0, 0, 0, 1})));
  CHECK(excluded_full_coefficient(3, 2) == 2);
  CHECK(excluded_full_coefficient(5, 3) == 2);
}

TEST_CASE("multivariate text and JSON round trips") {
  const auto psi = psi_zw(1, 2, 5, 3);
  const auto text = format_multivariate(psi);
  CHECK(parse_multivariate(text) == psi);
  CHECK(format_multivariate(parse_multivariate(text)) == text);
  CHECK(format_multivariate(MultivariatePoly(3, 2)) == "p=3 vars=2; 0");
  CHECK(parse_multivariate("p=3 vars=2; 0").is_zero());
  const auto j = multivariate_to_json(psi);
  CHECK(multivariate_from_json(nlohmann::json::parse(j.dump())) == psi);
  CHECK_THROWS_AS(parse_multivariate("p=3 vars=1; 1:(2,1)"), InvalidInput);
  CHECK_THROWS_AS(parse_multivariate("p=3 vars=1; x"), InvalidInput);
}

TEST_CASE("univariate text") {
  CHECK(parse_univariate("x^2+2x+1", 3) == UnivariateFn(3, {1, 2, 1}));
  CHECK(parse_univariate("2*x", 5) == UnivariateFn(5, {0, 2}));
  CHECK(parse_univariate("4", 5) == UnivariateFn::constant(5, 4));
  CHECK(format_univariate(UnivariateFn(3, {1, 2, 1})) == "x^2+2*x+1");
  CHECK(parse_univariate(format_univariate(UnivariateFn(7, {3, 0, 5, 1})), 7) == UnivariateFn(7, {3, 0, 5, 1}));
  CHECK_THROWS_AS(parse_univariate("y^2", 3), InvalidInput);
}

TEST_CASE("map specs") {
  const auto m = parse_map_spec("g=x^2; eta=psi(0,1)", 3, 2);
  CHECK(m.g() == UnivariateFn(3, {0, 0, 1}));
  CHECK(m.eta() == psi_zw(0, 1, 3, 2));
  const auto terms = parse_map_spec("g=x; eta=1:(2) 1:(0)", 3, 2);
  CHECK(terms.eta() == psi_zw(1, 2, 3, 2));
  CHECK(parse_map_spec("g=x; eta=0", 3, 3).eta().is_zero());

  const std::string path = "eta_table_fixture.json";
  {
    std::ofstream out(path);
    out << multivariate_to_json(psi_zw(2, 1, 3, 2)).dump();
  }
  CHECK(parse_map_spec("g=x; eta=table@" + path, 3, 2).eta() == psi_zw(2, 1, 3, 2));
  std::remove(path.c_str());

  CHECK_THROWS_AS(parse_map_spec("eta=psi(0,1)", 3, 2), InvalidInput);
  CHECK_THROWS_AS(parse_map_spec("g=x; eta=psi(0)", 3, 2), InvalidInput);
  CHECK_THROWS_AS(parse_map_spec("g=x; eta=table@/nonexistent.json", 3, 2), InvalidInput);
  CHECK_THROWS_AS(parse_map_spec("g=x; foo=1", 3, 2), InvalidInput);
  CHECK_THROWS_AS(parse_map_spec("g=x; eta=psi(0,1)", 3, 1), InvalidInput);
}
