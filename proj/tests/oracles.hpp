#pragma once

// Slow reference implementations used to check the library. None of them
// call into residueseq beyond plain data types.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Poly = std::vector<std::int64_t>;  // constant first, not trimmed

inline std::int64_t md(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline std::int64_t ipow(std::int64_t b, int k) {
  std::int64_t r = 1;
  while (k-- > 0) r *= b;
  return r;
}

inline Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Schoolbook product then long division by a monic f, coefficients mod m.
inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t m) {
  Poly prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = md(prod[i + j] + a[i] * b[j], m);
  }
  const std::size_t n = f.size() - 1;
  for (std::size_t k = prod.size(); k-- > n;) {
    const auto c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) prod[k - n + i] = md(prod[k - n + i] - c * f[i], m);
  }
  prod.resize(n);
  return prod;
}

inline Poly one(std::size_t n) {
  Poly r(n, 0);
  r[0] = 1;
  return r;
}

inline Poly x_poly(std::size_t n) {
  Poly r(n, 0);
  if (n > 1) {
    r[1] = 1;
  }
  return r;
}

// x^k mod f by k sequential multiplications.
inline Poly x_pow_sequential(std::uint64_t k, const Poly& f, std::int64_t m) {
  const std::size_t n = f.size() - 1;
  Poly acc = one(n);
  Poly x = x_poly(n);
  if (n == 1) x[0] = md(-f[0], m);
  for (std::uint64_t i = 0; i < k; ++i) acc = mulmod(acc, x, f, m);
  return acc;
}

// Smallest k >= 1 with x^k = 1 mod f, scanning up to limit.
inline std::optional<std::uint64_t> order_sequential(const Poly& f, std::int64_t m, std::uint64_t limit) {
  const std::size_t n = f.size() - 1;
  Poly x = x_poly(n);
  if (n == 1) x[0] = md(-f[0], m);
  Poly acc = x;
  const Poly target = one(n);
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (acc == target) return k;
    acc = mulmod(acc, x, f, m);
  }
  return std::nullopt;
}

// Terms a(0..len) of a(t+n) = -sum f_i a(t+i) mod m.
inline std::vector<std::int64_t> simulate(const Poly& f, const std::vector<std::int64_t>& init, std::int64_t m,
                                          std::size_t len) {
  const std::size_t n = f.size() - 1;
  std::vector<std::int64_t> a(init.begin(), init.end());
  while (a.size() < len) {
    std::int64_t next = 0;
    const std::size_t t = a.size() - n;
    for (std::size_t i = 0; i < n; ++i) next -= f[i] * a[t + i];
    a.push_back(md(next, m));
  }
  a.resize(len);
  return a;
}

// Least period of the sequence generated from init (state-cycle search).
inline std::uint64_t sequence_period(const Poly& f, const std::vector<std::int64_t>& init, std::int64_t m) {
  const std::size_t n = f.size() - 1;
  std::vector<std::int64_t> state(init.begin(), init.end());
  const auto start = state;
  for (std::uint64_t k = 1;; ++k) {
    std::int64_t next = 0;
    for (std::size_t i = 0; i < n; ++i) next -= f[i] * state[i];
    state.erase(state.begin());
    state.push_back(md(next, m));
    if (state == start) return k;
  }
}

inline std::int64_t inverse_mod_prime(std::int64_t a, std::int64_t p) {
  for (std::int64_t x = 1; x < p; ++x) {
    if (md(a * x, p) == 1) return x;
  }
  return 0;
}

// Solves the Vandermonde system sum_k c_k a^k = values[a] over Z/p.
inline Poly interpolate_gauss(const std::vector<std::int64_t>& values, std::int64_t p) {
  const auto n = static_cast<std::size_t>(p);
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n + 1));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < n; ++k) rows[a][k] = md(ipow(static_cast<std::int64_t>(a), static_cast<int>(k)), p);
    rows[a][n] = md(values[a], p);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (rows[pivot][col] == 0) ++pivot;
    std::swap(rows[pivot], rows[col]);
    const auto inv = inverse_mod_prime(rows[col][col], p);
    for (auto& v : rows[col]) v = md(v * inv, p);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || rows[r][col] == 0) continue;
      const auto factor = rows[r][col];
      for (std::size_t k = 0; k <= n; ++k) rows[r][k] = md(rows[r][k] - factor * rows[col][k], p);
    }
  }
  Poly c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = rows[k][n];
  return trim(c);
}

inline std::int64_t eval(const Poly& c, std::int64_t x, std::int64_t m) {
  std::int64_t r = 0;
  for (std::size_t k = c.size(); k-- > 0;) r = md(r * x + c[k], m);
  return r;
}

inline std::set<std::int64_t> squares(std::int64_t p) {
  std::set<std::int64_t> out;
  for (std::int64_t x = 0; x < p; ++x) out.insert(md(x * x, p));
  return out;
}

inline int legendre_brute(std::int64_t a, std::int64_t p) {
  a = md(a, p);
  if (a == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x) {
    if (md(x * x, p) == a) return 1;
  }
  return -1;
}

inline std::int64_t digit(std::int64_t a, std::int64_t p, int i) {
  for (int k = 0; k < i; ++k) a /= p;
  return a % p;
}

}  // namespace oracle
