#include "residueseq/polyring.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <numeric>

namespace residueseq {

namespace {

void require_same_ring(const RingPolynomial& a, const RingPolynomial& b) {
  if (!(a.context() == b.context())) {
    throw InvalidInput("polynomials over different rings: " + a.context().describe() + " vs " +
                       b.context().describe());
  }
}

void require_modulus(const RingPolynomial& f) {
  if (!f.is_monic() || f.degree() < 1) throw InvalidInput("modulus must be monic of degree >= 1");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidInput("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

RingPolynomial::RingPolynomial(RingContext ctx, std::vector<Residue> coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c = ctx_.reduce(c);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RingPolynomial RingPolynomial::monomial(const RingContext& ctx, int k, Residue c) {
  std::vector<Residue> coeffs(static_cast<std::size_t>(k) + 1, 0);
  coeffs.back() = c;
  return {ctx, std::move(coeffs)};
}

Residue RingPolynomial::coeff(int k) const {
  return k >= 0 && static_cast<std::size_t>(k) < coeffs_.size() ? coeffs_[static_cast<std::size_t>(k)]
                                                                 : 0;
}

RingPolynomial RingPolynomial::in_context(const RingContext& ctx) const {
  if (ctx.p() != ctx_.p()) throw InvalidInput("in_context: prime differs");
  return {ctx, coeffs_};
}

RingPolynomial operator+(const RingPolynomial& a, const RingPolynomial& b) {
  require_same_ring(a, b);
  std::vector<Residue> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  }
  return {a.context(), std::move(out)};
}

RingPolynomial operator-(const RingPolynomial& a, const RingPolynomial& b) {
  require_same_ring(a, b);
  std::vector<Residue> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  }
  return {a.context(), std::move(out)};
}

RingPolynomial operator*(const RingPolynomial& a, const RingPolynomial& b) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return RingPolynomial::zero(a.context());
  const auto& ctx = a.context();
  std::vector<Residue> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      out[i + j] = ctx.add(out[i + j], ctx.mul(a.coeffs()[i], b.coeffs()[j]));
    }
  }
  return {ctx, std::move(out)};
}

RingPolynomial operator*(Residue c, const RingPolynomial& a) {
  std::vector<Residue> out(a.coeffs());
  for (auto& v : out) v = a.context().mul(a.context().reduce(c), v);
  return {a.context(), std::move(out)};
}

RingPolynomial poly_mod(const RingPolynomial& a, const RingPolynomial& f) {
  require_same_ring(a, f);
  require_modulus(f);
  const auto& ctx = f.context();
  const int n = f.degree();
  std::vector<Residue> r(a.coeffs());
  for (int k = static_cast<int>(r.size()) - 1; k >= n; --k) {
    const Residue lead = r[static_cast<std::size_t>(k)];
    if (lead == 0) continue;
    for (int i = 0; i <= n; ++i) {
      auto& slot = r[static_cast<std::size_t>(k - n + i)];
      slot = ctx.sub(slot, ctx.mul(lead, f.coeffs()[static_cast<std::size_t>(i)]));
    }
  }
  if (r.size() > static_cast<std::size_t>(n)) r.resize(static_cast<std::size_t>(n));
  return {ctx, std::move(r)};
}

RingPolynomial poly_mulmod(const RingPolynomial& a, const RingPolynomial& b, const RingPolynomial& f) {
  require_same_ring(a, f);
  require_same_ring(b, f);
  return poly_mod(a * b, f);
}

RingPolynomial poly_powmod(const RingPolynomial& base, std::uint64_t k, const RingPolynomial& f) {
  require_same_ring(base, f);
  require_modulus(f);
  RingPolynomial result = poly_mod(RingPolynomial::constant(f.context(), 1), f);
  RingPolynomial square = poly_mod(base, f);
  while (k > 0) {
    if (k & 1U) result = poly_mulmod(result, square, f);
    k >>= 1U;
    if (k > 0) square = poly_mulmod(square, square, f);
  }
  return result;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int mult = 0;
    while (n % d == 0) {
      n /= d;
      ++mult;
    }
    out.emplace_back(d, mult);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw InvalidInput("order_of_x: exponent bound overflows 64 bits");
  }
  return a * b;
}

// An exponent of the unit group of Z/p[x]/(f) for any f of degree n:
// lcm(p^d - 1 : d <= n) times the least power of p that is >= n.
std::uint64_t universal_exponent(std::uint64_t p, int n) {
  std::uint64_t l = 1;
  std::uint64_t pd = 1;
  for (int d = 1; d <= n; ++d) {
    pd = checked_mul(pd, p);
    l = checked_mul(l / std::gcd(l, pd - 1), pd - 1);
  }
  std::uint64_t pc = 1;
  while (pc < static_cast<std::uint64_t>(n)) pc = checked_mul(pc, p);
  return checked_mul(l, pc);
}

}  // namespace

std::uint64_t order_of_x(const RingPolynomial& f) {
  require_modulus(f);
  const auto& ctx = f.context();
  if (f.coeff(0) % ctx.p() == 0) throw InvalidInput("order_of_x: f(0) is not a unit mod p");

  const auto field = ctx.residue_field();
  const auto fp = f.in_context(field);
  const auto xp = RingPolynomial::monomial(field, 1);
  const auto n = f.degree();

  std::uint64_t bound = 1;
  for (int i = 0; i < n; ++i) bound = checked_mul(bound, static_cast<std::uint64_t>(ctx.p()));
  bound -= 1;
  if (!poly_powmod(xp, bound, fp).is_one()) {
    bound = universal_exponent(static_cast<std::uint64_t>(ctx.p()), n);
    if (!poly_powmod(xp, bound, fp).is_one()) {
      throw std::logic_error("order_of_x: universal exponent failed");
    }
  }
  std::uint64_t order = bound;
  for (const auto& [q, mult] : factorize(bound)) {
    for (int i = 0; i < mult && order % q == 0; ++i) {
      if (!poly_powmod(xp, order / q, fp).is_one()) break;
      order /= q;
    }
  }

  auto y = poly_powmod(RingPolynomial::monomial(ctx, 1), order, f);
  for (int j = 0; !y.is_one(); ++j) {
    if (j >= ctx.e() - 1) throw std::logic_error("order_of_x: lift exceeded p^(e-1)");
    y = poly_powmod(y, static_cast<std::uint64_t>(ctx.p()), f);
    order = checked_mul(order, static_cast<std::uint64_t>(ctx.p()));
  }
  return order;
}

std::vector<Residue> apply_poly_to_sequence(const RingPolynomial& g, std::span<const Residue> s,
                                            SequenceWrap wrap) {
  const auto& ctx = g.context();
  const std::size_t len = s.size();
  const std::size_t shift = g.is_zero() ? 0 : static_cast<std::size_t>(g.degree());
  std::size_t out_len = len;
  if (wrap == SequenceWrap::none) {
    if (len < shift + 1) throw InvalidInput("sequence shorter than deg g with no declared period");
    out_len = len - shift;
  } else if (len == 0) {
    throw InvalidInput("empty periodic sequence");
  }
  std::vector<Residue> out(out_len, 0);
  for (std::size_t t = 0; t < out_len; ++t) {
    Residue acc = 0;
    for (std::size_t k = 0; k < g.coeffs().size(); ++k) {
      const auto c = g.coeffs()[k];
      if (c == 0) continue;
      acc = ctx.add(acc, ctx.mul(c, ctx.reduce(s[(t + k) % len])));
    }
    out[t] = acc;
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  text = trim(text);
  if (text.empty()) throw InvalidInput("empty integer list");
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_int(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_polynomial(const RingPolynomial& f, std::string_view name) {
  std::string out = f.context().describe() + "; " + std::string(name) + "=";
  if (f.is_zero()) return out + "0";
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(f.coeffs()[i]);
  }
  return out;
}

NamedPolynomial parse_polynomial(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw InvalidInput("polynomial text needs 'p=<p> e=<e>; <name>=...'");
  auto header = trim(text.substr(0, semi));
  auto body = trim(text.substr(semi + 1));

  std::int64_t p = 0;
  std::int64_t e = 0;
  while (!header.empty()) {
    const auto space = header.find(' ');
    const auto token = header.substr(0, space);
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw InvalidInput("bad header token '" + std::string(token) + "'");
    const auto key = token.substr(0, eq);
    const auto value = parse_int(token.substr(eq + 1));
    if (key == "p") {
      p = value;
    } else if (key == "e") {
      e = value;
    } else {
      throw InvalidInput("unknown header key '" + std::string(key) + "'");
    }
    header = space == std::string_view::npos ? std::string_view{} : trim(header.substr(space + 1));
  }
  if (p == 0 || e == 0) throw InvalidInput("polynomial header must give p and e");
  const RingContext ctx(p, static_cast<int>(e));

  const auto eq = body.find('=');
  if (eq == std::string_view::npos) throw InvalidInput("polynomial body must be <name>=<coeffs>");
  const auto name = trim(body.substr(0, eq));
  if (name.empty()) throw InvalidInput("polynomial name is empty");
  auto coeffs = parse_int_list(body.substr(eq + 1));
  for (auto c : coeffs) {
    if (!ctx.contains(c)) throw InvalidInput("coefficient " + std::to_string(c) + " outside [0, p^e)");
  }
  return {std::string(name), RingPolynomial(ctx, std::move(coeffs))};
}

}  // namespace residueseq
