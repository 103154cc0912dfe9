#include "residueseq/sequences.hpp"

#include <algorithm>

namespace residueseq {

namespace {

std::uint64_t pow_u64(std::uint64_t b, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= b;
  return r;
}

void require_generated_by(const LRSequence& s, const PrimitivityCertificate& cert) {
  if (!(s.f() == cert.f)) throw InvalidInput("sequence is not generated by the certificate polynomial");
}

std::vector<Residue> level_column(const LRSequence& s, int i) {
  std::vector<Residue> out(s.terms().size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = padic_digit(s.terms()[t], s.context().p(), i);
  return out;
}

// h(x) applied to a digit sequence over Z/p, result mod p.
std::vector<Residue> apply_mod_p(const RingPolynomial& h, const std::vector<Residue>& digits) {
  return apply_poly_to_sequence(h.in_context(h.context().residue_field()), digits);
}

}  // namespace

LevelSequence::LevelSequence(std::int64_t p, std::vector<Digit> one_period) : p_(p), terms_(std::move(one_period)) {
  if (terms_.empty()) throw InvalidInput("level sequence needs at least one term");
  for (Digit d : terms_) {
    if (d < 0 || d >= p_) throw InvalidInput("level sequence term outside [0, p)");
  }
}

bool LevelSequence::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](Digit d) { return d == 0; });
}

std::vector<std::int64_t> least_period_prefix(std::span<const std::int64_t> cyclic) {
  const std::size_t len = cyclic.size();
  for (std::size_t d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool ok = true;
    for (std::size_t t = d; t < len && ok; ++t) ok = cyclic[t] == cyclic[t - d];
    if (ok) return {cyclic.begin(), cyclic.begin() + static_cast<std::ptrdiff_t>(d)};
  }
  return {cyclic.begin(), cyclic.end()};
}

LRSequence::LRSequence(RingPolynomial f, std::vector<Residue> initial_state, std::vector<Residue> one_period)
    : f_(std::move(f)), init_(std::move(initial_state)), terms_(std::move(one_period)) {
  if (terms_.empty()) throw InvalidInput("sequence needs at least one term");
}

LRSequence generate(const RingPolynomial& f, std::span<const Residue> init) {
  if (!f.is_monic() || f.degree() < 1) throw InvalidInput("generate: f must be monic of degree >= 1");
  const auto& ctx = f.context();
  if (f.coeff(0) % ctx.p() == 0) throw InvalidInput("generate: f(0) must be a unit mod p");
  const auto n = static_cast<std::size_t>(f.degree());
  if (init.size() != n) throw InvalidInput("generate: initial state must have deg f entries");
  for (Residue r : init) {
    if (!ctx.contains(r)) throw InvalidInput("generate: initial state entry outside [0, p^e)");
  }

  // Any state of an invertible recurrence returns within p^(en) steps.
  std::uint64_t cap = 1;
  for (std::size_t k = 0; k < n; ++k) cap *= static_cast<std::uint64_t>(ctx.modulus());

  std::vector<Residue> a(init.begin(), init.end());
  for (std::uint64_t period = 1; period <= cap; ++period) {
    Residue next = 0;
    for (std::size_t k = 0; k < n; ++k) {
      next = ctx.sub(next, ctx.mul(f.coeffs()[k], a[period - 1 + k]));
    }
    a.push_back(next);
    if (std::equal(init.begin(), init.end(), a.begin() + static_cast<std::ptrdiff_t>(period))) {
      a.resize(period);
      return {f, {init.begin(), init.end()}, std::move(a)};
    }
  }
  throw std::logic_error("generate: no cycle within p^(en) steps");
}

LRSequence scaled(const LRSequence& s, Residue lambda) {
  std::vector<Residue> init(s.initial_state());
  for (auto& r : init) r = s.context().mul(s.context().reduce(lambda), r);
  return generate(s.f(), init);
}

LevelSequence level(const LRSequence& s, int i) {
  if (i < 0 || i >= s.context().e()) throw InvalidInput("level index out of range");
  return {s.context().p(), least_period_prefix(level_column(s, i))};
}

bool is_primitive_sequence(const LRSequence& s, const PrimitivityCertificate& cert) {
  require_generated_by(s, cert);
  if (!cert.primitive) return false;
  const auto p = s.context().p();
  return std::any_of(s.terms().begin(), s.terms().end(), [p](Residue r) { return r % p != 0; });
}

LevelSequence alpha_sequence(const LRSequence& s, const PrimitivityCertificate& cert) {
  if (!is_primitive_sequence(s, cert)) throw InvalidInput("alpha_sequence: sequence is not primitive");
  const auto a0 = level(s, 0);
  const auto alpha = apply_poly_to_sequence(*cert.h_f, a0.terms());
  return {s.context().p(), least_period_prefix(alpha)};
}

std::vector<std::vector<Residue>> all_states(const RingContext& ctx, int n) {
  std::uint64_t total = 1;
  for (int k = 0; k < n; ++k) total *= static_cast<std::uint64_t>(ctx.modulus());
  std::vector<std::vector<Residue>> out;
  out.reserve(total);
  const auto m = static_cast<std::uint64_t>(ctx.modulus());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Residue> state(static_cast<std::size_t>(n));
    auto rest = idx;
    for (int k = n - 1; k >= 0; --k) {
      state[static_cast<std::size_t>(k)] = static_cast<Residue>(rest % m);
      rest /= m;
    }
    out.push_back(std::move(state));
  }
  return out;
}

std::vector<std::vector<Residue>> primitive_states(const RingContext& ctx, int n) {
  auto states = all_states(ctx, n);
  std::erase_if(states, [p = ctx.p()](const std::vector<Residue>& st) {
    return std::all_of(st.begin(), st.end(), [p](Residue r) { return r % p == 0; });
  });
  return states;
}

IdentityCheck check_recurring_identity(const LRSequence& s, const PrimitivityCertificate& cert, std::uint64_t j,
                                       RecurringIdentity identity, CarryReading reading) {
  require_generated_by(s, cert);
  if (!cert.primitive) throw InvalidInput("recurring identities need a primitive polynomial");
  const auto& ctx = s.context();
  const int e = ctx.e();
  const auto p = ctx.p();
  switch (identity) {
    case RecurringIdentity::top_level:
      if (e < 2) throw InvalidInput("top-level identity needs e >= 2");
      break;
    case RecurringIdentity::two_below:
      if (e < 4) throw InvalidInput("two-below identity needs e >= 4");
      break;
    case RecurringIdentity::binomial_e3:
      if (e != 3) throw InvalidInput("binomial identity needs e = 3");
      break;
  }

  const std::uint64_t len = s.period();
  const std::uint64_t T = cert.T;
  const auto jp = static_cast<std::int64_t>(j % static_cast<std::uint64_t>(p));
  const auto top = level_column(s, e - 1);
  const auto a0 = level_column(s, 0);
  const auto alpha = apply_mod_p(*cert.h_f, a0);

  auto mod_p = [p](std::int64_t v) { return ((v % p) + p) % p; };
  auto carry_of_sum = [&](Digit digit, std::uint64_t t) { return carry_c1(digit + mod_p(jp * alpha[t]), p); };

  std::uint64_t shift = 0;
  std::vector<Residue> hf_a1;
  std::vector<Residue> h_a0;
  std::vector<Residue> hf2_a0;
  std::vector<Residue> below;
  if (identity == RecurringIdentity::top_level) {
    shift = j * pow_u64(static_cast<std::uint64_t>(p), e - 2) * T;
  } else {
    const int h_index = identity == RecurringIdentity::two_below ? e - 2 : 1;
    shift = j * (identity == RecurringIdentity::two_below ? pow_u64(static_cast<std::uint64_t>(p), e - 3) : 1) * T;
    hf_a1 = apply_mod_p(*cert.h_f, level_column(s, 1));
    // a_0 embedded in Z/(p^e) before h_{e-2} (or h_1) acts.
    h_a0 = apply_poly_to_sequence(cert.h_at(h_index), a0);
    below = level_column(s, e - 2);
    if (identity == RecurringIdentity::binomial_e3) hf2_a0 = apply_mod_p(*cert.h_f, alpha);
  }

  IdentityCheck result;
  for (std::uint64_t t = 0; t < len; ++t) {
    const auto lhs = mod_p(top[(t + shift) % len] - top[t]);
    std::int64_t rhs = 0;
    if (identity == RecurringIdentity::top_level) {
      rhs = mod_p(jp * alpha[t]);
    } else {
      const auto scaled_h = ctx.mul(ctx.reduce(static_cast<std::int64_t>(j % static_cast<std::uint64_t>(ctx.modulus()))),
                                    h_a0[t]);
      const auto inner = carry_of_sum(below[t], t);
      rhs = jp * hf_a1[t];
      if (reading == CarryReading::separate) {
        rhs += carry_c1(scaled_h, p) + inner;
      } else {
        rhs += carry_c1(scaled_h + inner, p);
      }
      if (identity == RecurringIdentity::binomial_e3) {
        const auto binom = static_cast<std::int64_t>((j * (j >= 1 ? j - 1 : 0) / 2) % static_cast<std::uint64_t>(p));
        rhs += binom * hf2_a0[t];
      }
      rhs = mod_p(rhs);
    }
    ++result.positions;
    if (lhs != rhs) {
      result.holds = false;
      result.witness_t = t;
      break;
    }
  }
  return result;
}

bool verify_recurring_identities(const LRSequence& s, const PrimitivityCertificate& cert, std::uint64_t j) {
  const int e = s.context().e();
  if (e < 2) throw InvalidInput("recurring identities need e >= 2");
  if (!check_recurring_identity(s, cert, j, RecurringIdentity::top_level).holds) return false;
  if (e == 3) return check_recurring_identity(s, cert, j, RecurringIdentity::binomial_e3).holds;
  if (e >= 4) return check_recurring_identity(s, cert, j, RecurringIdentity::two_below).holds;
  return true;
}

std::string sequence_csv(const LRSequence& s, std::span<const CsvColumn> extra) {
  const int e = s.context().e();
  std::string out = "t,a";
  for (int i = 0; i < e; ++i) out += ",a" + std::to_string(i);
  for (const auto& col : extra) out += "," + col.name;
  out += '\n';
  for (std::uint64_t t = 0; t < s.period(); ++t) {
    out += std::to_string(t) + "," + std::to_string(s.at(t));
    for (int i = 0; i < e; ++i) out += "," + std::to_string(s.digit(t, i));
    for (const auto& col : extra) out += "," + std::to_string(col.values->at(t));
    out += '\n';
  }
  return out;
}

}  // namespace residueseq
