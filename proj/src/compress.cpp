#include "residueseq/compress.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace residueseq {

namespace {

std::size_t checked_size(std::int64_t p, int arity) {
  if (arity < 0) throw InvalidInput("arity must be >= 0");
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) {
    n *= static_cast<std::size_t>(p);
    if (n > (std::size_t{1} << 24)) throw InvalidInput("multivariate table too large");
  }
  return n;
}

Digit norm(std::int64_t v, std::int64_t p) { return ((v % p) + p) % p; }

int fold_exponent(int k, std::int64_t p) {
  if (k < 0) throw InvalidInput("negative exponent");
  if (k < p) return k;
  return static_cast<int>((k - 1) % (p - 1)) + 1;
}

// Apply a 1D map along one axis of a mixed-radix array.
template <typename Transform>
void along_axes(std::vector<Digit>& data, std::int64_t p, int arity, Transform transform) {
  const auto pp = static_cast<std::size_t>(p);
  std::size_t stride = 1;
  std::vector<Digit> line(pp);
  for (int axis = 0; axis < arity; ++axis) {
    for (std::size_t base = 0; base < data.size(); ++base) {
      if ((base / stride) % pp != 0) continue;
      for (std::size_t k = 0; k < pp; ++k) line[k] = data[base + k * stride];
      line = transform(line);
      for (std::size_t k = 0; k < pp; ++k) data[base + k * stride] = line[k];
    }
    stride *= pp;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t to_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidInput("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

MultivariatePoly::MultivariatePoly(std::int64_t p, int arity)
    : p_(p), arity_(arity), coeffs_(checked_size(p, arity), 0), table_(coeffs_.size(), 0) {
  if (!is_odd_prime(p)) throw InvalidInput("MultivariatePoly: p must be an odd prime");
}

MultivariatePoly MultivariatePoly::from_table(std::int64_t p, int arity, std::vector<Digit> table) {
  MultivariatePoly out(p, arity);
  if (table.size() != out.size()) throw InvalidInput("function table must have p^arity entries");
  for (Digit v : table) {
    if (v < 0 || v >= p) throw InvalidInput("function table entry outside [0, p)");
  }
  out.table_ = table;
  along_axes(table, p, arity, [p](const std::vector<Digit>& values) {
    auto coeffs = interpolate(values, p).coeffs();
    coeffs.resize(static_cast<std::size_t>(p), 0);
    return coeffs;
  });
  out.coeffs_ = std::move(table);
  return out;
}

MultivariatePoly MultivariatePoly::from_terms(std::int64_t p, int arity,
                                              std::span<const std::pair<Exponents, Digit>> terms) {
  MultivariatePoly out(p, arity);
  for (const auto& [exps, c] : terms) {
    if (exps.size() != static_cast<std::size_t>(arity)) throw InvalidInput("monomial arity mismatch");
    Exponents folded(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) folded[i] = fold_exponent(exps[i], p);
    auto& slot = out.coeffs_[out.index_of(folded)];
    slot = norm(slot + c, p);
  }
  std::vector<Digit> table = out.coeffs_;
  along_axes(table, p, arity, [p](const std::vector<Digit>& coeffs) { return UnivariateFn(p, coeffs).table(); });
  out.table_ = std::move(table);
  return out;
}

Exponents MultivariatePoly::exponents_of(std::size_t index) const {
  Exponents out(static_cast<std::size_t>(arity_));
  for (auto& k : out) {
    k = static_cast<int>(index % static_cast<std::size_t>(p_));
    index /= static_cast<std::size_t>(p_);
  }
  return out;
}

std::size_t MultivariatePoly::index_of(std::span<const int> exponents) const {
  if (exponents.size() != static_cast<std::size_t>(arity_)) throw InvalidInput("arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = exponents.size(); i-- > 0;) {
    if (exponents[i] < 0 || exponents[i] >= p_) throw InvalidInput("index component outside [0, p)");
    idx = idx * static_cast<std::size_t>(p_) + static_cast<std::size_t>(exponents[i]);
  }
  return idx;
}

Digit MultivariatePoly::operator()(std::span<const Digit> point) const {
  if (point.size() != static_cast<std::size_t>(arity_)) throw InvalidInput("evaluation arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = point.size(); i-- > 0;) {
    if (point[i] < 0 || point[i] >= p_) throw InvalidInput("evaluation point outside [0, p)");
    idx = idx * static_cast<std::size_t>(p_) + static_cast<std::size_t>(point[i]);
  }
  return table_[idx];
}

Digit MultivariatePoly::coefficient(std::span<const int> exponents) const {
  return coeffs_[index_of(exponents)];
}

std::vector<std::pair<Exponents, Digit>> MultivariatePoly::terms() const {
  std::vector<std::pair<Exponents, Digit>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) out.emplace_back(exponents_of(i), coeffs_[i]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  return out;
}

bool MultivariatePoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Digit c) { return c == 0; });
}

CompressingMap::CompressingMap(UnivariateFn g, MultivariatePoly eta) : g_(std::move(g)), eta_(std::move(eta)) {
  if (eta_.p() != g_.p()) throw InvalidInput("compressing map: g and eta use different primes");
  if (g_.degree() < 1 || g_.degree() > g_.p() - 1) throw InvalidInput("compressing map: need 1 <= deg g <= p-1");
}

Digit eval_map(const CompressingMap& m, std::span<const Digit> digits) {
  if (digits.size() != static_cast<std::size_t>(m.e())) throw InvalidInput("eval_map: digit count differs from e");
  const auto last = digits.back();
  if (last < 0 || last >= m.p()) throw InvalidInput("eval_map: digit outside [0, p)");
  return (m.g()(last) + m.eta()(digits.first(digits.size() - 1))) % m.p();
}

std::vector<Digit> compress_terms(const CompressingMap& m, const LRSequence& s) {
  if (s.context().p() != m.p() || s.context().e() != m.e()) {
    throw InvalidInput("compress: map and sequence use different (p, e)");
  }
  std::vector<Digit> out(s.period());
  DigitVector digits(static_cast<std::size_t>(m.e()));
  for (std::uint64_t t = 0; t < s.period(); ++t) {
    auto v = s.at(t);
    for (auto& d : digits) {
      d = v % m.p();
      v /= m.p();
    }
    out[t] = eval_map(m, digits);
  }
  return out;
}

LevelSequence compress_sequence(const CompressingMap& m, const LRSequence& s) {
  return {m.p(), least_period_prefix(compress_terms(m, s))};
}

MultivariatePoly psi_zw(Digit z, Digit w, std::int64_t p, int e) {
  if (e < 2) throw InvalidInput("psi_zw needs e >= 2");
  const int arity = e - 1;
  const Digit diff = norm(z - w, p);
  std::vector<std::pair<Exponents, Digit>> terms;
  terms.emplace_back(Exponents(static_cast<std::size_t>(arity), 0), norm(w, p));
  // (z-w) prod_i (1 - x_i^(p-1)): one monomial per subset of the variables.
  for (unsigned mask = 0; mask < (1U << arity); ++mask) {
    Exponents exps(static_cast<std::size_t>(arity), 0);
    int picked = 0;
    for (int i = 0; i < arity; ++i) {
      if (mask & (1U << i)) {
        exps[static_cast<std::size_t>(i)] = static_cast<int>(p - 1);
        ++picked;
      }
    }
    terms.emplace_back(std::move(exps), picked % 2 == 0 ? diff : norm(-diff, p));
  }
  return MultivariatePoly::from_terms(p, arity, terms);
}

MultivariatePoly psi_zW(Digit z, std::span<const Digit> W, std::span<const Digit> assignment, std::int64_t p,
                        int e) {
  if (e < 2) throw InvalidInput("psi_zW needs e >= 2");
  if (W.empty()) throw InvalidInput("psi_zW: W must be nonempty");
  const std::set<Digit> allowed(W.begin(), W.end());
  const auto size = checked_size(p, e - 1);
  if (assignment.size() != size - 1) throw InvalidInput("psi_zW: assignment must cover every nonzero tuple");
  std::vector<Digit> table(size);
  table[0] = norm(z, p);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (!allowed.contains(assignment[i])) {
      throw InvalidInput("psi_zW: assigned value " + std::to_string(assignment[i]) + " is not in W");
    }
    table[i + 1] = assignment[i];
  }
  return MultivariatePoly::from_table(p, e - 1, std::move(table));
}

std::vector<Digit> image_set(const UnivariateFn& g) {
  std::set<Digit> values;
  for (Digit x = 0; x < g.p(); ++x) values.insert(g(x));
  return {values.begin(), values.end()};
}

bool is_permutation(const UnivariateFn& g) { return image_set(g).size() == static_cast<std::size_t>(g.p()); }

Digit full_monomial_coefficient(const MultivariatePoly& eta) {
  return eta.coefficient(Exponents(static_cast<std::size_t>(eta.arity()), static_cast<int>(eta.p() - 1)));
}

Digit excluded_full_coefficient(std::int64_t p, int e) {
  const Digit half = (p + 1) / 2;
  return e % 2 == 0 ? half % p : norm(-half, p);
}

std::string format_multivariate(const MultivariatePoly& poly) {
  std::string out = "p=" + std::to_string(poly.p()) + " vars=" + std::to_string(poly.arity()) + ";";
  const auto terms = poly.terms();
  if (terms.empty()) return out + " 0";
  for (const auto& [exps, c] : terms) {
    out += " " + std::to_string(c) + ":(";
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(exps[i]);
    }
    out += ")";
  }
  return out;
}

MultivariatePoly parse_multivariate_terms(std::string_view body, std::int64_t p, int arity) {
  body = trim(body);
  if (body == "0") return MultivariatePoly(p, arity);
  std::vector<std::pair<Exponents, Digit>> terms;
  std::istringstream in{std::string(body)};
  std::string token;
  while (in >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos || token.size() < colon + 3 || token[colon + 1] != '(' || token.back() != ')') {
      throw InvalidInput("bad monomial '" + token + "', expected c:(e0,...)");
    }
    const auto coef = to_int(std::string_view(token).substr(0, colon));
    const auto inside = std::string_view(token).substr(colon + 2, token.size() - colon - 3);
    Exponents exps;
    if (!trim(inside).empty()) {
      for (auto v : parse_int_list(inside)) exps.push_back(static_cast<int>(v));
    }
    terms.emplace_back(std::move(exps), coef);
  }
  if (terms.empty()) throw InvalidInput("empty multivariate polynomial");
  return MultivariatePoly::from_terms(p, arity, terms);
}

MultivariatePoly parse_multivariate(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw InvalidInput("multivariate text needs 'p=<p> vars=<m>; ...'");
  std::istringstream header{std::string(text.substr(0, semi))};
  std::int64_t p = 0;
  std::int64_t vars = -1;
  std::string token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw InvalidInput("bad header token '" + token + "'");
    const auto key = token.substr(0, eq);
    const auto value = to_int(std::string_view(token).substr(eq + 1));
    if (key == "p") {
      p = value;
    } else if (key == "vars") {
      vars = value;
    } else {
      throw InvalidInput("unknown header key '" + key + "'");
    }
  }
  if (p == 0 || vars < 0) throw InvalidInput("multivariate header must give p and vars");
  return parse_multivariate_terms(text.substr(semi + 1), p, static_cast<int>(vars));
}

nlohmann::ordered_json multivariate_to_json(const MultivariatePoly& poly) {
  nlohmann::ordered_json j;
  j["p"] = poly.p();
  j["vars"] = poly.arity();
  j["table"] = poly.table();
  return j;
}

MultivariatePoly multivariate_from_json(const nlohmann::json& j) {
  try {
    return MultivariatePoly::from_table(j.at("p").get<std::int64_t>(), j.at("vars").get<int>(),
                                        j.at("table").get<std::vector<Digit>>());
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("multivariate JSON: ") + ex.what());
  }
}

UnivariateFn parse_univariate(std::string_view text, std::int64_t p) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw InvalidInput("empty polynomial in x");
  std::vector<Digit> coeffs;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw InvalidInput("dangling sign in '" + std::string(text) + "'");
    pos = end;

    const auto xpos = term.find('x');
    std::int64_t coef = 1;
    int power = 0;
    if (xpos == std::string::npos) {
      coef = to_int(term);
    } else {
      auto head = std::string_view(term).substr(0, xpos);
      if (!head.empty() && head.back() == '*') head.remove_suffix(1);
      if (!head.empty()) coef = to_int(head);
      const auto tail = std::string_view(term).substr(xpos + 1);
      if (tail.empty()) {
        power = 1;
      } else if (tail.front() == '^') {
        power = static_cast<int>(to_int(tail.substr(1)));
      } else {
        throw InvalidInput("bad term '" + term + "'");
      }
    }
    if (power < 0) throw InvalidInput("negative power in '" + term + "'");
    if (coeffs.size() <= static_cast<std::size_t>(power)) coeffs.resize(static_cast<std::size_t>(power) + 1, 0);
    coeffs[static_cast<std::size_t>(power)] = norm(coeffs[static_cast<std::size_t>(power)] + sign * coef, p);
  }
  return UnivariateFn(p, std::move(coeffs));
}

std::string format_univariate(const UnivariateFn& g) {
  if (g.degree() < 0) return "0";
  std::string out;
  for (int k = g.degree(); k >= 0; --k) {
    const auto c = g.coeff(k);
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (k == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

CompressingMap parse_map_spec(std::string_view spec, std::int64_t p, int e) {
  if (e < 2) throw InvalidInput("compressing maps need e >= 2");
  std::optional<UnivariateFn> g;
  MultivariatePoly eta(p, e - 1);
  while (!trim(spec).empty()) {
    const auto semi = spec.find(';');
    const auto part = trim(spec.substr(0, semi));
    spec = semi == std::string_view::npos ? std::string_view{} : spec.substr(semi + 1);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw InvalidInput("map spec part '" + std::string(part) + "' lacks '='");
    const auto key = trim(part.substr(0, eq));
    const auto value = trim(part.substr(eq + 1));
    if (key == "g") {
      g = parse_univariate(value, p);
    } else if (key == "eta") {
      if (value.starts_with("psi(") && value.ends_with(")")) {
        const auto args = parse_int_list(value.substr(4, value.size() - 5));
        if (args.size() != 2) throw InvalidInput("psi(z,w) takes two arguments");
        eta = psi_zw(norm(args[0], p), norm(args[1], p), p, e);
      } else if (value.starts_with("table@")) {
        const std::string path(value.substr(6));
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot open eta table '" + path + "'");
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& ex) {
          throw InvalidInput("eta table '" + path + "': " + ex.what());
        }
        eta = multivariate_from_json(j);
      } else {
        eta = parse_multivariate_terms(value, p, e - 1);
      }
      if (eta.p() != p || eta.arity() != e - 1) throw InvalidInput("eta must have p=" + std::to_string(p) +
                                                                   " and e-1 variables");
    } else {
      throw InvalidInput("unknown map spec key '" + std::string(key) + "'");
    }
  }
  if (!g) throw InvalidInput("map spec must define g");
  return {*g, eta};
}

}  // namespace residueseq
