#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "residueseq/suites.hpp"

namespace residueseq::cli {

namespace {

struct Options {
  // ring and polynomial
  std::string p_list;
  std::string e_list;
  int n = 2;
  std::string f;
  std::string poly;
  bool strong = false;
  // sequences
  std::string init;
  std::string map;
  // verify
  std::string suite;
  std::optional<int> deg_g;
  std::string g;
  std::string eta;
  bool all_eta = false;
  bool all_w = false;
  std::optional<Digit> s;
  std::optional<Digit> k;
  std::optional<Digit> lambda;
  std::uint64_t states = 10;
  // shared
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  std::string out_path;
  std::string format = "json";
  bool timing = false;
};

std::vector<std::int64_t> parse_int_list_or_empty(const std::string& text) {
  return text.empty() ? std::vector<std::int64_t>{} : parse_int_list(text);
}

std::uint64_t effective_budget(const Options& o) {
  if (o.budget) return *o.budget;
  if (const char* env = std::getenv("RESIDUESEQ_BUDGET")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size() && value > 0) return value;
    } catch (const std::exception&) {
    }
    throw InvalidInput("RESIDUESEQ_BUDGET must be a positive integer");
  }
  return kDefaultBudget;
}

std::int64_t single_int(const std::string& list, const char* flag) {
  const auto values = parse_int_list(list);
  if (values.size() != 1) throw InvalidInput(std::string(flag) + " takes a single value here");
  return values.front();
}

// The ring polynomial from --poly, or from --p/--e/--f.
RingPolynomial polynomial_from(const Options& o) {
  if (!o.poly.empty()) return parse_polynomial(o.poly).poly;
  if (o.p_list.empty() || o.e_list.empty() || o.f.empty()) throw InvalidInput("need --poly or --p, --e and --f");
  const RingContext ctx(single_int(o.p_list, "--p"), static_cast<int>(single_int(o.e_list, "--e")));
  return RingPolynomial(ctx, parse_int_list(o.f));
}

void check_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const auto* name : allowed) {
    if (o.format == name) return;
  }
  throw InvalidInput("unsupported --format '" + o.format + "' for this command");
}

std::string certificate_text(const PrimitivityCertificate& cert) {
  std::ostringstream os;
  os << format_polynomial(cert.f) << "\n"
     << "period=" << cert.period << " bound=" << ward_bound(cert.context(), cert.n()) << "\n"
     << "primitive=" << (cert.primitive ? "true" : "false") << "\n";
  if (cert.primitive) {
    os << format_polynomial(cert.h.front(), "h1") << "\n"
       << format_polynomial(*cert.h_f, "h_f") << "\n"
       << "strongly_primitive=" << (cert.strongly_primitive ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string render_certificate(const PrimitivityCertificate& cert, const Options& o) {
  check_format(o, {"json", "text"});
  if (o.format == "text") return certificate_text(cert);
  return certificate_to_json(cert).dump(2) + "\n";
}

int cmd_primitive_check(const Options& o, std::string& text) {
  const auto cert = certify(polynomial_from(o), o.seed);
  text = render_certificate(cert, o);
  return cert.primitive && (!o.strong || cert.strongly_primitive) ? kExitHolds : kExitFails;
}

int cmd_primitive_find(const Options& o, std::string& text) {
  if (o.p_list.empty() || o.e_list.empty()) throw InvalidInput("primitive find needs --p and --e");
  const RingContext ctx(single_int(o.p_list, "--p"), static_cast<int>(single_int(o.e_list, "--e")));
  if (o.n < 1) throw InvalidInput("--n must be positive");
  const auto found = find_primitive(ctx, o.n, {.strongly = o.strong, .budget = effective_budget(o), .seed = o.seed});
  if (!found) {
    text = "no " + std::string(o.strong ? "strongly " : "") + "primitive polynomial found\n";
    return kExitFails;
  }
  text = render_certificate(certify(*found, o.seed), o);
  return kExitHolds;
}

enum class SeqKind { gen, alpha, compress };

int cmd_seq(SeqKind kind, const Options& o, std::string& text) {
  check_format(o, {"csv", "json"});
  const auto f = polynomial_from(o);
  if (o.init.empty()) throw InvalidInput("seq needs --init");
  const auto init = parse_int_list(o.init);
  const auto s = generate(f, init);
  std::vector<CsvColumn> extra;
  std::optional<LevelSequence> alpha;
  std::optional<LevelSequence> phi;
  if (kind == SeqKind::alpha) {
    const auto cert = certify(f, o.seed);
    if (!cert.primitive) throw InvalidInput("seq alpha needs a primitive polynomial");
    alpha = alpha_sequence(s, cert);
    extra.push_back({"alpha", &*alpha});
  }
  if (kind == SeqKind::compress) {
    if (o.map.empty()) throw InvalidInput("seq compress needs --map");
    const auto m = parse_map_spec(o.map, f.context().p(), f.context().e());
    phi = LevelSequence(f.context().p(), compress_terms(m, s));
    extra.push_back({"phi", &*phi});
  }
  if (o.format == "csv") {
    text = sequence_csv(s, extra);
  } else {
    nlohmann::ordered_json j;
    j["f"] = format_polynomial(f);
    j["init"] = init;
    j["period"] = s.period();
    j["a"] = s.terms();
    for (const auto& col : extra) {
      std::vector<Digit> values;
      for (std::uint64_t t = 0; t < s.period(); ++t) values.push_back(col.values->at(t));
      j[col.name] = values;
    }
    text = j.dump(2) + "\n";
  }
  return kExitHolds;
}

int cmd_verify(const Options& o, std::string& text) {
  check_format(o, {"json", "text"});
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw InvalidInput("unknown suite '" + o.suite + "'");
  }
  SuiteConfig config;
  config.primes = parse_int_list_or_empty(o.p_list);
  for (auto e : parse_int_list_or_empty(o.e_list)) config.exponents.push_back(static_cast<int>(e));
  config.n = o.n;
  if (!o.f.empty()) {
    if (config.exponents.size() != 1 || config.primes.size() != 1) {
      throw InvalidInput("--f needs exactly one --p and one --e");
    }
    config.f = parse_int_list(o.f);
  }
  config.deg_g = o.deg_g;
  if (!o.g.empty()) config.g = o.g;
  if (!o.eta.empty()) config.eta = o.eta;
  config.all_eta = o.all_eta;
  config.all_w = o.all_w;
  config.s = o.s;
  config.k = o.k;
  config.lambda = o.lambda;
  config.states = o.states;
  config.seed = o.seed;
  config.budget = effective_budget(o);
  config.timing = o.timing;

  const auto reports = run_suite(o.suite, config);
  bool all_hold = true;
  if (o.format == "json") {
    auto array = nlohmann::ordered_json::array();
    for (const auto& r : reports) array.push_back(report_to_json(r));
    text = array.dump(2) + "\n";
  } else {
    for (const auto& r : reports) text += report_to_text(r) + "\n";
  }
  for (const auto& r : reports) all_hold &= r.holds();
  return all_hold ? kExitHolds : kExitFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primitive sequences over Z/p^e and their compressing maps", "residueseq"};
  app.require_subcommand(1);
  Options o;

  auto add_ring = [&](CLI::App* cmd, bool lists) {
    cmd->add_option("--p", o.p_list, lists ? "odd prime(s), comma-separated" : "odd prime");
    cmd->add_option("--e", o.e_list, lists ? "exponent(s), comma-separated" : "exponent");
    cmd->add_option("--n", o.n, "degree of f");
    cmd->add_option("--f", o.f, "coefficients of f, constant first, leading 1 included");
    cmd->add_option("--seed", o.seed, "seed for every random choice");
    cmd->add_option("--budget", o.budget, "elementary-check budget");
    cmd->add_option("--out", o.out_path, "write output to this file");
  };

  auto* primitive = app.add_subcommand("primitive", "check or search for primitive polynomials");
  primitive->require_subcommand(1);
  for (auto* cmd : {primitive->add_subcommand("check", "certify a polynomial"),
                    primitive->add_subcommand("find", "search for a primitive polynomial")}) {
    add_ring(cmd, false);
    cmd->add_option("--poly", o.poly, "polynomial text, e.g. 'p=3 e=2; f=8,8,1'");
    cmd->add_flag("--strong", o.strong, "require strong primitivity");
    cmd->add_option("--format", o.format, "json | text");
  }

  auto* seq = app.add_subcommand("seq", "dump one period of a sequence");
  seq->require_subcommand(1);
  for (auto* cmd : {seq->add_subcommand("gen", "the sequence and its levels"),
                    seq->add_subcommand("alpha", "with the alpha column"),
                    seq->add_subcommand("compress", "with the compressed column")}) {
    add_ring(cmd, false);
    cmd->add_option("--poly", o.poly, "polynomial text");
    cmd->add_option("--init", o.init, "initial state, comma-separated")->required();
    cmd->add_option("--map", o.map, "map spec 'g=<poly>; eta=<spec>'");
    cmd->add_option("--format", o.format, "csv | json");
  }

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_ring(verify, true);
  verify->add_option("suite", o.suite, "suite name")->required();
  verify->add_option("--deg-g", o.deg_g, "use g = x^d");
  verify->add_option("--g", o.g, "g as a polynomial in x");
  verify->add_option("--eta", o.eta, "eta spec");
  verify->add_flag("--all-eta", o.all_eta, "enumerate every eta");
  verify->add_flag("--all-w", o.all_w, "report counts for every w");
  verify->add_option("--s", o.s, "target symbol");
  verify->add_option("--k", o.k, "alpha value");
  verify->add_option("--lambda", o.lambda, "scaling factor");
  verify->add_option("--states", o.states, "number of seeded initial states");
  verify->add_option("--format", o.format, "json | text");
  verify->add_flag("--timing", o.timing, "record wall-clock time in reports");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  std::string text;
  int status = kExitHolds;
  try {
    if (primitive->parsed()) {
      status = primitive->get_subcommand("check")->parsed() ? cmd_primitive_check(o, text) : cmd_primitive_find(o, text);
    } else if (seq->parsed()) {
      if (seq->get_subcommand("alpha")->parsed()) {
        o.format = o.format == "json" && !seq->get_subcommand("alpha")->count("--format") ? "csv" : o.format;
        status = cmd_seq(SeqKind::alpha, o, text);
      } else {
        auto* cmd = seq->get_subcommand("gen")->parsed() ? seq->get_subcommand("gen") : seq->get_subcommand("compress");
        if (!cmd->count("--format")) o.format = "csv";
        status = cmd_seq(cmd->get_name() == "gen" ? SeqKind::gen : SeqKind::compress, o, text);
      }
    } else {
      status = cmd_verify(o, text);
    }
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << o.out_path << "\n";
      return kExitInvalid;
    }
    file << text;
  }
  return status;
}

}  // namespace residueseq::cli
