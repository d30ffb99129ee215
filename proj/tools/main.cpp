// rk: batch front end for the kappa-real library.
//
// Exit codes: 0 success, 1 a report contains failures, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "expr.hpp"
#include "rk/codecs.hpp"
#include "rk/errors.hpp"
#include "rk/machine.hpp"
#include "rk/reductions.hpp"
#include "rk/surreal.hpp"
#include "rk/weihrauch.hpp"

#ifndef RK_PROGRAM_DIR
#define RK_PROGRAM_DIR "tools/programs"
#endif

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace rk::cli {
namespace {

struct Config {
  int budget_depth = 64;
  int budget_runs = 32;
  std::string name_budget = "w^2";
  std::size_t fuel = 100000;
  bool json = false;
  bool verbose = false;

  void apply() const {
    set_surreal_budget({budget_depth, budget_runs});
    const Ordinal b = Ordinal::parse(name_budget);
    if (b.is_zero()) throw ParseError("--name-budget must be positive");
    set_default_name_budget(b);
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Numerals may be any rational; everything else goes through the surreal
// expression grammar.
KRational parse_value(const std::string& text) {
  static const std::regex numeral(R"(\s*-?\d+(\.\d+|/\d+)?\s*)");
  if (std::regex_match(text, numeral)) return KRational(parse_rational(text));
  return KRational::from_sign_sequence(evaluate(text));
}

// A real name: a JSON file holding a serialized name, or a value literal.
Name real_input(const std::string& arg) {
  if (fs::is_regular_file(arg)) return Name::from_json(slurp(arg));
  return rk_cauchy_encode(parse_value(arg));
}

std::string show(const KRational& x) {
  if (auto q = x.as_rational()) return rational_str(*q);
  return x.str();
}

Name bits_name(const std::string& bits) {
  std::vector<Name::BitRun> runs;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("bit string '" + bits + "' may only contain 0 and 1");
    runs.push_back({c == '1', Ordinal(1)});
  }
  return Name::explicit_bits(std::move(runs), "0");
}

Name encode(const std::string& codec, const std::string& value) {
  if (codec == "raz") return raz_encode(evaluate(value));
  if (codec == "cut") return cut_encode(evaluate(value));
  if (codec == "kappa") return delta_kappa_encode(Ordinal::parse(value));
  if (codec == "kk") return delta_kk_encode(OrdinalFamily::parse(value));
  if (codec == "krational") return krational_encode(parse_value(value));
  if (codec == "cauchy") return rk_cauchy_encode(parse_value(value));
  if (codec == "veronese") return cauchy_to_veronese(rk_cauchy_encode(parse_value(value)));
  if (codec == "bits") return bits_name(value);
  throw ParseError("unknown codec '" + codec + "'");
}

std::string decode(const std::string& codec, const Name& p) {
  if (codec == "raz") return raz_decode(p).str();
  if (codec == "cut") return cut_decode(p).str();
  if (codec == "kappa") return delta_kappa_decode(p).str();
  if (codec == "kk") return delta_kk_decode(p).str();
  if (codec == "krational") return show(krational_decode(p));
  throw ParseError("codec '" + codec + "' has no decoder here");
}

const std::vector<std::string> kCodecs{"raz", "cut", "kappa", "kk", "krational", "cauchy", "veronese", "bits"};

int emit(const Config& cfg, const json& report, const std::string& text, bool ok = true) {
  if (cfg.json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
  return ok ? 0 : 1;
}

// Approximant table of a real name, checked by `accepts` at each index.
json approximant_table(const Name& p, std::size_t precision,
                       const std::function<bool(const KRational&, const Ordinal&)>& accepts, bool& ok,
                       std::string& text) {
  json rows = json::array();
  std::ostringstream out;
  for (std::size_t a = 0; a <= precision; ++a) {
    const Ordinal alpha(a);
    const KRational x = approximant(p, alpha);
    const bool good = accepts(x, alpha);
    ok = ok && good;
    rows.push_back({{"alpha", a}, {"approximant", show(x)}, {"ok", good}});
    out << a << "\t" << show(x) << (good ? "" : "\tFAIL") << "\n";
  }
  text += out.str();
  return rows;
}

// -------------------------------------------------------------------- eval

int cmd_eval(const Config& cfg, const std::string& expr) {
  const SignSequence x = evaluate(expr);
  const std::string value = describe_value(x);
  json report{{"expr", expr}, {"sign_sequence", x.str()}, {"length", x.length().str()}};
  if (!value.empty()) report["value"] = value;
  return emit(cfg, report, show_sequence(x) + (value.empty() ? "" : " = " + value) + "\n");
}

// -------------------------------------------------------------------- codecs

int cmd_encode(const Config& cfg, const std::string& codec, const std::string& value) {
  const Name p = encode(codec, value);
  std::cout << p.to_json() << "\n";
  (void)cfg;
  return 0;
}

int cmd_bits(const Config& cfg, const std::string& codec, const std::string& value, const std::string& file,
             std::size_t n) {
  const Name p = file.empty() ? encode(codec, value) : Name::from_json(slurp(file));
  json report{{"shape", shape_name(p.shape())}, {"budget", p.budget().str()}, {"prefix", p.prefix_bits(n)}};
  std::string text = p.prefix_bits(n) + "\n";
  json marks = json::object();
  for (const char* pos : {"w", "w+1", "w*2", "w*2+1", "w^2"}) {
    const Ordinal o = Ordinal::parse(pos);
    if (!(o < p.budget())) continue;
    const bool b = p.bit_at(o);
    marks[pos] = b ? 1 : 0;
    text += std::string(pos) + ": " + (b ? "1" : "0") + "\n";
  }
  report["landmarks"] = marks;
  return emit(cfg, report, text);
}

int cmd_convert(const Config& cfg, const std::string& from, const std::string& to, const std::string& value,
                const std::string& file) {
  const Name in = file.empty() ? encode(from, value) : Name::from_json(slurp(file));
  Name out = in;
  if (from == "raz" && to == "cut")
    out = sign_to_cut(in);
  else if (from == "cut" && to == "raz")
    out = cut_to_sign(in);
  else if (from != to)
    throw ParseError("no conversion from " + from + " to " + to + " (use raz or cut)");
  const std::string before = decode(from, in), after = decode(to, out);
  json report{{"from", from}, {"to", to}, {"input", before}, {"output", after}, {"same_value", before == after}};
  try {
    report["name"] = json::parse(out.to_json());
  } catch (const Error&) {
  }
  return emit(cfg, report, before + " -> " + after + "\n", before == after);
}

int cmd_reduce(const Config& cfg, const std::string& from, const std::string& to, const std::string& value,
               std::size_t precision) {
  const KRational x = parse_value(value);
  Name in = from == "cauchy" ? rk_cauchy_encode(x) : cauchy_to_veronese(rk_cauchy_encode(x));
  if (from != "cauchy" && from != "veronese") throw ParseError("unknown representation '" + from + "'");
  Name out = in;
  if (from == "cauchy" && to == "veronese")
    out = cauchy_to_veronese(in);
  else if (from == "veronese" && to == "cauchy")
    out = veronese_to_cauchy(in);
  else if (from != to)
    throw ParseError("unknown representation '" + to + "'");
  const Ordinal up_to(precision + 1);
  const CheckResult check = to == "cauchy" ? rk_cauchy_check(out, x, up_to) : rk_veronese_check(out, up_to);
  bool ok = check.ok;
  std::string text;
  json rows = approximant_table(
      out, precision, [](const KRational&, const Ordinal&) { return true; }, ok, text);
  if (!check.ok) text += "check failed at " + check.failed_at->str() + ": " + check.detail + "\n";
  json report{{"from", from}, {"to", to}, {"value", show(x)}, {"approximants", rows}, {"ok", ok}};
  if (!check.ok) report["detail"] = check.detail;
  return emit(cfg, report, text, ok);
}

int cmd_realize(const Config& cfg, const std::string& op, const std::vector<std::string>& args,
                std::size_t precision) {
  const std::size_t arity = op == "add" || op == "mul" ? 2 : 1;
  if (op != "add" && op != "mul" && op != "neg" && op != "inv") throw ParseError("unknown operation '" + op + "'");
  if (args.size() != arity) throw ParseError(op + " takes " + std::to_string(arity) + " argument(s)");
  std::vector<Name> in;
  std::vector<std::optional<KRational>> exact;
  for (auto& a : args) {
    in.push_back(real_input(a));
    if (fs::is_regular_file(a))
      exact.push_back(std::nullopt);
    else
      exact.push_back(parse_value(a));
  }
  Name out = op == "add"   ? rr_add(in[0], in[1])
             : op == "mul" ? rr_mul(in[0], in[1])
             : op == "neg" ? rr_neg(in[0])
                           : rr_inv(in[0], cfg.fuel);
  std::optional<KRational> want;
  if (std::all_of(exact.begin(), exact.end(), [](auto& e) { return e.has_value(); })) {
    if (op == "add") want = *exact[0] + *exact[1];
    if (op == "mul") want = *exact[0] * *exact[1];
    if (op == "neg") want = -*exact[0];
    if (op == "inv") want = exact[0]->reciprocal();
  }
  bool ok = true;
  std::string text;
  json rows = approximant_table(
      out, precision,
      [&](const KRational& x, const Ordinal& a) { return !want || within(x, *want, a); }, ok, text);
  json report{{"op", op}, {"approximants", rows}, {"ok", ok}};
  if (want) report["exact"] = show(*want);
  return emit(cfg, report, text, ok);
}

// -------------------------------------------------------------------- solvers

struct IvtArgs {
  std::string poly;
  std::string r = "0";
  std::size_t precision = 32;
  std::size_t stages = 40;
};

int cmd_ivt(const Config& cfg, const IvtArgs& a) {
  const Polynomial f = Polynomial::parse(a.poly);
  const SignSequence r = evaluate(a.r);
  const KRational rv = KRational::from_sign_sequence(r);
  const Name x = ivt_solve(polynomial_function(f), r, cfg.fuel, a.stages, a.precision);
  bool ok = true;
  std::string text;
  json rows = approximant_table(
      x, a.precision, [&](const KRational& v, const Ordinal& alpha) { return within(f(v), rv, alpha); }, ok, text);
  json report{{"poly", f.str()}, {"r", show(rv)}, {"approximants", rows}, {"ok", ok}};
  return emit(cfg, report, text, ok);
}

std::vector<SignSequence> read_family(const std::string& path) {
  std::vector<SignSequence> out;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(evaluate(line));
  }
  if (out.empty()) throw ParseError("'" + path + "' lists no values");
  return out;
}

int cmd_bi(const Config& cfg, const std::string& lower_file, const std::string& upper_file, std::size_t precision,
           std::size_t inspected) {
  const auto lower = read_family(lower_file), upper = read_family(upper_file);
  const BIInstance inst = BIInstance::from_lists(lower, upper, inspected);
  const Name x = bi_solve(inst, precision);
  bool ok = true;
  std::string text;
  json rows = approximant_table(
      x, precision,
      [&](const KRational& v, const Ordinal& alpha) {
        for (auto& l : lower)
          if (!below_plus(KRational::from_sign_sequence(l), v, alpha) && KRational::from_sign_sequence(l) != v)
            return false;
        for (auto& u : upper)
          if (!below_plus(v, KRational::from_sign_sequence(u), alpha) && KRational::from_sign_sequence(u) != v)
            return false;
        return true;
      },
      ok, text);
  json report{{"approximants", rows}, {"ok", ok}};
  return emit(cfg, report, text, ok);
}

// The spec file: {"reduction": "ivt-to-bi", "functions": ["x-1/2", ...],
// "indices": 33, "r": "0", "stages": 40}.
int cmd_check_reduction(const Config& cfg, const std::string& path) {
  json spec;
  try {
    spec = json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw ParseError(std::string("check-reduction: ") + e.what());
  }
  const std::string kind = spec.value("reduction", "ivt-to-bi");
  if (kind != "ivt-to-bi") throw ParseError("check-reduction: unknown reduction '" + kind + "'");
  const SignSequence r = evaluate(spec.value("r", "0"));
  const std::size_t stages = spec.value("stages", std::size_t{40});
  const std::size_t indices = spec.value("indices", std::size_t{33});
  std::vector<Sample> samples;
  for (auto& f : spec.at("functions")) {
    const std::string text = f.get<std::string>();
    samples.push_back({{fn_encode(polynomial_function(Polynomial::parse(text)))}, {}, text});
  }
  MultiFunction target = ivt_multifunction();
  if (!r.is_zero()) {
    const KRational rv = KRational::from_sign_sequence(r);
    target.label = "ivt at r = " + show(rv);
    target.accepts = [rv](const Sample& s, const KRational& x, const Ordinal& a) {
      const ContinuousFunctionName f = fn_decode(s.inputs[0]);
      return within(f(x), rv, a);
    };
  }
  const CheckReport rep = check_strong_reduction(realizer_identity(), realizer_ivt_to_bi(r, stages, cfg.fuel),
                                                 realizer_bi_solve(stages), target, samples,
                                                 finite_indices(indices));
  json report{{"reduction", kind}, {"ok", rep.ok}, {"checked", rep.checked}, {"failures", rep.failures}};
  std::string text = std::string(rep.ok ? "ok" : "FAILED") + ": " + std::to_string(rep.checked) + " checks\n";
  for (auto& f : rep.failures) text += "  " + f + "\n";
  return emit(cfg, report, text, rep.ok);
}

// -------------------------------------------------------------------- machine

struct MachineArgs {
  std::string program;
  std::string input;
  std::string oracle;
  std::size_t prefix = 8;
  std::size_t after = 0;
};

Program load_program(const std::string& arg) {
  const fs::path given(arg);
  for (const fs::path& candidate : {given, fs::path(RK_PROGRAM_DIR) / given,
                                    fs::path(RK_PROGRAM_DIR) / given.filename().replace_extension(".tm")}) {
    if (fs::is_regular_file(candidate)) return Program::parse(slurp(candidate.string()));
  }
  throw ParseError("no program '" + arg + "' (looked in . and " RK_PROGRAM_DIR ")");
}

MachineIO machine_io(const MachineArgs& m) {
  MachineIO io;
  if (!m.input.empty()) io.input = bits_name(m.input);
  if (!m.oracle.empty()) io.oracle = bits_name(m.oracle);
  return io;
}

int cmd_machine_run(const Config& cfg, const MachineArgs& m) {
  const Program p = load_program(m.program);
  const std::string out = t2_output(p, machine_io(m), m.prefix, cfg.fuel);
  return emit(cfg, json{{"program", m.program}, {"output", out}}, out + "\n");
}

int cmd_machine_trace(const Config& cfg, const MachineArgs& m) {
  const Program p = load_program(m.program);
  trace(p, machine_io(m), cfg.fuel, std::cout);
  return 0;
}

int cmd_machine_limit(const Config& cfg, const MachineArgs& m) {
  const Program p = load_program(m.program);
  const MachineIO io = machine_io(m);
  const Configuration at_limit = advance_to_limit(Configuration::initial(p), p, io, cfg.fuel);
  json report{{"limit", json::parse(at_limit.to_json(p))}};
  std::string text = at_limit.to_json(p) + "\n";
  if (m.after > 0) {
    const RunResult r = run_from(at_limit, p, io, m.after);
    report["after"] = json::parse(r.config.to_json(p));
    text += r.config.to_json(p) + "\n";
  }
  return emit(cfg, report, text);
}

}  // namespace
}  // namespace rk::cli

int main(int argc, char** argv) {
  using namespace rk::cli;
  CLI::App app{"rk: exact computations with kappa-rationals, names, reductions and kappa-machines"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--budget-depth", cfg.budget_depth, "surreal recursion depth")
      ->envname("BUDGET_DEPTH")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget-runs", cfg.budget_runs, "maximum runs in a surreal result")
      ->envname("BUDGET_RUNS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--name-budget", cfg.name_budget, "default name budget (an ordinal)")
      ->envname("NAME_BUDGET")
      ->capture_default_str();
  app.add_option("--fuel", cfg.fuel, "step or evaluation fuel")
      ->envname("FUEL")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--json", cfg.json, "print JSON reports")->envname("JSON");

  std::function<int()> action;

  std::string expr;
  auto* eval = app.add_subcommand("eval", "evaluate a surreal expression");
  eval->add_option("expr", expr)->required();
  eval->callback([&] { action = [&] { return cmd_eval(cfg, expr); }; });

  std::string codec = "raz", value, name_file;
  std::size_t nbits = 32;
  auto* enc = app.add_subcommand("encode", "print the JSON name of a value");
  enc->add_option("--codec", codec)->check(CLI::IsMember(kCodecs))->capture_default_str();
  enc->add_option("--value", value)->required();
  enc->callback([&] { action = [&] { return cmd_encode(cfg, codec, value); }; });

  auto* bits = app.add_subcommand("bits", "dump the first bits and landmark bits of a name");
  bits->add_option("--codec", codec)->check(CLI::IsMember(kCodecs))->capture_default_str();
  auto* bits_value = bits->add_option("--value", value);
  bits->add_option("--name", name_file, "JSON name file")->excludes(bits_value);
  bits->add_option("-n,--count", nbits)->capture_default_str();
  bits->callback([&] { action = [&] { return cmd_bits(cfg, codec, value, name_file, nbits); }; });

  std::string from, to;
  auto* conv = app.add_subcommand("convert", "convert between the Raz and Cut codes");
  conv->add_option("--from", from)->required()->check(CLI::IsMember({"raz", "cut"}));
  conv->add_option("--to", to)->required()->check(CLI::IsMember({"raz", "cut"}));
  auto* conv_value = conv->add_option("--value", value);
  conv->add_option("--name", name_file)->excludes(conv_value);
  conv->callback([&] { action = [&] { return cmd_convert(cfg, from, to, value, name_file); }; });

  std::size_t precision = 32;
  auto* red = app.add_subcommand("reduce", "convert between Cauchy and Veronese names");
  red->add_option("--from", from)->required()->check(CLI::IsMember({"cauchy", "veronese"}));
  red->add_option("--to", to)->required()->check(CLI::IsMember({"cauchy", "veronese"}));
  red->add_option("--value", value)->required();
  red->add_option("--precision", precision)->capture_default_str();
  red->callback([&] { action = [&] { return cmd_reduce(cfg, from, to, value, precision); }; });

  std::string op;
  std::vector<std::string> operands;
  auto* real = app.add_subcommand("realize", "apply a field realizer to real names");
  real->add_option("op", op)->required()->check(CLI::IsMember({"add", "neg", "mul", "inv"}));
  real->add_option("operands", operands, "JSON name files or value literals")->required();
  real->add_option("--precision", precision)->capture_default_str();
  real->callback([&] { action = [&] { return cmd_realize(cfg, op, operands, precision); }; });

  IvtArgs ivt_args;
  auto add_ivt = [&](CLI::App* parent) {
    auto* c = parent->add_subcommand("ivt", "find a point where a polynomial equals r on [0,1]");
    c->add_option("--poly", ivt_args.poly)->required();
    c->add_option("--r", ivt_args.r)->capture_default_str();
    c->add_option("--precision", ivt_args.precision)->capture_default_str();
    c->add_option("--stages", ivt_args.stages)->capture_default_str();
    c->callback([&] { action = [&] { return cmd_ivt(cfg, ivt_args); }; });
  };
  std::string lower_file, upper_file;
  std::size_t inspected = 64;
  auto add_bi = [&](CLI::App* parent) {
    auto* c = parent->add_subcommand("bi", "pick a point between a rising and a falling family");
    c->add_option("--lower", lower_file, "file with one value per line")->required();
    c->add_option("--upper", upper_file, "file with one value per line")->required();
    c->add_option("--precision", precision)->capture_default_str();
    c->add_option("--inspected", inspected)->capture_default_str();
    c->callback([&] { action = [&] { return cmd_bi(cfg, lower_file, upper_file, precision, inspected); }; });
  };
  add_ivt(&app);
  add_bi(&app);
  auto* solve = app.add_subcommand("solve", "solvers (ivt, bi)");
  solve->require_subcommand(1);
  add_ivt(solve);
  add_bi(solve);

  std::string spec_file;
  auto* chk = app.add_subcommand("check-reduction", "check a strong Weihrauch reduction on a corpus");
  chk->add_option("--spec", spec_file, "JSON description of the check")->required();
  chk->callback([&] { action = [&] { return cmd_check_reduction(cfg, spec_file); }; });

  MachineArgs margs;
  auto* mach = app.add_subcommand("machine", "run kappa-machine programs");
  mach->require_subcommand(1);
  auto machine_options = [&](CLI::App* c) {
    c->add_option("program", margs.program, "program file or name in the bundled directory")->required();
    c->add_option("--input", margs.input, "input bits, then 0s");
    c->add_option("--oracle", margs.oracle, "oracle bits, then 0s");
  };
  auto* mrun = mach->add_subcommand("run", "print the first output cells");
  machine_options(mrun);
  mrun->add_option("--prefix", margs.prefix)->capture_default_str();
  mrun->callback([&] { action = [&] { return cmd_machine_run(cfg, margs); }; });
  auto* mtrace = mach->add_subcommand("trace", "one JSON line per step, up to --fuel steps");
  machine_options(mtrace);
  mtrace->callback([&] { action = [&] { return cmd_machine_trace(cfg, margs); }; });
  auto* mlimit = mach->add_subcommand("limit", "configuration at stage w, found by cycle detection");
  machine_options(mlimit);
  mlimit->add_option("--after", margs.after, "also print the configuration this many steps past w");
  mlimit->callback([&] { action = [&] { return cmd_machine_limit(cfg, margs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    cfg.apply();
    return action();
  } catch (const rk::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  }
}
