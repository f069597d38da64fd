#include "polydisc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polydisc/serialize.hpp"

namespace polydisc {

namespace {

struct CommonOpts {
  std::string input_file;
  std::string inline_json;
  std::string space;  // "", "H" or "D"; overrides the JSON "space" field
  std::string format = "json";
  std::string output_file;
  std::uint64_t seed = 0;
  int samples = 100;
  double eps_cls = kDefaultClassifyTol;
  double eps_c = 5e-3;
  double eps_fix = 1e-6;
  double residual_tol = 1e-8;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
  if (with_input) {
    cmd->add_option("-i,--input", o.input_file, "input JSON file (\"-\" for stdin)");
    cmd->add_option("--json", o.inline_json, "inline input JSON");
  }
  cmd->add_option("--space", o.space, "coordinate interpretation of the input (H or D)")
      ->check(CLI::IsMember({"H", "D"}));
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd->add_option("-o,--output", o.output_file, "write the report to a file");
  cmd->add_option("--seed", o.seed, "seed for all sampling");
  cmd->add_option("--samples", o.samples, "sample count for residual checks")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--eps-cls", o.eps_cls, "parabolic trace tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--eps-c", o.eps_c, "divergence-rate threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--eps-fix", o.eps_fix, "fixed-point tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--residual-tol", o.residual_tol, "residual acceptance threshold")
      ->check(CLI::PositiveNumber);
}

Json load_input(const CommonOpts& o) {
  std::string text;
  if (!o.inline_json.empty()) {
    text = o.inline_json;
  } else if (o.input_file == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else if (!o.input_file.empty()) {
    std::ifstream in(o.input_file);
    if (!in) throw InputError("cannot open input file: " + o.input_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    throw InputError("no input given (use --input or --json)");
  }
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("input is not valid JSON");
  if (j.is_object() && !o.space.empty()) j["space"] = o.space;
  return j;
}

Json parse_json_arg(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError(std::string(what) + ": not valid JSON");
  return j;
}

void emit(const Json& j, const CommonOpts& o, std::ostream& out) {
  if (o.format == "csv")
    throw InputError("csv output is only available for the estimate subcommand");
  std::ostream* sink = &out;
  std::ofstream file;
  if (!o.output_file.empty()) {
    file.open(o.output_file);
    if (!file) throw InputError("cannot open output file: " + o.output_file);
    sink = &file;
  }
  if (o.format == "pretty")
    *sink << j.dump(2) << "\n";
  else
    *sink << j.dump() << "\n";
}

void emit_text(const std::string& text, const CommonOpts& o, std::ostream& out) {
  if (o.output_file.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output_file);
  if (!file) throw InputError("cannot open output file: " + o.output_file);
  file << text;
}

bool input_is_disc(const Json& j) {
  return j.is_object() && j.contains("space") && j.at("space") == "D";
}

// "0.5pi" -> 0.5*pi, plain numbers are radians.
double parse_angle(const std::string& text) {
  constexpr double pi = 3.14159265358979323846;
  std::string t = text;
  double factor = 1.0;
  if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
    factor = pi;
    t = t.substr(0, t.size() - 2);
    if (t.empty()) t = "1";
  }
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw InputError("cannot parse angle: " + text);
  }
  if (pos != t.size()) throw InputError("cannot parse angle: " + text);
  return v * factor;
}

struct MapChoice {
  std::string builtin;  // "", "intro", "remark5"
  std::string lambda_arg = "0.5pi";
  double alpha = 0.3;
};

HoloSelfMap resolve_map(const MapChoice& mc, const CommonOpts& o) {
  if (mc.builtin == "intro")
    return builtin_intro_example(std::polar(1.0, parse_angle(mc.lambda_arg)));
  if (mc.builtin == "remark5") return builtin_remark5_example(mc.alpha);
  if (!mc.builtin.empty()) throw InputError("unknown builtin map: " + mc.builtin);
  return selfmap_from_json(load_input(o));
}

int cmd_classify(const CommonOpts& o, std::ostream& out) {
  const PolydiscAuto t = auto_from_json(load_input(o));
  const CycleDecomposition dec = cycle_decompose(t);
  const AutoClassification cls = classify_decomposition(dec, o.eps_cls);
  Json rep{{"kind", to_string(cls.kind)},
           {"divergence_rate", cls.divergence_rate},
           {"dilation", cls.dilation}};
  Json cycles = Json::array();
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    Json coords = Json::array();
    for (std::size_t c : dec.blocks[b].coords) coords.push_back(c + 1);
    Json entry = to_json(cls.per_cycle[b]);
    entry["coords"] = coords;
    cycles.push_back(entry);
  }
  rep["per_cycle"] = cycles;
  emit(rep, o, out);
  return 0;
}

int cmd_cycles(const CommonOpts& o, std::ostream& out) {
  const PolydiscAuto t = auto_from_json(load_input(o));
  emit(to_json(cycle_decompose(t)), o, out);
  return 0;
}

int cmd_normalform(const CommonOpts& o, std::ostream& out) {
  const PolydiscAuto t = auto_from_json(load_input(o));
  const AutoNormalForm anf = normal_form_auto(t, o.eps_cls);
  Json rep = to_json(anf);
  Json residuals = Json::array();
  double worst = 0.0;
  for (std::size_t b = 0; b < anf.per_cycle.size(); ++b) {
    const double r = verify_conjugacy(anf.per_cycle[b], anf.decomposition.blocks[b].cycle,
                                      o.samples, o.seed);
    residuals.push_back(r);
    worst = std::max(worst, r);
  }
  rep["residuals"] = residuals;
  rep["samples"] = o.samples;
  rep["seed"] = o.seed;
  emit(rep, o, out);
  return worst > o.residual_tol ? 2 : 0;
}

int cmd_valiron(const CommonOpts& o, std::ostream& out) {
  const PolydiscAuto t = auto_from_json(load_input(o));
  const ValironFunction V = valiron_for_auto(t, o.eps_cls);
  const HoloSelfMap f = HoloSelfMap::from_auto(t);
  const ValironVerification ver = verify_valiron(
      [&V](const PolyPoint& z) { return V(z); }, f, V.lambda(), o.samples, o.seed);
  Json rep = to_json(V);
  rep["verification"] = to_json(ver);
  emit(rep, o, out);
  return ver.residual > o.residual_tol ? 2 : 0;
}

int cmd_abel(const CommonOpts& o, std::ostream& out) {
  const PolydiscAuto t = auto_from_json(load_input(o));
  const AbelFunction Th = abel_for_auto(t, o.eps_cls);
  const HoloSelfMap f = HoloSelfMap::from_auto(t);
  const AbelVerification ver = verify_abel([&Th](const PolyPoint& z) { return Th(z); }, f,
                                           Th.alpha(), o.samples, o.seed);
  Json rep = to_json(Th);
  rep["verification"] = to_json(ver);
  emit(rep, o, out);
  return ver.residual > o.residual_tol ? 2 : 0;
}

int cmd_distance(const CommonOpts& o, const std::string& z_arg, const std::string& w_arg,
                 std::ostream& out) {
  Json zj, wj;
  bool disc = o.space == "D";
  if (!z_arg.empty() && !w_arg.empty()) {
    zj = parse_json_arg(z_arg, "--z");
    wj = parse_json_arg(w_arg, "--w");
  } else {
    const Json in = load_input(o);
    disc = input_is_disc(in);
    zj = require_field(in, "z");
    wj = require_field(in, "w");
  }
  const PolyPoint z = polypoint_from_json(zj, disc);
  const PolyPoint w = polypoint_from_json(wj, disc);
  emit(Json{{"distance", dist_poly(z, w)}, {"q", z.dim()}}, o, out);
  return 0;
}

int cmd_estimate(const CommonOpts& o, const MapChoice& mc, const std::string& base_arg, int m,
                 bool full, std::ostream& out) {
  const HoloSelfMap f = resolve_map(mc, o);
  SelfMapClassifyOptions opts;
  opts.m = m;
  opts.eps_c = o.eps_c;
  opts.eps_fix = o.eps_fix;
  if (!base_arg.empty()) {
    const bool disc = o.space == "D";
    opts.base = polypoint_from_json(parse_json_arg(base_arg, "--base"), disc);
  }
  const SelfMapClassification rep = classify_selfmap(f, opts);
  if (o.format == "csv") {
    emit_text(orbit_stats_csv(rep.stats), o, out);
    return 0;
  }
  Json j = to_json(rep, full);
  j["map"] = f.description();
  emit(j, o, out);
  return 0;
}

struct VerifyArgs {
  std::string kind;
  std::string function_json;
  std::string tau_json;
  std::string intertwiner_json;
  double mu = 0.0;       // 0 = take from the function
  int alpha = 0;         // 0 = take from the function
};

PolyMap intertwiner_from_json(const Json& j) {
  const Json& select = require_field(j, "select");
  const Json& lfts = require_field(j, "lfts");
  if (!select.is_array() || !lfts.is_array() || select.size() != lfts.size() || select.empty())
    throw InputError("intertwiner: select and lfts must be equal-length non-empty arrays");
  std::vector<std::size_t> sel;
  for (const auto& s : select) {
    const long long v = s.get<long long>();
    if (v < 1) throw InputError("intertwiner: select entries are 1-based");
    sel.push_back(static_cast<std::size_t>(v - 1));
  }
  std::vector<std::array<Complex, 4>> coeffs;
  for (const auto& m : lfts)
    coeffs.push_back({complex_from_json(require_field(m, "a")),
                      complex_from_json(require_field(m, "b")),
                      complex_from_json(require_field(m, "c")),
                      complex_from_json(require_field(m, "d"))});
  return [sel, coeffs](const PolyPoint& z) {
    std::vector<Complex> w(sel.size());
    for (std::size_t t = 0; t < sel.size(); ++t) {
      if (sel[t] >= z.dim()) throw InputError("intertwiner: select index out of range");
      const auto& m = coeffs[t];
      w[t] = (m[0] * z[sel[t]] + m[1]) / (m[2] * z[sel[t]] + m[3]);
      if (!(w[t].imag() > 0.0))
        throw DomainViolation("intertwiner image left the upper half-plane");
    }
    return PolyPoint(std::move(w));
  };
}

int cmd_verify(const CommonOpts& o, const VerifyArgs& va, const MapChoice& mc,
               std::ostream& out) {
  const HoloSelfMap f = resolve_map(mc, o);
  if (va.kind == "valiron") {
    const ValironFunction V = valiron_from_json(parse_json_arg(va.function_json, "--function"));
    const double mu = va.mu > 0.0 ? va.mu : V.lambda();
    const ValironVerification ver = verify_valiron(
        [&V](const PolyPoint& z) { return V(z); }, f, mu, o.samples, o.seed);
    emit(to_json(ver), o, out);
    return ver.residual > o.residual_tol ? 2 : 0;
  }
  if (va.kind == "abel") {
    const AbelFunction Th = abel_from_json(parse_json_arg(va.function_json, "--function"));
    const int alpha = va.alpha != 0 ? va.alpha : Th.alpha();
    const AbelVerification ver = verify_abel([&Th](const PolyPoint& z) { return Th(z); }, f,
                                             alpha, o.samples, o.seed);
    emit(to_json(ver), o, out);
    return ver.residual > o.residual_tol ? 2 : 0;
  }
  if (va.kind == "semimodel") {
    SemiModelTriple sm{f.dim(), intertwiner_from_json(parse_json_arg(va.intertwiner_json,
                                                                     "--intertwiner")),
                       auto_from_json(parse_json_arg(va.tau_json, "--tau"))};
    const SemiModelVerification ver = verify_semimodel(sm, f, o.samples, o.seed);
    emit(to_json(ver), o, out);
    return ver.residual > o.residual_tol ? 2 : 0;
  }
  throw InputError("verify: unknown kind \"" + va.kind + "\"");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"classification, normal forms and functional equations for polydisc self-maps"};
  app.require_subcommand(1);

  CommonOpts o;
  MapChoice mc;
  VerifyArgs va;
  std::string z_arg, w_arg, base_arg;
  int m = 2000;
  bool full = false;

  CLI::App* classify = app.add_subcommand("classify", "classify an automorphism of H^q");
  add_common(classify, o);
  CLI::App* cycles = app.add_subcommand("cycles", "cycle decomposition of an automorphism");
  add_common(cycles, o);
  CLI::App* normalform =
      app.add_subcommand("normalform", "canonical models and conjugators per cycle");
  add_common(normalform, o);
  CLI::App* valiron =
      app.add_subcommand("valiron", "construct and verify a Valiron function");
  add_common(valiron, o);
  CLI::App* abel = app.add_subcommand("abel", "construct and verify an Abel function");
  add_common(abel, o);

  CLI::App* distance = app.add_subcommand("distance", "invariant distance between points");
  add_common(distance, o);
  distance->add_option("--z", z_arg, "first point as JSON [[re,im],...]");
  distance->add_option("--w", w_arg, "second point as JSON [[re,im],...]");

  CLI::App* estimate =
      app.add_subcommand("estimate", "orbit statistics and heuristic classification");
  add_common(estimate, o);
  estimate->add_option("--map", mc.builtin, "builtin map: intro | remark5");
  estimate->add_option("--lambda-arg", mc.lambda_arg,
                       "intro: argument of the unimodular factor (e.g. 0.5pi)");
  estimate->add_option("--alpha", mc.alpha, "remark5: growth exponent alpha > 0");
  estimate->add_option("--base", base_arg, "base point as JSON [[re,im],...]");
  estimate->add_option("-m,--horizon", m, "orbit horizon")->check(CLI::PositiveNumber);
  estimate->add_flag("--full-sequences", full, "include full distance sequences in JSON");

  CLI::App* verify = app.add_subcommand("verify", "verify a functional-equation identity");
  add_common(verify, o);
  verify->add_option("--kind", va.kind, "valiron | abel | semimodel")->required();
  verify->add_option("--function", va.function_json, "function JSON (valiron/abel)");
  verify->add_option("--mu", va.mu, "claimed dilation (valiron; default from function)");
  verify->add_option("--alpha-sign", va.alpha, "claimed alpha (abel; default from function)");
  verify->add_option("--tau", va.tau_json, "base automorphism JSON (semimodel)");
  verify->add_option("--intertwiner", va.intertwiner_json,
                     "intertwiner spec JSON (semimodel)");
  verify->add_option("--map", mc.builtin, "builtin map: intro | remark5");
  verify->add_option("--lambda-arg", mc.lambda_arg, "intro parameter");
  verify->add_option("--alpha", mc.alpha, "remark5 parameter");

  std::vector<const char*> argv;
  argv.push_back("polydisc");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (classify->parsed()) return cmd_classify(o, out);
    if (cycles->parsed()) return cmd_cycles(o, out);
    if (normalform->parsed()) return cmd_normalform(o, out);
    if (valiron->parsed()) return cmd_valiron(o, out);
    if (abel->parsed()) return cmd_abel(o, out);
    if (distance->parsed()) return cmd_distance(o, z_arg, w_arg, out);
    if (estimate->parsed()) return cmd_estimate(o, mc, base_arg, m, full, out);
    if (verify->parsed()) return cmd_verify(o, va, mc, out);
  } catch (const DomainViolation& e) {
    err << "domain violation: " << e.what() << "\n";
    return 2;
  } catch (const OrbitOverflow& e) {
    err << "overflow: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const KindError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace polydisc
