#include "evenodd/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "evenodd/io.hpp"

namespace evenodd::cli {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid number for " + key + ": '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid integer for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParseError("invalid boolean for " + key + ": '" + value + "'");
}

std::string pipeline_label(const RunConfig& cfg) {
  if (cfg.mode == Mode::Ideal) return "ideal";
  return std::string("pulse/") + std::string(to_string(cfg.frame));
}

std::string init_label(const RunConfig& cfg) {
  switch (cfg.init) {
    case InitKind::Thermal:
      return "thermal";
    case InitKind::Pseudopure:
      return "pseudopure";
    case InitKind::Custom:
      break;
  }
  const InitialState s = resolve_init(cfg);
  return "custom(k1=" + format_number(s.k1) + ",k2=" + format_number(s.k2) + ")";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open output file '" + path + "'");
  f << content;
}

std::string summarize(const CoherenceProfile& p) {
  std::ostringstream s;
  s << "p0=" << format_number(p.at(0)) << " |p|=1:" << format_number(p.single_quantum())
    << " |p|=2:" << format_number(p.double_quantum());
  return s.str();
}

// Fixed plotting scale: the largest line of the thermal even reference run.
double reference_scale(const RunConfig& cfg) {
  const Mat4d rho = run_sequence(BoolFn2::from_code(0), InitialState::thermal());
  double scale = 0.0;
  for (const auto& l : analytic_lines(rho, cfg.spin)) scale = std::max(scale, std::abs(l.amplitude));
  return scale;
}

void stick_plot(std::ostream& out, const LineSpectrum& lines, double scale) {
  constexpr int kHalf = 20;
  out << "stick spectrum (amplitude scale " << format_number(scale) << " per " << kHalf
      << " columns)\n";
  if (lines.empty()) {
    out << "  no lines above threshold\n";
    return;
  }
  for (const auto& l : lines) {
    const double a = l.amplitude.real();
    const int n = std::clamp(int(std::lround(std::abs(a) / scale * kHalf)), 0, kHalf);
    std::string left(std::size_t(kHalf), ' '), right(std::size_t(kHalf), ' ');
    if (a < 0) std::fill(left.end() - n, left.end(), '#');
    else std::fill(right.begin(), right.begin() + n, '#');
    out << "  " << std::fixed << std::setprecision(3) << std::setw(10) << l.frequency_hz
        << " Hz  " << std::showpos << std::setprecision(6) << a << std::noshowpos << "  " << left
        << '|' << right << '\n';
  }
  out.unsetf(std::ios::fixed);
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "function") {
    cfg.function = BoolFn2::parse(value);
  } else if (key == "index") {
    cfg.index = parse_int(key, value);
    catalog_entry(*cfg.index);
  } else if (key == "init") {
    if (value == "thermal") cfg.init = InitKind::Thermal;
    else if (value == "pseudopure") cfg.init = InitKind::Pseudopure;
    else if (value == "custom") cfg.init = InitKind::Custom;
    else throw ParseError("unknown init '" + value + "' (expected thermal|pseudopure|custom)");
  } else if (key == "k1") {
    cfg.k1 = parse_double(key, value);
  } else if (key == "k2") {
    cfg.k2 = parse_double(key, value);
  } else if (key == "mode") {
    if (value == "ideal") cfg.mode = Mode::Ideal;
    else if (value == "pulse") cfg.mode = Mode::Pulse;
    else throw ParseError("unknown mode '" + value + "' (expected ideal|pulse)");
  } else if (key == "frame") {
    cfg.frame = parse_frame(value);
  } else if (key == "nu1") {
    cfg.spin.nu1 = parse_double(key, value);
  } else if (key == "nu2") {
    cfg.spin.nu2 = parse_double(key, value);
  } else if (key == "j") {
    cfg.spin.j = parse_double(key, value);
    if (cfg.spin.j < 0) throw ParseError("j must be non-negative");
  } else if (key == "dwell") {
    cfg.acquisition.dwell = parse_double(key, value);
  } else if (key == "npoints") {
    cfg.acquisition.npoints = parse_int(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "json") {
    cfg.json = parse_bool(key, value);
  } else if (key == "qubit1_label") {
    cfg.qubit1_label = value;
  } else if (key == "qubit2_label") {
    cfg.qubit2_label = value;
  } else {
    throw ParseError("unknown setting '" + key + "'");
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  for (const auto& [key, value] : parse_config(in)) apply_setting(cfg, key, value);
}

InitialState resolve_init(const RunConfig& cfg) {
  switch (cfg.init) {
    case InitKind::Thermal:
      return InitialState::thermal();
    case InitKind::Pseudopure:
      return InitialState::pseudopure();
    case InitKind::Custom:
      break;
  }
  if (!cfg.k1 || !cfg.k2) throw ParseError("--init custom requires both --k1 and --k2");
  if (*cfg.k1 == 0.0 && *cfg.k2 == 0.0) throw ParseError("k1 and k2 cannot both be zero");
  return {*cfg.k1, *cfg.k2};
}

BoolFn2 resolve_function(const RunConfig& cfg) {
  if (cfg.function && cfg.index) throw ParseError("give either --function or --index, not both");
  if (cfg.function) return *cfg.function;
  if (cfg.index) return function_for(catalog_entry(*cfg.index));
  throw ParseError("a function is required (--function 0bxxxx or --index 1..16)");
}

Mat4d simulate(BoolFn2 f, const RunConfig& cfg) {
  const InitialState init = resolve_init(cfg);
  if (cfg.mode == Mode::Ideal) return run_sequence(f, init);
  return run_pulse_algorithm(f, init, cfg.spin, {cfg.frame, true});
}

ClassificationRecord make_record(BoolFn2 f, const RunConfig& cfg) {
  ClassificationRecord r;
  r.function = f;
  r.catalog_index = catalog_entry_for(f).index;
  r.subclass = subclass(f);
  const ClassicalResult classical = classical_classify(f);
  r.classical = classical.parity;
  r.classical_calls = classical.calls;
  if (cfg.mode == Mode::Ideal) {
    const QuantumResult q = classify_quantum(f, resolve_init(cfg), cfg.spin);
    r.quantum = q.parity;
    r.quantum_calls = q.oracle_calls;
    r.profile = decompose(run_sequence(f, resolve_init(cfg)));
  } else {
    const Mat4d rho = simulate(f, cfg);
    r.quantum = classify_from_readout(rho, cfg.spin);
    const GateWord word = canonical_word();
    r.quantum_calls = int(std::count(word.begin(), word.end(), Gate::Oracle));
    r.profile = decompose(rho);
  }
  r.zeta = zeta_of(f);
  r.separable = is_separable(encode_uf<double>(f));
  return r;
}

nlohmann::ordered_json to_json(const ClassificationRecord& r) {
  return {
      {"function", r.function.to_string()},
      {"catalog_index", r.catalog_index},
      {"subclass", {r.subclass.ones, r.subclass.zeros}},
      {"parity_classical", std::string(to_string(r.classical))},
      {"parity_quantum", std::string(to_string(r.quantum))},
      {"oracle_calls", {{"classical", r.classical_calls}, {"quantum", r.quantum_calls}}},
      {"zeta", r.zeta},
      {"separable", r.separable},
      {"coherence",
       {{"p0", r.profile.at(0)},
        {"single_quantum", r.profile.single_quantum()},
        {"double_quantum", r.profile.double_quantum()}}},
  };
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const ClassificationRecord r = make_record(resolve_function(cfg), cfg);
  out << "function       " << r.function.to_string() << "  (U" << r.catalog_index << ")\n"
      << "subclass       " << to_string(r.subclass) << '\n'
      << "U_f            " << (r.separable ? "separable" : "entangling") << '\n'
      << "classical      " << to_string(r.classical) << "  (" << r.classical_calls
      << " calls)\n"
      << "quantum        " << to_string(r.quantum) << "  (" << r.quantum_calls << " calls, "
      << pipeline_label(cfg) << ", " << init_label(cfg) << ")\n"
      << "zeta           " << std::showpos << r.zeta << std::noshowpos << '\n'
      << "coherence      " << summarize(r.profile) << '\n';
  const std::string json = to_json(r).dump(2) + "\n";
  if (cfg.json) out << json;
  if (!cfg.out.empty()) write_file(cfg.out, json);
  return r.classical == r.quantum ? kExitOk : kExitFailure;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<ClassificationRecord> records;
  for (BoolFn2 f : BoolFn2::all()) records.push_back(make_record(f, cfg));
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.catalog_index < b.catalog_index; });

  int even = 0, separable = 0, disagreements = 0;
  out << "pipeline " << pipeline_label(cfg) << ", init " << init_label(cfg) << '\n';
  out << "gate  function  subclass  classical  quantum  calls(c/q)  zeta  U_f\n";
  for (const auto& r : records) {
    out << std::left << std::setw(6) << ("U" + std::to_string(r.catalog_index))
        << std::setw(10) << r.function.to_string() << std::setw(10) << to_string(r.subclass)
        << std::setw(11) << to_string(r.classical) << std::setw(9) << to_string(r.quantum)
        << std::setw(12)
        << (std::to_string(r.classical_calls) + "/" + std::to_string(r.quantum_calls))
        << std::setw(6) << (r.zeta > 0 ? "+1" : "-1")
        << (r.separable ? "separable" : "entangling") << std::right << '\n';
    even += r.quantum == Parity::Even;
    separable += r.separable;
    disagreements += r.quantum != r.classical;
  }
  out << "summary: " << even << " even / " << (16 - even) << " odd, " << separable
      << " separable / " << (16 - separable) << " entangling, " << disagreements
      << " disagreements\n";

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  if (cfg.json) out << arr.dump(2) << '\n';
  if (!cfg.out.empty()) write_file(cfg.out, arr.dump(2) + "\n");

  if (disagreements > 0) {
    err << "error: quantum and classical parity disagree for " << disagreements
        << " function(s)\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_compile(const std::string& gate, const RunConfig& cfg, std::ostream& out,
                std::ostream&) {
  const GateSymbol symbol = GateSymbol::parse(gate);
  const CompilationReport report = verify_compilation(symbol, cfg.spin, {cfg.frame, true});
  PulseProgram program = report.program;
  program.metadata.qubit1_label = cfg.qubit1_label;
  program.metadata.qubit2_label = cfg.qubit2_label;

  out << symbol.name() << " (" << to_string(cfg.frame) << " frame, J = "
      << format_number(cfg.spin.j) << " Hz)\n";
  out << describe(program);
  out << "verified: residual " << format_number(report.residual) << ", global phase "
      << format_number(report.achieved_phase) << " rad"
      << (report.frame_flip_applied ? ", frame flip recorded" : "") << '\n';

  const std::string json = to_json(program).dump(2) + "\n";
  if (cfg.json) out << json;
  if (!cfg.out.empty()) write_file(cfg.out, json);
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, const SpectrumOptions& options, std::ostream& out,
                 std::ostream&) {
  const BoolFn2 f = resolve_function(cfg);
  const Mat4d rho = simulate(f, cfg);
  const LineSpectrum lines =
      options.from_fid
          ? spectrum_from_fid(simulate_fid(rho, cfg.spin, cfg.acquisition),
                              cfg.acquisition.dwell)
          : analytic_lines(rho, cfg.spin);
  const double scale = reference_scale(cfg);

  out << f.to_string() << " (U" << catalog_entry_for(f).index << "), " << pipeline_label(cfg)
      << ", " << init_label(cfg) << ", " << (options.from_fid ? "DFT of FID" : "analytic")
      << '\n';
  stick_plot(out, lines, scale);

  if (!cfg.out.empty()) {
    std::ostringstream csv;
    write_spectrum_csv(csv, lines, scale);
    write_file(cfg.out, csv.str());
  }
  if (!options.fid_out.empty()) {
    std::ostringstream csv;
    write_fid_csv(csv, simulate_fid(rho, cfg.spin, cfg.acquisition), cfg.acquisition.dwell);
    write_file(options.fid_out, csv.str());
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream&) {
  int failed = 0;
  for (const auto& g : run_verification(options)) {
    out << (g.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(22) << g.name
        << std::right << g.detail << '\n';
    failed += !g.passed;
  }
  out << (failed == 0 ? "all groups passed" : std::to_string(failed) + " group(s) failed")
      << '\n';
  return failed == 0 ? kExitOk : kExitFailure;
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const std::string json = catalog_json().dump(2) + "\n";
  if (cfg.out.empty()) out << json;
  else write_file(cfg.out, json);
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit even/odd function classification: ideal and NMR pulse-level simulation"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value config file (default: $EVENODD_CONFIG)");

  // Shared flags are registered on every subcommand and applied after the
  // config file, so command-line values win.
  static const std::vector<std::pair<std::string, std::string>> kValueFlags = {
      {"function", "truth table f(00)f(01)f(10)f(11), e.g. 0b0110"},
      {"index", "catalog entry 1..16"},
      {"init", "thermal | pseudopure | custom"},
      {"k1", "custom weight of |00><00|"},
      {"k2", "custom weight of |11><11|"},
      {"mode", "ideal | pulse"},
      {"frame", "rotating | hardware"},
      {"nu1", "qubit 1 offset (Hz)"},
      {"nu2", "qubit 2 offset (Hz)"},
      {"j", "scalar coupling (Hz)"},
      {"dwell", "FID dwell time (s)"},
      {"npoints", "FID points (power of two)"},
      {"out", "output file"},
  };
  std::map<std::string, std::string> values;
  std::vector<std::pair<CLI::App*, std::string>> registered;
  bool json = false;

  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value config file");
    for (const auto& [name, help] : kValueFlags) {
      sub->add_option("--" + name, values[name], help);
      registered.emplace_back(sub, name);
    }
    sub->add_flag("--json", json, "also print JSON");
  };

  CLI::App* classify = app.add_subcommand("classify", "classify one function");
  CLI::App* enumerate = app.add_subcommand("enumerate", "classify all sixteen functions");
  CLI::App* compile = app.add_subcommand("compile", "compile a gate into a pulse program");
  CLI::App* spectrum = app.add_subcommand("spectrum", "emit the readout spectrum");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  CLI::App* catalog_cmd = app.add_subcommand("catalog", "export the U_f catalog as JSON");
  for (CLI::App* sub : {classify, enumerate, compile, spectrum, catalog_cmd}) add_shared(sub);

  std::string gate;
  compile->add_option("gate", gate, "h1 h2 h12 h1inv h2inv h12inv U1..U16")->required();

  SpectrumOptions spectrum_options;
  spectrum->add_flag("--from-fid", spectrum_options.from_fid,
                     "pick lines from the DFT of the simulated FID");
  spectrum->add_option("--fid-out", spectrum_options.fid_out, "write the FID as CSV");

  VerifyOptions verify_options;
  std::string inject;
  int flip_index = 0;
  verify->add_option("--nu1", verify_options.spin.nu1, "qubit 1 offset (Hz)");
  verify->add_option("--nu2", verify_options.spin.nu2, "qubit 2 offset (Hz)");
  verify->add_option("--j", verify_options.spin.j, "scalar coupling (Hz)");
  verify->add_option("--inject", inject, "fault to inject: drop-refocusing | flip-uf-sign");
  verify->add_option("--flip-index", flip_index, "catalog entry mutated by flip-uf-sign")
      ->default_val(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      if (inject == "drop-refocusing") verify_options.drop_refocusing = true;
      else if (inject == "flip-uf-sign") verify_options.flip_uf_sign = flip_index;
      else if (!inject.empty() && inject != "none")
        throw ParseError("unknown fault '" + inject + "'");
      return cmd_verify(verify_options, out, err);
    }

    RunConfig cfg;
    if (config_path.empty()) {
      if (const char* env = std::getenv("EVENODD_CONFIG"); env && *env) config_path = env;
    }
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto& [sub, name] : registered) {
      if (sub->parsed() && sub->count("--" + name) > 0) apply_setting(cfg, name, values[name]);
    }
    if (json) cfg.json = true;

    if (classify->parsed()) return cmd_classify(cfg, out, err);
    if (enumerate->parsed()) return cmd_enumerate(cfg, out, err);
    if (compile->parsed()) return cmd_compile(gate, cfg, out, err);
    if (spectrum->parsed()) return cmd_spectrum(cfg, spectrum_options, out, err);
    return cmd_catalog(cfg, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedGate& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace evenodd::cli
