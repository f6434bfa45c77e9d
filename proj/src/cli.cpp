#include "qspe/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qspe/circuits.hpp"
#include "qspe/io.hpp"
#include "qspe/mesh.hpp"
#include "qspe/montecarlo.hpp"
#include "qspe/svg.hpp"
#include "qspe/verify.hpp"

namespace qspe::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int parse_int(std::string_view s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  double vpi = 1.4;
  double capacitance = 90e-9;
  std::string phase_convention = "bar-at-pi";
  std::string wrap = "sym";
  bool ignore_output_phases = false;
  bool pad_idle_modes = false;
  unsigned threads = 0;
  std::string out;
  std::string format;
  std::string config;
  double sqo_multiplier = 1.0;
  std::size_t trim_phases = 5;
  double trim_sigma = 0.1;
};

// Fills every option the user did not pass on the command line from the
// config file.
void apply_config(GlobalOptions& g, const CLI::App& app) {
  if (g.config.empty()) return;
  const Json cfg = read_json_file(g.config);
  if (!cfg.is_object()) throw FormatError("config: top level must be an object");
  auto take = [&](const char* flag, const char* key, auto& target) {
    if (app.count(flag) > 0 || !cfg.contains(key)) return;
    try {
      cfg.at(key).get_to(target);
    } catch (const Json::exception& e) {
      throw FormatError(std::string("config key '") + key + "': " + e.what());
    }
  };
  take("--seed", "seed", g.seed);
  take("--samples", "samples", g.samples);
  take("--vpi", "vpi", g.vpi);
  take("--capacitance", "capacitance", g.capacitance);
  take("--phase-convention", "phase_convention", g.phase_convention);
  take("--wrap", "wrap", g.wrap);
  take("--ignore-output-phases", "ignore_output_phases", g.ignore_output_phases);
  take("--pad-idle-modes", "pad_idle_modes", g.pad_idle_modes);
  take("--threads", "threads", g.threads);
  take("--format", "format", g.format);
  take("--sqo-multiplier", "sqo_multiplier", g.sqo_multiplier);
  take("--trim-phases", "trim_phases", g.trim_phases);
  take("--trim-sigma", "trim_sigma", g.trim_sigma);
}

EomModel make_model(const GlobalOptions& g) {
  EomModel m;
  m.v_pi = g.vpi;
  m.capacitance = g.capacitance;
  m.internal_phase_convention = parse_phase_convention(g.phase_convention);
  m.external_wrap = parse_phase_wrap(g.wrap);
  m.ignore_output_phases = g.ignore_output_phases;
  m.validate();
  return m;
}

QubitCostOptions make_qubit_options(const GlobalOptions& g) {
  QubitCostOptions q;
  q.sqo_multiplier = g.sqo_multiplier;
  q.pad_idle_modes = g.pad_idle_modes;
  q.trim_phases = g.trim_phases;
  q.trim_sigma = g.trim_sigma;
  q.threads = g.threads;
  return q;
}

std::string resolve_format(const GlobalOptions& g, std::initializer_list<const char*> allowed) {
  std::string fmt = g.format;
  if (fmt.empty()) {
    const auto dot = g.out.rfind('.');
    if (dot != std::string::npos) fmt = g.out.substr(dot + 1);
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return fmt == a; }) == allowed.end()) {
      fmt = *allowed.begin();
    }
  }
  if (std::find_if(allowed.begin(), allowed.end(),
                   [&](const char* a) { return fmt == a; }) == allowed.end()) {
    throw UsageError("--format " + fmt + " is not available for this subcommand");
  }
  return fmt;
}

void emit(const GlobalOptions& g, std::ostream& out, const std::string& payload) {
  if (g.out.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw FormatError("cannot open '" + g.out + "' for writing");
  f << payload;
  if (!f) throw FormatError("write to '" + g.out + "' failed");
}

void write_file(const std::string& path, const std::string& payload) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open '" + path + "' for writing");
  f << payload;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string encodings = "qudit";
  std::string dims;
  std::string qubits;
  std::string svg;
};

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  std::vector<ChartSeries> series;
  for (const auto& r : rows) {
    if (!r.error.empty()) continue;
    const std::string name = to_string(r.encoding);
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const ChartSeries& s) { return s.name == name; });
    if (it == series.end()) {
      series.push_back({name, {}});
      it = std::prev(series.end());
    }
    const double dim = r.encoding == Encoding::kQudit ? r.x : std::ldexp(1.0, r.x);
    it->points.emplace_back(dim, r.mean_energy);
  }
  return render_line_chart({"State preparation programming energy", "state dimension d",
                            "mean energy (J)", true, true},
                           series);
}

int cmd_sweep(const GlobalOptions& g, const SweepArgs& a, std::ostream& out) {
  const auto fmt = resolve_format(g, {"csv", "json", "svg"});
  std::vector<SweepRow> rows;
  for (const auto& name : split_csv(a.encodings)) {
    SweepSpec spec;
    try {
      spec.encoding = parse_encoding(name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const std::string& list = spec.encoding == Encoding::kQudit ? a.dims : a.qubits;
    if (list.empty()) {
      throw UsageError(spec.encoding == Encoding::kQudit
                           ? "sweep: --dims is required for the qudit encoding"
                           : "sweep: --qubits is required for qubit encodings");
    }
    try {
      spec.points = parse_int_list(list);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    spec.samples = g.samples;
    spec.seed = g.seed;
    spec.model = make_model(g);
    spec.qubit = make_qubit_options(g);
    spec.threads = g.threads;
    auto part = run_sweep(spec);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::string payload;
  if (fmt == "csv") {
    std::ostringstream os;
    write_sweep_csv(os, rows);
    payload = os.str();
  } else if (fmt == "json") {
    payload = sweep_rows_to_json(rows).dump(2) + "\n";
  } else {
    payload = sweep_svg(rows);
  }
  emit(g, out, payload);
  if (!a.svg.empty()) write_file(a.svg, sweep_svg(rows));
  return kOk;
}

// ---------------------------------------------------------------------------

struct DecomposeArgs {
  std::string input;
  bool check = false;
};

int cmd_decompose(const GlobalOptions& g, const DecomposeArgs& a, std::ostream& out,
                  std::ostream& err) {
  const auto fmt = resolve_format(g, {"json", "csv"});
  const auto u = unitary_from_json(read_json_file(a.input));
  const auto program = clements_decompose(u);
  const auto report = mesh_energy(make_model(g), program);
  Json doc = {{"program", program_to_json(program)}, {"energy", energy_to_json(report)}};
  if (a.check) {
    const double e = frobenius_distance(u, mesh_reconstruct(program));
    doc["roundtrip_error"] = e;
    err << "roundtrip frobenius error: " << format_double(e) << "\n";
  }
  if (fmt == "json") {
    emit(g, out, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "label,joules\n";
    for (const auto& e : report.per_element) os << e.label << ',' << format_double(e.joules) << '\n';
    os << "total," << format_double(report.total) << '\n';
    emit(g, out, os.str());
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CountsArgs {
  std::string n = "2..10";
  std::string svg;
};

std::string counts_svg(const std::vector<CountRow>& rows) {
  ChartSeries b{"Bergholm", {}}, p{"Plesch", {}}, m{"modified Plesch (NN)", {}};
  for (const auto& r : rows) {
    b.points.emplace_back(r.n, r.bergholm);
    p.points.emplace_back(r.n, r.plesch);
    m.points.emplace_back(r.n, r.modified);
  }
  return render_line_chart({"CNOT count for state preparation", "qubits n", "CNOTs", false, true},
                           {b, p, m});
}

int cmd_counts(const GlobalOptions& g, const CountsArgs& a, std::ostream& out) {
  const auto fmt = resolve_format(g, {"csv", "json", "svg"});
  std::vector<int> ns;
  try {
    ns = parse_int_list(a.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto rows = count_sweep(ns);
  std::string payload;
  if (fmt == "csv") {
    std::ostringstream os;
    write_counts_csv(os, rows);
    payload = os.str();
  } else if (fmt == "json") {
    payload = count_rows_to_json(rows).dump(2) + "\n";
  } else {
    payload = counts_svg(rows);
  }
  emit(g, out, payload);
  if (!a.svg.empty()) write_file(a.svg, counts_svg(rows));
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  int n = 2;
  std::size_t targets = 50;
  std::size_t budget = 4000;
  std::string target_file;
  std::string ansatz = "plesch";
};

int cmd_verify(const GlobalOptions& g, const VerifyArgs& a, std::ostream& out) {
  resolve_format(g, {"json"});
  GateCircuit circuit;
  if (a.ansatz == "plesch") {
    circuit = build_modified_plesch(a.n);
  } else {
    if (a.n < 1) throw std::invalid_argument("verify: n must be >= 1");
    circuit.n_qubits = static_cast<std::size_t>(a.n);
    for (std::size_t q = 0; q < circuit.n_qubits; ++q) circuit.gates.emplace_back(Sqo{q, {}});
  }
  std::vector<StateVector> targets;
  if (!a.target_file.empty()) {
    targets.push_back(state_from_json(read_json_file(a.target_file)));
  } else {
    const RngStream base{g.seed, 0};
    for (std::size_t i = 0; i < a.targets; ++i) {
      targets.push_back(haar_state(circuit.n_qubits, base.substream(i)));
    }
  }
  Json fits = Json::array();
  bool all = true;
  double worst = 1.0;
  const RngStream opt{g.seed, 1};
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto fit = optimize_template(circuit, targets[i], a.budget, opt.substream(i));
    all = all && fit.converged;
    worst = std::min(worst, fit.fidelity);
    fits.push_back(fit_to_json(fit));
  }
  Json doc = {{"n", circuit.n_qubits},
              {"ansatz", a.ansatz},
              {"cnots", circuit.cnot_count()},
              {"sqo_slots", circuit.sqo_count()},
              {"all_converged", all},
              {"min_fidelity", worst},
              {"fits", fits}};
  emit(g, out, doc.dump(2) + "\n");
  return kOk;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split_csv(text)) {
    if (part.empty()) throw std::invalid_argument("empty item in list '" + text + "'");
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(part));
      continue;
    }
    const int lo = parse_int(std::string_view(part).substr(0, dots));
    const int hi = parse_int(std::string_view(part).substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range '" + part + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electrical programming energy of photonic state preparation"};
  app.name("qspe-cli");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--samples", g.samples, "Monte Carlo samples per point")
      ->check(CLI::PositiveNumber);
  app.add_option("--vpi", g.vpi, "Half-wave voltage V_pi (V)")->check(CLI::PositiveNumber);
  app.add_option("--capacitance", g.capacitance, "EOM capacitance (F)")
      ->check(CLI::PositiveNumber);
  app.add_option("--phase-convention", g.phase_convention, "Internal phase of the bar state")
      ->check(CLI::IsMember({"bar-at-pi", "bar-at-zero"}));
  app.add_option("--wrap", g.wrap, "External phase wrap")->check(CLI::IsMember({"sym", "pos"}));
  app.add_flag("--ignore-output-phases", g.ignore_output_phases,
               "Do not bill the output phase column");
  app.add_flag("--pad-idle-modes", g.pad_idle_modes,
               "Bill identity crossings on idle modes of the full device per CNOT");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--sqo-multiplier", g.sqo_multiplier, "Scale factor on SQO slot counts")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--trim-phases", g.trim_phases, "Trim shifters per dedicated CNOT block");
  app.add_option("--trim-sigma", g.trim_sigma, "Std. dev. of trim phases (rad)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "csv | json | svg");
  app.add_option("--config", g.config, "JSON config file; flags take precedence");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo energy sweep");
  sweep->add_option("--encoding", sweep_args.encodings,
                    "Comma list of qudit, qubit-programmable, qubit-dedicated");
  sweep->add_option("--dims", sweep_args.dims, "Qudit dimensions, e.g. 2,4,8 or 2..16");
  sweep->add_option("--qubits", sweep_args.qubits, "Qubit counts, e.g. 2..10");
  sweep->add_option("--svg", sweep_args.svg, "Also write an SVG chart here");

  DecomposeArgs decompose_args;
  auto* decompose = app.add_subcommand("decompose", "Compile a unitary into a Clements mesh");
  decompose->add_option("--in,input", decompose_args.input, "Unitary JSON file")->required();
  decompose->add_flag("--check", decompose_args.check, "Report the reconstruction error");

  CountsArgs counts_args;
  auto* counts = app.add_subcommand("counts", "CNOT-count bounds table");
  counts->add_option("--n", counts_args.n, "Qubit counts, e.g. 2..8");
  counts->add_option("--svg", counts_args.svg, "Also write an SVG chart here");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Expressivity check of a template");
  verify->add_option("--n", verify_args.n, "Qubits");
  verify->add_option("--targets", verify_args.targets, "Haar-random targets")
      ->check(CLI::PositiveNumber);
  verify->add_option("--budget", verify_args.budget, "Optimizer iterations per target")
      ->check(CLI::PositiveNumber);
  verify->add_option("--target", verify_args.target_file, "Target state JSON file");
  verify->add_option("--ansatz", verify_args.ansatz, "plesch | product")
      ->check(CLI::IsMember({"plesch", "product"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kUsage;
  }

  try {
    apply_config(g, app);
    if (g.samples == 0) throw UsageError("--samples must be >= 1");
    if (*sweep) return cmd_sweep(g, sweep_args, out);
    if (*decompose) return cmd_decompose(g, decompose_args, out, err);
    if (*counts) return cmd_counts(g, counts_args, out);
    return cmd_verify(g, verify_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace qspe::cli
