#include "qspe/io.hpp"

#include <fstream>
#include <sstream>

namespace qspe {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

Json unitary_to_json(const ComplexMatrix& u) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      rr.push_back(u(r, c).real());
      ir.push_back(u(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"dim", u.rows()}, {"re", re}, {"im", im}};
}

ComplexMatrix unitary_from_json(const Json& j) {
  const auto dim = field<std::size_t>(j, "dim");
  const auto re = field<std::vector<std::vector<double>>>(j, "re");
  const auto im = field<std::vector<std::vector<double>>>(j, "im");
  if (dim == 0) throw FormatError("unitary: dim must be >= 1");
  if (re.size() != dim || im.size() != dim) {
    throw FormatError("unitary: expected " + std::to_string(dim) + " rows");
  }
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix u(n, n);
  for (std::size_t r = 0; r < dim; ++r) {
    if (re[r].size() != dim || im[r].size() != dim) {
      throw FormatError("unitary: row " + std::to_string(r) + " has the wrong length");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(re[r][c], im[r][c]);
    }
  }
  return u;
}

Json state_to_json(const StateVector& s) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
    re.push_back(s.amplitudes(i).real());
    im.push_back(s.amplitudes(i).imag());
  }
  return {{"n", s.n_qubits}, {"re", re}, {"im", im}};
}

StateVector state_from_json(const Json& j) {
  StateVector s;
  s.n_qubits = field<std::size_t>(j, "n");
  const auto re = field<std::vector<double>>(j, "re");
  const auto im = field<std::vector<double>>(j, "im");
  if (s.n_qubits > 30 || re.size() != (std::size_t{1} << s.n_qubits) ||
      im.size() != re.size()) {
    throw FormatError("state: expected 2^n real and imaginary parts");
  }
  s.amplitudes.resize(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) {
    s.amplitudes(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  }
  return s;
}

Json program_to_json(const MeshProgram& p) {
  Json crossings = Json::array();
  for (const auto& c : p.crossings) {
    crossings.push_back(
        {{"layer", c.layer}, {"top_mode", c.top_mode}, {"theta", c.theta}, {"phi", c.phi}});
  }
  return {{"dim", p.dim}, {"crossings", crossings}, {"output_phases", p.output_phases}};
}

MeshProgram program_from_json(const Json& j) {
  MeshProgram p;
  p.dim = field<std::size_t>(j, "dim");
  p.output_phases = field<std::vector<double>>(j, "output_phases");
  const auto crossings = field<Json>(j, "crossings");
  if (!crossings.is_array()) throw FormatError("field 'crossings' must be an array");
  for (const auto& c : crossings) {
    p.crossings.push_back({field<std::size_t>(c, "layer"), field<std::size_t>(c, "top_mode"),
                           field<double>(c, "theta"), field<double>(c, "phi")});
  }
  return p;
}

Json energy_to_json(const EnergyReport& r) {
  Json elements = Json::array();
  for (const auto& e : r.per_element) {
    elements.push_back({{"label", e.label}, {"joules", e.joules}});
  }
  return {{"total_j", r.total}, {"element_count", r.element_count}, {"elements", elements}};
}

Json block_cost_to_json(const BlockCost& b) {
  return {{"e_identity_j", b.e_identity}, {"e_half_j", b.e_half},
          {"e_third_j", b.e_third},       {"e_block_j", b.e_block},
          {"identity_count", b.identity_count}, {"half_count", b.half_count},
          {"third_count", b.third_count}};
}

Json circuit_to_json(const GateCircuit& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates) {
    if (const auto* cn = std::get_if<Cnot>(&g)) {
      gates.push_back({{"kind", "cnot"}, {"c", cn->control}, {"t", cn->target}});
    } else {
      const auto& s = std::get<Sqo>(g);
      gates.push_back({{"kind", "sqo"}, {"q", s.qubit}, {"params", s.params}});
    }
  }
  return {{"n", c.n_qubits}, {"gates", gates}};
}

GateCircuit circuit_from_json(const Json& j) {
  GateCircuit c;
  c.n_qubits = field<std::size_t>(j, "n");
  const auto gates = field<Json>(j, "gates");
  if (!gates.is_array()) throw FormatError("field 'gates' must be an array");
  for (const auto& g : gates) {
    const auto kind = field<std::string>(g, "kind");
    if (kind == "cnot") {
      c.gates.emplace_back(Cnot{field<std::size_t>(g, "c"), field<std::size_t>(g, "t")});
    } else if (kind == "sqo") {
      c.gates.emplace_back(Sqo{field<std::size_t>(g, "q"),
                               field<std::array<double, 3>>(g, "params")});
    } else {
      throw FormatError("unknown gate kind '" + kind + "'");
    }
  }
  return c;
}

Json fit_to_json(const FitResult& f) {
  return {{"fidelity", f.fidelity},
          {"params", f.params},
          {"iterations", f.iterations},
          {"restarts", f.restarts},
          {"converged", f.converged}};
}

Json sweep_rows_to_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row = {{"x", r.x},
                {"encoding", r.encoding == Encoding::kQudit ? "qudit" : "qubit"},
                {"mode", r.encoding == Encoding::kQubitProgrammable ? "programmable"
                         : r.encoding == Encoding::kQubitDedicated  ? "dedicated"
                                                                    : ""},
                {"mean_energy_j", r.mean_energy},
                {"std_energy_j", r.std_energy},
                {"samples", r.samples},
                {"seed", r.seed},
                {"cnots", r.cnots ? Json(*r.cnots) : Json(nullptr)},
                {"sqos", r.sqos ? Json(*r.sqos) : Json(nullptr)},
                {"attempts_log10", r.attempts_log10 ? Json(*r.attempts_log10) : Json(nullptr)},
                {"failures", r.failures}};
    if (!r.error.empty()) row["error"] = r.error;
    out.push_back(std::move(row));
  }
  return out;
}

Json count_rows_to_json(const std::vector<CountRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n}, {"bergholm", r.bergholm}, {"plesch", r.plesch},
                   {"modified", r.modified}});
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

}  // namespace qspe
