#include "qspe/circuits.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qspe {

namespace {

void require_qubits(int n, const char* who) {
  if (n < 2) {
    throw std::invalid_argument(std::string(who) + ": n must be >= 2, got " +
                                std::to_string(n));
  }
}

// CNOTs of the state-preparation block on k lines.
std::uint64_t prep_block_cnots(std::uint64_t k) {
  return k == 0 ? 0 : (std::uint64_t{1} << k) - k - 1;
}

// CNOTs of a generic unitary block on m lines; 0 for a single line.
std::uint64_t unitary_block_cnots(std::uint64_t m) {
  if (m < 2) return 0;
  const std::uint64_t four_m = std::uint64_t{1} << (2 * m);
  return (23 * four_m + 64) / 48 - 3 * (std::uint64_t{1} << (m - 1));
}

// Bouncing nearest-neighbor CNOT ladder on lines [first, first + m):
// sweeps down with forward CNOTs, then back up with reversed ones.
std::vector<Cnot> ladder(std::size_t first, std::size_t m, std::uint64_t count) {
  std::vector<Cnot> out;
  if (m < 2) return out;
  out.reserve(count);
  const std::uint64_t span = m - 1;
  for (std::uint64_t t = 0; t < count; ++t) {
    const std::uint64_t round = t / span;
    const std::uint64_t pos = t % span;
    const bool down = round % 2 == 0;
    const std::size_t p = down ? pos : span - 1 - pos;
    const std::size_t hi = first + p;
    out.push_back(down ? Cnot{hi, hi + 1} : Cnot{hi + 1, hi});
  }
  return out;
}

void append_with_slots(GateCircuit& c, const Cnot& g) {
  c.gates.emplace_back(Sqo{g.control, {}});
  c.gates.emplace_back(Sqo{g.target, {}});
  c.gates.emplace_back(g);
}

double ipow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

std::size_t GateCircuit::cnot_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(),
      [](const Gate& g) { return std::holds_alternative<Cnot>(g); }));
}

std::size_t GateCircuit::sqo_count() const { return gates.size() - cnot_count(); }

bool GateCircuit::nearest_neighbor() const {
  return std::all_of(gates.begin(), gates.end(), [](const Gate& g) {
    const auto* c = std::get_if<Cnot>(&g);
    if (c == nullptr) return true;
    const auto d = c->control > c->target ? c->control - c->target
                                          : c->target - c->control;
    return d == 1;
  });
}

void GateCircuit::validate() const {
  if (n_qubits == 0) throw std::invalid_argument("circuit: n_qubits must be >= 1");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (const auto* c = std::get_if<Cnot>(&gates[i])) {
      if (c->control >= n_qubits || c->target >= n_qubits) {
        throw std::invalid_argument("circuit: gate " + std::to_string(i) +
                                    " addresses a qubit outside [0, n)");
      }
      if (c->control == c->target) {
        throw std::invalid_argument("circuit: gate " + std::to_string(i) +
                                    " has control == target");
      }
    } else if (std::get<Sqo>(gates[i]).qubit >= n_qubits) {
      throw std::invalid_argument("circuit: gate " + std::to_string(i) +
                                  " addresses a qubit outside [0, n)");
    }
  }
}

// The bounds are evaluated in the regrouped forms
//   C_B = (10 2^n + 14 or 10) / 3 + 2n^2 - 12n
//   C_P = (23 4^k + 40) / 24 - 2^{k+1}         (n = 2k)
//   C_P = (115 4^k + 80) / 48 - 2^{k+1}        (n = 2k + 1)
// so that integer-valued cases come out exact.
double cnot_count_bergholm(int n) {
  require_qubits(n, "cnot_count_bergholm");
  const double nn = n;
  return (10.0 * ipow2(n) + (n % 2 == 0 ? 14.0 : 10.0)) / 3.0 + 2.0 * nn * nn - 12.0 * nn;
}

double cnot_count_plesch(int n) {
  require_qubits(n, "cnot_count_plesch");
  const int k = n / 2;
  if (n % 2 == 0) return (23.0 * ipow2(2 * k) + 40.0) / 24.0 - ipow2(k + 1);
  return (115.0 * ipow2(2 * k) + 80.0) / 48.0 - ipow2(k + 1);
}

double cnot_count_modified(int n) {
  require_qubits(n, "cnot_count_modified");
  return cnot_count_plesch(n) + (n % 2 == 0 ? n : n - 1);
}

std::vector<Gate> decompose_long_range(std::size_t control, std::size_t target) {
  const std::size_t dist = control > target ? control - target : target - control;
  if (dist < 2) {
    throw std::invalid_argument("decompose_long_range: CNOT(" +
                                std::to_string(control) + "," +
                                std::to_string(target) +
                                ") is already nearest-neighbor");
  }
  const std::size_t next = control < target ? control + 1 : control - 1;
  std::vector<Gate> out;
  out.reserve(2 * dist - 1);
  out.emplace_back(Cnot{control, next});
  if (dist == 2) {
    out.emplace_back(Cnot{next, target});
  } else {
    auto inner = decompose_long_range(next, target);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  out.emplace_back(Cnot{control, next});
  return out;
}

TemplateCounts modified_plesch_counts(int n) {
  if (n < 2 || n > kMaxTemplateQubits) {
    throw std::invalid_argument("modified_plesch_counts: n must be in [2, " +
                                std::to_string(kMaxTemplateQubits) + "], got " +
                                std::to_string(n));
  }
  const auto nn = static_cast<std::uint64_t>(n);
  std::uint64_t cnots = 0;
  if (n == 2) {
    cnots = 3;
  } else {
    const std::uint64_t a = nn / 2;
    const std::uint64_t b = nn - a;
    cnots = prep_block_cnots(a) + a * (2 * a - 1) + unitary_block_cnots(a) +
            unitary_block_cnots(b);
  }
  return {cnots, 2 * cnots + nn};
}

GateCircuit build_modified_plesch(int n) {
  if (n < 2 || n > kMaxTemplateQubits) {
    throw std::invalid_argument("build_modified_plesch: n must be in [2, " +
                                std::to_string(kMaxTemplateQubits) + "], got " +
                                std::to_string(n));
  }
  const auto nq = static_cast<std::size_t>(n);
  GateCircuit circuit;
  circuit.n_qubits = nq;
  const auto counts = modified_plesch_counts(n);
  circuit.gates.reserve(counts.cnots + counts.sqos);

  if (n == 2) {
    for (const auto& g : ladder(0, 2, 3)) append_with_slots(circuit, g);
  } else {
    const std::size_t a = nq / 2;
    const std::size_t b = nq - a;
    for (const auto& g : ladder(0, a, prep_block_cnots(a))) {
      append_with_slots(circuit, g);
    }
    for (std::size_t i = 0; i < a; ++i) {
      if (a == 1) {
        append_with_slots(circuit, Cnot{i, a + i});
        continue;
      }
      for (const auto& g : decompose_long_range(i, a + i)) {
        append_with_slots(circuit, std::get<Cnot>(g));
      }
    }
    const auto upper = ladder(0, a, unitary_block_cnots(a));
    const auto lower = ladder(a, b, unitary_block_cnots(b));
    for (std::size_t i = 0; i < std::max(upper.size(), lower.size()); ++i) {
      if (i < upper.size()) append_with_slots(circuit, upper[i]);
      if (i < lower.size()) append_with_slots(circuit, lower[i]);
    }
  }
  for (std::size_t q = 0; q < nq; ++q) circuit.gates.emplace_back(Sqo{q, {}});
  return circuit;
}

double expected_attempts_log10(double cnots) {
  if (!(cnots >= 0.0)) {
    throw std::invalid_argument("expected_attempts_log10: cnots must be >= 0");
  }
  return cnots * std::log10(9.0);
}

ResourceCounts resource_counts(std::uint64_t dim) {
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("resource_counts: dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  const auto qubits = static_cast<std::size_t>(std::countr_zero(dim));
  return {2 * qubits, qubits, static_cast<std::size_t>(dim), 1};
}

double third_reflectivity_theta() { return std::acos(1.0 / 3.0); }

MeshProgram cnot_block_program() {
  MeshProgram p;
  p.dim = 6;
  p.output_phases.assign(6, 0.0);
  // Rectangular layout: even layers hold modes 0, 2, 4; odd layers 1, 3.
  // Target-qubit Hadamards at the outer layers, the three 1/3 splitters in
  // the middle layer.
  for (std::size_t layer = 0; layer < 6; ++layer) {
    for (std::size_t m = layer % 2; m + 1 < 6; m += 2) {
      double theta = 0.0;
      if ((layer == 0 || layer == 4) && m == 2) theta = kHalfReflectivityTheta;
      if (layer == 2) theta = third_reflectivity_theta();
      p.crossings.push_back({layer, m, theta, 0.0});
    }
  }
  return p;
}

BlockCost map_cnot_block(const EomModel& model, bool pad_idle_modes, int n_qubits) {
  model.validate();
  BlockCost cost;
  cost.e_identity = crossing_energy(model, {0, 0, 0.0, 0.0});
  cost.e_half = crossing_energy(model, {0, 0, kHalfReflectivityTheta, 0.0});
  cost.e_third = crossing_energy(model, {0, 0, third_reflectivity_theta(), 0.0});
  for (const auto& c : cnot_block_program().crossings) {
    if (c.theta == 0.0) {
      ++cost.identity_count;
    } else if (c.theta == kHalfReflectivityTheta) {
      ++cost.half_count;
    } else {
      ++cost.third_count;
    }
  }
  if (pad_idle_modes && n_qubits > 3) {
    cost.identity_count += static_cast<std::size_t>(6 * n_qubits - 18);
  }
  cost.e_block = static_cast<double>(cost.identity_count) * cost.e_identity +
                 static_cast<double>(cost.half_count) * cost.e_half +
                 static_cast<double>(cost.third_count) * cost.e_third;
  return cost;
}

double sqo_energy(const EomModel& model, const ComplexMatrix& u2) {
  if (u2.rows() != 2 || u2.cols() != 2) {
    throw std::invalid_argument("sqo_energy: expected a 2x2 unitary");
  }
  const auto program = clements_decompose(u2);
  return crossing_energy(model, program.crossings.front());
}

namespace {

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

}  // namespace

MeanStd sqo_cost(const EomModel& model, const RngStream& stream,
                 std::size_t samples, unsigned threads) {
  if (samples == 0) throw std::invalid_argument("sqo_cost: samples must be >= 1");
  model.validate();
  std::vector<double> energies(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    energies[i] = sqo_energy(model, haar_unitary(2, stream.substream(i)));
  });
  return mean_std(energies);
}

TemplateCounts qubit_counts(int n, const QubitCostOptions& options) {
  require_qubits(n, "qubit_counts");
  TemplateCounts counts;
  if (n <= kMaxTemplateQubits) {
    counts = modified_plesch_counts(n);
  } else {
    const double c = std::ceil(cnot_count_modified(n));
    if (!std::isfinite(c) || c > 1e18) {
      throw std::invalid_argument("qubit_counts: n = " + std::to_string(n) +
                                  " overflows the CNOT count");
    }
    counts.cnots = static_cast<std::uint64_t>(c);
    counts.sqos = 2 * counts.cnots + static_cast<std::uint64_t>(n);
  }
  if (n == 2 && options.two_qubit_sqo_override) counts.sqos = 15;
  return counts;
}

QubitEnergy qsp_energy_qubits(int n, QubitHardware mode, const EomModel& model,
                              const RngStream& stream, std::size_t samples,
                              const QubitCostOptions& options) {
  require_qubits(n, "qsp_energy_qubits");
  if (samples == 0) throw std::invalid_argument("qsp_energy_qubits: samples must be >= 1");
  model.validate();
  const auto counts = qubit_counts(n, options);

  QubitEnergy out;
  out.cnots = static_cast<double>(counts.cnots);
  out.sqos = counts.sqos;
  out.sqo = sqo_cost(model, stream.substream(1), samples, options.threads);
  const double slots = options.sqo_multiplier * static_cast<double>(counts.sqos);
  double variance = slots * out.sqo.std * out.sqo.std;

  if (mode == QubitHardware::kProgrammable) {
    out.per_cnot = map_cnot_block(model, options.pad_idle_modes, n).e_block;
  } else {
    std::vector<double> trims(samples);
    const RngStream trim_stream = stream.substream(2);
    for (std::size_t i = 0; i < samples; ++i) {
      Rng rng(trim_stream.substream(i));
      trims[i] = phase_energy(model, std::abs(options.trim_sigma * rng.normal()));
    }
    const auto trim = mean_std(trims);
    const double phases = static_cast<double>(options.trim_phases);
    out.per_cnot = phases * trim.mean;
    variance += out.cnots * phases * trim.std * trim.std;
  }
  out.mean = out.cnots * out.per_cnot + slots * out.sqo.mean;
  out.std = std::sqrt(variance);
  return out;
}

}  // namespace qspe
