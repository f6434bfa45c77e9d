// Small-n state-vector simulation of CNOT/SQO templates and a seeded
// multi-start optimizer over SQO angles, used to check that a template can
// prepare arbitrary target states.
//
// Qubit ordering is little-endian: qubit q is bit q of the amplitude index,
// so |q0 q1 q2> = |1 1 0> is amplitude index 3.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qspe/circuits.hpp"
#include "qspe/numerics.hpp"

namespace qspe {

inline constexpr std::size_t kMaxSimQubits = 12;
inline constexpr std::size_t kMaxOptimizeQubits = 6;

struct StateVector {
  std::size_t n_qubits = 0;
  ComplexVector amplitudes;

  static StateVector zero(std::size_t n_qubits);
  /// Throws std::invalid_argument unless size == 2^n and the norm is 1
  /// within kUnitaryTolerance.
  void validate() const;
};

using SqoAngles = std::array<double, 3>;

/// 2x2 matrix of one SQO slot.
Eigen::Matrix2cd sqo_matrix(const SqoAngles& a);

/// Applies the circuit to |0...0>. `params` assigns every SQO slot in gate
/// order and overrides the angles stored in the circuit. Throws
/// std::invalid_argument when a slot is unassigned or n_qubits > 12.
StateVector simulate(const GateCircuit& circuit, std::span<const SqoAngles> params);
/// Uses the angles stored in the circuit.
StateVector simulate(const GateCircuit& circuit);

/// |<a|b>|^2 clamped to [0, 1].
double fidelity(const StateVector& a, const StateVector& b);

struct FitResult {
  double fidelity = 0.0;
  std::vector<SqoAngles> params;
  std::size_t iterations = 0;
  std::size_t restarts = 0;
  bool converged = false;
  /// Fidelity after each accepted step, as (restart, fidelity).
  std::vector<std::pair<std::size_t, double>> trace;
};

struct OptimizeOptions {
  double target_fidelity = 1.0 - 1e-6;
  double fd_step = 1e-5;
  /// Iterations allowed per restart before moving to the next start.
  std::size_t restart_iterations = 400;
};

/// Fidelity of the circuit's output with `target` as a function of the
/// flattened SQO angles (three per slot).
double template_fidelity(const GateCircuit& circuit, const StateVector& target,
                         std::span<const double> flat_params);

/// Central finite-difference gradient of template_fidelity.
std::vector<double> template_fidelity_gradient(const GateCircuit& circuit,
                                               const StateVector& target,
                                               std::span<const double> flat_params,
                                               double step);

/// Maximizes fidelity over all SQO angles. The first start is the all-zero
/// (identity) assignment; later starts are uniform in [-pi, pi) drawn from
/// stream.substream(restart). Each start runs quasi-Newton (BFGS) steps on
/// the finite-difference gradient with a backtracking line search. Stops at
/// the target fidelity or after `budget` iterations in total; converged is
/// false in the latter case and the best point found is returned.
FitResult optimize_template(const GateCircuit& circuit, const StateVector& target,
                            std::size_t budget, const RngStream& stream,
                            const OptimizeOptions& options = {});

/// Column 0 of a Haar-random 2^n unitary.
StateVector haar_state(std::size_t n_qubits, const RngStream& stream);

}  // namespace qspe
