// Electro-optic modulator programming energy: each phase shifter charged
// once to V(phase) = V_pi |phase| / pi costs C V^2 / 2.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qspe/mesh.hpp"

namespace qspe {

/// Which internal MZI phase realizes the bar (identity) state.
enum class PhaseConvention {
  kBarAtPi,    // internal = pi - 2 theta; identity draws V_pi
  kBarAtZero,  // internal = 2 theta
};

/// Range external and output phases are wrapped into before billing.
enum class PhaseWrap {
  kSymmetric,  // [-pi, pi]
  kPositive,   // [0, 2 pi)
};

struct EomModel {
  double v_pi = 1.4;            // volts
  double capacitance = 90e-9;   // farads
  PhaseConvention internal_phase_convention = PhaseConvention::kBarAtPi;
  PhaseWrap external_wrap = PhaseWrap::kSymmetric;
  /// Skip the output diagonal; for state preparation from a fixed input it
  /// only sets the phases of the prepared amplitudes.
  bool ignore_output_phases = false;

  /// Throws std::invalid_argument unless v_pi > 0 and capacitance > 0.
  void validate() const;
};

struct EnergyElement {
  std::string label;
  double joules = 0.0;
};

struct EnergyReport {
  double total = 0.0;  // joules
  std::vector<EnergyElement> per_element;
  std::size_t element_count = 0;
};

struct CrossingPhases {
  double internal = 0.0;
  double external = 0.0;
};

double wrap_phase(const EomModel& model, double phase);

/// V_pi |phase| / pi.
double phase_to_voltage(const EomModel& model, double phase);

/// C V(phase)^2 / 2 for one shifter, phase wrapped per the model.
double phase_energy(const EomModel& model, double phase);

CrossingPhases crossing_phases(const EomModel& model, const Crossing& c);

double crossing_energy(const EomModel& model, const Crossing& c);

/// Per-crossing energies labeled "crossing L<layer> m<top_mode>" and, unless
/// the model ignores them, output phases labeled "output m<mode>".
EnergyReport mesh_energy(const EomModel& model, const MeshProgram& p);

std::string to_string(PhaseConvention c);
std::string to_string(PhaseWrap w);
PhaseConvention parse_phase_convention(const std::string& s);
PhaseWrap parse_phase_wrap(const std::string& s);

}  // namespace qspe
