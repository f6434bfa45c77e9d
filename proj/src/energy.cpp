#include "qspe/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qspe {

void EomModel::validate() const {
  if (!(v_pi > 0.0) || !std::isfinite(v_pi)) {
    throw std::invalid_argument("EomModel: v_pi must be positive");
  }
  if (!(capacitance > 0.0) || !std::isfinite(capacitance)) {
    throw std::invalid_argument("EomModel: capacitance must be positive");
  }
}

double wrap_phase(const EomModel& model, double phase) {
  const double w = wrap_positive(phase);
  if (model.external_wrap == PhaseWrap::kSymmetric && w > std::numbers::pi) {
    return w - 2.0 * std::numbers::pi;
  }
  return w;
}

double phase_to_voltage(const EomModel& model, double phase) {
  return model.v_pi * std::abs(phase) / std::numbers::pi;
}

double phase_energy(const EomModel& model, double phase) {
  const double v = phase_to_voltage(model, wrap_phase(model, phase));
  return 0.5 * model.capacitance * v * v;
}

CrossingPhases crossing_phases(const EomModel& model, const Crossing& c) {
  CrossingPhases out;
  out.internal = model.internal_phase_convention == PhaseConvention::kBarAtPi
                     ? std::numbers::pi - 2.0 * c.theta
                     : 2.0 * c.theta;
  out.external = wrap_phase(model, c.phi);
  return out;
}

double crossing_energy(const EomModel& model, const Crossing& c) {
  const auto ph = crossing_phases(model, c);
  const double vi = phase_to_voltage(model, ph.internal);
  const double ve = phase_to_voltage(model, ph.external);
  return 0.5 * model.capacitance * (vi * vi + ve * ve);
}

EnergyReport mesh_energy(const EomModel& model, const MeshProgram& p) {
  model.validate();
  EnergyReport r;
  r.per_element.reserve(p.crossings.size() + p.output_phases.size());
  for (const auto& c : p.crossings) {
    r.per_element.push_back({"crossing L" + std::to_string(c.layer) + " m" +
                                 std::to_string(c.top_mode),
                             crossing_energy(model, c)});
  }
  if (!model.ignore_output_phases) {
    for (std::size_t k = 0; k < p.output_phases.size(); ++k) {
      r.per_element.push_back({"output m" + std::to_string(k),
                               phase_energy(model, p.output_phases[k])});
    }
  }
  for (const auto& e : r.per_element) r.total += e.joules;
  r.element_count = r.per_element.size();
  return r;
}

std::string to_string(PhaseConvention c) {
  return c == PhaseConvention::kBarAtPi ? "bar-at-pi" : "bar-at-zero";
}

std::string to_string(PhaseWrap w) {
  return w == PhaseWrap::kSymmetric ? "sym" : "pos";
}

PhaseConvention parse_phase_convention(const std::string& s) {
  if (s == "bar-at-pi" || s == "bar_at_pi") return PhaseConvention::kBarAtPi;
  if (s == "bar-at-zero" || s == "bar_at_zero") return PhaseConvention::kBarAtZero;
  throw std::invalid_argument("unknown phase convention '" + s + "'");
}

PhaseWrap parse_phase_wrap(const std::string& s) {
  if (s == "sym" || s == "symmetric") return PhaseWrap::kSymmetric;
  if (s == "pos" || s == "positive") return PhaseWrap::kPositive;
  throw std::invalid_argument("unknown phase wrap '" + s + "'");
}

}  // namespace qspe
