#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qspe/energy.hpp"

using namespace qspe;
using std::numbers::pi;

TEST(Energy, VoltageExamples) {
  const EomModel m;
  EXPECT_DOUBLE_EQ(phase_to_voltage(m, pi), 1.4);
  EXPECT_EQ(phase_to_voltage(m, 0.0), 0.0);
  EXPECT_NEAR(phase_to_voltage(m, pi / 3), 1.4 / 3, 1e-15);
  EXPECT_DOUBLE_EQ(phase_to_voltage(m, -pi), 1.4);
}

TEST(Energy, SingleShifterMatchesOracle) {
  const EomModel m;
  for (double ph : {0.0, 0.3, 1.0, 2.5, pi}) {
    EXPECT_NEAR(phase_energy(m, ph), oracle::eom_energy(90e-9, 1.4, {ph}), 1e-20);
  }
  EXPECT_NEAR(phase_energy(m, pi), 88.2e-9, 1e-18);
}

TEST(Energy, WrapConventions) {
  EomModel m;
  EXPECT_NEAR(wrap_phase(m, 1.5 * pi), -0.5 * pi, 1e-15);
  EXPECT_NEAR(phase_energy(m, 1.5 * pi), phase_energy(m, 0.5 * pi), 1e-20);
  m.external_wrap = PhaseWrap::kPositive;
  EXPECT_NEAR(wrap_phase(m, -0.5 * pi), 1.5 * pi, 1e-15);
  EXPECT_NEAR(phase_energy(m, 1.5 * pi), oracle::eom_energy(90e-9, 1.4, {1.5 * pi}), 1e-20);
}

TEST(Energy, CrossingPhasesBothConventions) {
  EomModel m;
  const Crossing c{0, 0, 0.4, 1.1};
  auto p = crossing_phases(m, c);
  EXPECT_NEAR(p.internal, pi - 0.8, 1e-15);
  EXPECT_NEAR(p.external, 1.1, 1e-15);
  m.internal_phase_convention = PhaseConvention::kBarAtZero;
  p = crossing_phases(m, c);
  EXPECT_NEAR(p.internal, 0.8, 1e-15);
}

TEST(Energy, CrossingExamples) {
  const EomModel m;
  EXPECT_NEAR(crossing_energy(m, Crossing{0, 0, 0.0, 0.0}), 88.2e-9, 1e-18);
  EXPECT_NEAR(crossing_energy(m, Crossing{0, 0, pi / 3, 0.0}), 9.8e-9, 1e-18);
  EXPECT_NEAR(crossing_energy(m, Crossing{0, 0, pi / 2, 0.0}), 0.0, 1e-24);
  EXPECT_NEAR(crossing_energy(m, Crossing{0, 0, 0.3, 2.0}),
              oracle::eom_energy(90e-9, 1.4, {pi - 0.6, 2.0}), 1e-20);
}

TEST(Energy, BarAtZeroIdentityIsFree) {
  EomModel m;
  m.internal_phase_convention = PhaseConvention::kBarAtZero;
  EXPECT_EQ(crossing_energy(m, Crossing{0, 0, 0.0, 0.0}), 0.0);
}

TEST(Energy, SixModeIdentityMesh) {
  const EomModel m;
  const auto p = clements_decompose(ComplexMatrix::Identity(6, 6));
  const auto r = mesh_energy(m, p);
  EXPECT_NEAR(r.total, 15 * 88.2e-9, 1e-15);
  EXPECT_NEAR(r.total, 1.323e-6, 1e-15);
  EXPECT_EQ(r.element_count, 21u);
  EXPECT_EQ(r.per_element.front().label, "crossing L0 m0");
  EXPECT_EQ(r.per_element.back().label, "output m5");
}

TEST(Energy, IgnoreOutputPhases) {
  EomModel m;
  m.ignore_output_phases = true;
  const auto p = clements_decompose(haar_unitary(5, RngStream{2, 5}));
  const auto r = mesh_energy(m, p);
  EXPECT_EQ(r.element_count, 10u);
  EXPECT_EQ(r.per_element.size(), 10u);
}

TEST(Energy, ScalesWithCapacitanceAndVpiSquared) {
  const auto p = clements_decompose(haar_unitary(7, RngStream{3, 7}));
  const EomModel base;
  EomModel twice_c = base;
  twice_c.capacitance *= 2;
  EomModel twice_v = base;
  twice_v.v_pi *= 2;
  const double e = mesh_energy(base, p).total;
  EXPECT_NEAR(mesh_energy(twice_c, p).total, 2 * e, 1e-12 * e);
  EXPECT_NEAR(mesh_energy(twice_v, p).total, 4 * e, 1e-12 * e);
}

TEST(Energy, ReportSumsElements) {
  const auto p = clements_decompose(haar_unitary(10, RngStream{4, 10}));
  const auto r = mesh_energy(EomModel{}, p);
  double sum = 0.0;
  for (const auto& el : r.per_element) sum += el.joules;
  EXPECT_NEAR(sum, r.total, 1e-15 * r.total);
  EXPECT_EQ(r.per_element.size(), 45u + 10u);
}

// Relabeling modes only reorders the billed set.
TEST(Energy, InvariantUnderCrossingOrder) {
  auto p = clements_decompose(haar_unitary(6, RngStream{5, 6}));
  const double e = mesh_energy(EomModel{}, p).total;
  std::reverse(p.crossings.begin(), p.crossings.end());
  std::reverse(p.output_phases.begin(), p.output_phases.end());
  EXPECT_NEAR(mesh_energy(EomModel{}, p).total, e, 1e-15 * e);
}

TEST(Energy, RejectsBadModel) {
  EomModel m;
  m.v_pi = 0.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = EomModel{};
  m.capacitance = -1.0;
  EXPECT_THROW(mesh_energy(m, MeshProgram{1, {}, {0.0}}), std::invalid_argument);
}

TEST(Energy, ParseConventions) {
  EXPECT_EQ(parse_phase_convention("bar-at-pi"), PhaseConvention::kBarAtPi);
  EXPECT_EQ(parse_phase_convention("bar_at_zero"), PhaseConvention::kBarAtZero);
  EXPECT_EQ(parse_phase_wrap("symmetric"), PhaseWrap::kSymmetric);
  EXPECT_EQ(parse_phase_wrap("positive"), PhaseWrap::kPositive);
  EXPECT_EQ(parse_phase_convention(to_string(PhaseConvention::kBarAtZero)),
            PhaseConvention::kBarAtZero);
  EXPECT_THROW(parse_phase_wrap("sideways"), std::invalid_argument);
}
