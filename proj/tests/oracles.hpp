// Test-only reference computations, kept independent of the library's
// evaluation paths.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qspe/mesh.hpp"

namespace qspe::oracle {

// D * T_k * ... * T_1 built from dense t_matrix products.
inline ComplexMatrix dense_reconstruct(const MeshProgram& p) {
  const auto n = static_cast<Eigen::Index>(p.dim);
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  for (const auto& c : p.crossings) m = t_matrix(p.dim, c.top_mode, c.theta, c.phi) * m;
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    d(k, k) = std::polar(1.0, p.output_phases[static_cast<std::size_t>(k)]);
  }
  return d * m;
}

// Closed-form counts written out term by term, without regrouping.
inline double bergholm_literal(int n) {
  const double branch = (n % 2 == 0) ? 14.0 / 3.0 : 10.0 / 3.0;
  return 10.0 / 3.0 * std::pow(2.0, n) + 2.0 * n * n - 12.0 * n + branch;
}

inline double plesch_literal(int n) {
  if (n % 2 == 0) {
    const int k = n / 2;
    return std::pow(2.0, k) + 5.0 / 3.0 + 23.0 / 24.0 * std::pow(2.0, 2 * k) -
           3.0 / 2.0 * std::pow(2.0, k + 1);
  }
  const int k = (n - 1) / 2;
  return -std::pow(2.0, k + 1) + 5.0 / 3.0 + 23.0 / 48.0 * std::pow(2.0, 2 * k) +
         23.0 / 48.0 * std::pow(2.0, 2 * k + 2);
}

inline double modified_literal(int n) {
  return n % 2 == 0 ? plesch_literal(n) + n : plesch_literal(n) + n - 1;
}

// Permutation matrix of CNOT(c, t) on n little-endian qubits.
inline ComplexMatrix cnot_matrix(int n, int c, int t) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Eigen::Index j = ((i >> c) & 1) ? (i ^ (Eigen::Index{1} << t)) : i;
    m(j, i) = 1.0;
  }
  return m;
}

// Total C V^2 / 2 over shifters with V = V_pi phase / pi, phases taken as given.
inline double eom_energy(double capacitance, double v_pi, std::vector<double> phases) {
  double sum = 0.0;
  for (double p : phases) {
    const double v = v_pi * p / std::numbers::pi;
    sum += v * v;
  }
  return capacitance * sum / 2.0;
}

}  // namespace qspe::oracle
