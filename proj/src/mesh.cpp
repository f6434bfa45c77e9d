#include "qspe/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace qspe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rotation {
  std::size_t top_mode;
  double theta;
  double phi;
};

// rows (m, m+1) <- T(theta, phi) * rows
void apply_left(ComplexMatrix& w, const Rotation& r) {
  const Complex e = std::polar(1.0, r.phi);
  const double c = std::cos(r.theta);
  const double s = std::sin(r.theta);
  const auto m = static_cast<Eigen::Index>(r.top_mode);
  for (Eigen::Index k = 0; k < w.cols(); ++k) {
    const Complex top = w(m, k);
    const Complex bottom = w(m + 1, k);
    w(m, k) = e * c * top - s * bottom;
    w(m + 1, k) = e * s * top + c * bottom;
  }
}

// cols (m, m+1) <- cols * T(theta, phi)^dagger
void apply_right_inverse(ComplexMatrix& w, const Rotation& r) {
  const Complex e = std::polar(1.0, -r.phi);
  const double c = std::cos(r.theta);
  const double s = std::sin(r.theta);
  const auto m = static_cast<Eigen::Index>(r.top_mode);
  for (Eigen::Index k = 0; k < w.rows(); ++k) {
    const Complex left = w(k, m);
    const Complex right = w(k, m + 1);
    w(k, m) = e * c * left - s * right;
    w(k, m + 1) = e * s * left + c * right;
  }
}

// Right multiplication by T^-1 on columns (m, m+1) that zeroes w(row, m).
Rotation null_from_right(const ComplexMatrix& w, Eigen::Index row,
                         std::size_t m) {
  const auto col = static_cast<Eigen::Index>(m);
  const Complex a = w(row, col);
  const Complex b = w(row, col + 1);
  const double theta = std::atan2(std::abs(a), std::abs(b));
  const double phi =
      (a == 0.0 || b == 0.0) ? 0.0 : std::arg(a) - std::arg(b);
  return {m, theta, wrap_positive(phi)};
}

// Left multiplication by T on rows (m, m+1) that zeroes w(m+1, col).
Rotation null_from_left(const ComplexMatrix& w, std::size_t m,
                        Eigen::Index col) {
  const auto row = static_cast<Eigen::Index>(m);
  const Complex a = w(row, col);
  const Complex b = w(row + 1, col);
  const double theta = std::atan2(std::abs(b), std::abs(a));
  const double phi = (a == 0.0 || b == 0.0)
                         ? 0.0
                         : std::arg(b) - std::arg(a) + std::numbers::pi;
  return {m, theta, wrap_positive(phi)};
}

}  // namespace

double wrap_positive(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a value just below a multiple of 2 pi can round up to 2 pi.
  if (w >= kTwoPi) w = 0.0;
  return w;
}

ComplexMatrix t_matrix(std::size_t dim, std::size_t top_mode, double theta,
                       double phi) {
  if (dim < 2 || top_mode > dim - 2) {
    throw std::invalid_argument("t_matrix: top_mode " +
                                std::to_string(top_mode) +
                                " out of range for dim " +
                                std::to_string(dim));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix t = ComplexMatrix::Identity(n, n);
  const auto m = static_cast<Eigen::Index>(top_mode);
  const Complex e = std::polar(1.0, phi);
  t(m, m) = e * std::cos(theta);
  t(m, m + 1) = -std::sin(theta);
  t(m + 1, m) = e * std::sin(theta);
  t(m + 1, m + 1) = std::cos(theta);
  return t;
}

MeshProgram clements_decompose(const ComplexMatrix& u) {
  const double defect = unitarity_defect(u);
  if (!(defect < kUnitaryTolerance)) {
    std::ostringstream msg;
    msg << "clements_decompose: input is not unitary, ||U^dagger U - I||_F = "
        << defect;
    throw ValidationError(msg.str());
  }
  const auto n = static_cast<std::size_t>(u.rows());
  const auto ni = u.rows();
  ComplexMatrix w = u;

  std::vector<Rotation> right;  // application order, input side
  std::vector<Rotation> left;   // application order, output side
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (i % 2 == 0) {
        const std::size_t m = i - j;
        const Rotation r =
            null_from_right(w, ni - 1 - static_cast<Eigen::Index>(j), m);
        apply_right_inverse(w, r);
        right.push_back(r);
      } else {
        const std::size_t m = n - 2 - i + j;
        const Rotation r = null_from_left(w, m, static_cast<Eigen::Index>(j));
        apply_left(w, r);
        left.push_back(r);
      }
    }
  }

  // w is now diagonal: L_k..L_1 U R_1^-1..R_k^-1 = D. Move every L^-1 to
  // the right of D using T^-1(t, p) diag(d1, d2) = diag(d1', d2') T(t, p').
  std::vector<Complex> diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    diag[k] = w(kk, kk);
  }
  std::vector<Rotation> folded;
  folded.reserve(left.size());
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    const std::size_t m = it->top_mode;
    const Complex d1 = diag[m];
    const Complex d2 = diag[m + 1];
    if (std::sin(it->theta) == 0.0) {
      diag[m] = std::polar(1.0, -it->phi) * d1;
      folded.push_back({m, it->theta, 0.0});
    } else {
      diag[m] = -std::polar(1.0, -it->phi) * d2;
      folded.push_back(
          {m, it->theta,
           wrap_positive(std::arg(d1) - std::arg(d2) + std::numbers::pi)});
    }
  }

  MeshProgram p;
  p.dim = n;
  p.crossings.reserve(right.size() + folded.size());
  for (const auto& r : right) p.crossings.push_back({0, r.top_mode, r.theta, r.phi});
  for (const auto& r : folded) p.crossings.push_back({0, r.top_mode, r.theta, r.phi});
  p.output_phases.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    p.output_phases[k] = wrap_positive(std::arg(diag[k]));
  }
  assign_layers(p);
  return p;
}

void assign_layers(MeshProgram& p) {
  std::vector<std::size_t> next_free(p.dim, 0);
  for (auto& c : p.crossings) {
    const std::size_t layer = std::max(next_free[c.top_mode], next_free[c.top_mode + 1]);
    c.layer = layer;
    next_free[c.top_mode] = next_free[c.top_mode + 1] = layer + 1;
  }
}

void validate_program(const MeshProgram& p) {
  if (p.dim == 0) throw std::invalid_argument("mesh program: dim must be >= 1");
  if (p.output_phases.size() != p.dim) {
    throw std::invalid_argument("mesh program: expected " + std::to_string(p.dim) +
                                " output phases, got " +
                                std::to_string(p.output_phases.size()));
  }
  for (std::size_t i = 0; i < p.crossings.size(); ++i) {
    const auto& c = p.crossings[i];
    if (p.dim < 2 || c.top_mode > p.dim - 2) {
      throw std::invalid_argument("mesh program: crossing " + std::to_string(i) +
                                  " has top_mode " + std::to_string(c.top_mode) +
                                  " outside [0, dim-2]");
    }
    if (!std::isfinite(c.theta) || !std::isfinite(c.phi)) {
      throw std::invalid_argument("mesh program: crossing " + std::to_string(i) +
                                  " has a non-finite angle");
    }
  }
}

ComplexMatrix mesh_reconstruct(const MeshProgram& p) {
  validate_program(p);
  const auto n = static_cast<Eigen::Index>(p.dim);
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  for (const auto& c : p.crossings) apply_left(m, {c.top_mode, c.theta, c.phi});
  for (Eigen::Index k = 0; k < n; ++k) {
    m.row(k) *= std::polar(1.0, p.output_phases[static_cast<std::size_t>(k)]);
  }
  return m;
}

ComplexVector qsp_column(const MeshProgram& p) {
  return mesh_reconstruct(p).col(0);
}

}  // namespace qspe
