#include "qspe/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qspe {

StateVector StateVector::zero(std::size_t n_qubits) {
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  s.amplitudes(0) = 1.0;
  return s;
}

void StateVector::validate() const {
  if (n_qubits > 30 ||
      amplitudes.size() != (Eigen::Index{1} << n_qubits)) {
    throw std::invalid_argument("state vector: expected 2^n amplitudes for n = " +
                                std::to_string(n_qubits));
  }
  const double norm = amplitudes.norm();
  if (!(std::abs(norm - 1.0) < kUnitaryTolerance)) {
    throw std::invalid_argument("state vector: norm " + std::to_string(norm) +
                                " is not 1");
  }
}

Eigen::Matrix2cd sqo_matrix(const SqoAngles& a) {
  const double c = std::cos(a[0] / 2.0);
  const double s = std::sin(a[0] / 2.0);
  Eigen::Matrix2cd m;
  m(0, 0) = c;
  m(0, 1) = -std::polar(s, a[2]);
  m(1, 0) = std::polar(s, a[1]);
  m(1, 1) = std::polar(c, a[1] + a[2]);
  return m;
}

namespace {

void apply_sqo(ComplexVector& psi, std::size_t qubit, const Eigen::Matrix2cd& m) {
  const Eigen::Index bit = Eigen::Index{1} << qubit;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = psi(i);
    const Complex a1 = psi(i | bit);
    psi(i) = m(0, 0) * a0 + m(0, 1) * a1;
    psi(i | bit) = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void apply_cnot(ComplexVector& psi, const Cnot& g) {
  const Eigen::Index cbit = Eigen::Index{1} << g.control;
  const Eigen::Index tbit = Eigen::Index{1} << g.target;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(psi(i), psi(i | tbit));
  }
}

StateVector run(const GateCircuit& circuit, std::span<const SqoAngles>* params) {
  circuit.validate();
  if (circuit.n_qubits > kMaxSimQubits) {
    throw std::invalid_argument("simulate: at most " + std::to_string(kMaxSimQubits) +
                                " qubits supported, got " +
                                std::to_string(circuit.n_qubits));
  }
  if (params != nullptr && params->size() != circuit.sqo_count()) {
    throw std::invalid_argument("simulate: " + std::to_string(circuit.sqo_count()) +
                                " SQO slots but " + std::to_string(params->size()) +
                                " angle assignments");
  }
  StateVector s = StateVector::zero(circuit.n_qubits);
  std::size_t slot = 0;
  for (const auto& g : circuit.gates) {
    if (const auto* c = std::get_if<Cnot>(&g)) {
      apply_cnot(s.amplitudes, *c);
    } else {
      const auto& sqo = std::get<Sqo>(g);
      const SqoAngles& a = params ? (*params)[slot] : sqo.params;
      apply_sqo(s.amplitudes, sqo.qubit, sqo_matrix(a));
      ++slot;
    }
  }
  return s;
}

std::vector<SqoAngles> unflatten(std::span<const double> flat) {
  std::vector<SqoAngles> out(flat.size() / 3);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]};
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

StateVector simulate(const GateCircuit& circuit, std::span<const SqoAngles> params) {
  return run(circuit, &params);
}

StateVector simulate(const GateCircuit& circuit) { return run(circuit, nullptr); }

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) {
    throw std::invalid_argument("fidelity: state dimensions differ");
  }
  const double f = std::norm(a.amplitudes.dot(b.amplitudes));
  return std::clamp(f, 0.0, 1.0);
}

double template_fidelity(const GateCircuit& circuit, const StateVector& target,
                         std::span<const double> flat_params) {
  if (flat_params.size() != 3 * circuit.sqo_count()) {
    throw std::invalid_argument("template_fidelity: expected " +
                                std::to_string(3 * circuit.sqo_count()) + " angles");
  }
  const auto params = unflatten(flat_params);
  return fidelity(target, simulate(circuit, params));
}

std::vector<double> template_fidelity_gradient(const GateCircuit& circuit,
                                               const StateVector& target,
                                               std::span<const double> flat_params,
                                               double step) {
  std::vector<double> x(flat_params.begin(), flat_params.end());
  std::vector<double> grad(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double x0 = x[k];
    x[k] = x0 + step;
    const double up = template_fidelity(circuit, target, x);
    x[k] = x0 - step;
    const double down = template_fidelity(circuit, target, x);
    x[k] = x0;
    grad[k] = (up - down) / (2.0 * step);
  }
  return grad;
}

FitResult optimize_template(const GateCircuit& circuit, const StateVector& target,
                            std::size_t budget, const RngStream& stream,
                            const OptimizeOptions& options) {
  circuit.validate();
  target.validate();
  if (circuit.n_qubits > kMaxOptimizeQubits) {
    throw std::invalid_argument("optimize_template: at most " +
                                std::to_string(kMaxOptimizeQubits) + " qubits supported");
  }
  if (target.n_qubits != circuit.n_qubits) {
    throw std::invalid_argument("optimize_template: target has " +
                                std::to_string(target.n_qubits) + " qubits, circuit " +
                                std::to_string(circuit.n_qubits));
  }

  const std::size_t dim = 3 * circuit.sqo_count();
  // Minimize infidelity; its gradient is minus the fidelity gradient.
  auto objective = [&](const std::vector<double>& x) {
    return 1.0 - template_fidelity(circuit, target, x);
  };
  auto gradient = [&](const std::vector<double>& x) {
    auto g = template_fidelity_gradient(circuit, target, x, options.fd_step);
    for (double& v : g) v = -v;
    return g;
  };
  const double tol = 1.0 - options.target_fidelity;

  FitResult best;
  best.fidelity = -1.0;
  std::vector<double> best_x(dim, 0.0);
  std::size_t used = 0;

  for (std::size_t restart = 0;; ++restart) {
    std::vector<double> x(dim, 0.0);
    if (restart > 0) {
      Rng rng(stream.substream(restart));
      for (double& v : x) v = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
    }
    double f = objective(x);
    if (1.0 - f > best.fidelity) {
      best.fidelity = 1.0 - f;
      best_x = x;
    }
    best.restarts = restart + 1;
    if (f <= tol) break;
    if (used >= budget) break;

    std::vector<double> g = gradient(x);
    // Inverse-Hessian approximation, row-major dim x dim.
    std::vector<double> h(dim * dim, 0.0);
    auto reset_h = [&] {
      std::fill(h.begin(), h.end(), 0.0);
      for (std::size_t i = 0; i < dim; ++i) h[i * dim + i] = 1.0;
    };
    reset_h();

    const std::size_t limit = std::min(budget, used + options.restart_iterations);
    while (used < limit && f > tol) {
      ++used;
      std::vector<double> d(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) d[i] -= h[i * dim + j] * g[j];
      }
      double slope = dot(g, d);
      if (!(slope < 0.0)) {
        reset_h();
        for (std::size_t i = 0; i < dim; ++i) d[i] = -g[i];
        slope = dot(g, d);
      }
      if (!(slope < -1e-300)) break;  // stationary point

      double alpha = 1.0;
      std::vector<double> xn(dim);
      double fn = f;
      bool accepted = false;
      while (alpha > 1e-14) {
        for (std::size_t i = 0; i < dim; ++i) xn[i] = x[i] + alpha * d[i];
        fn = objective(xn);
        if (fn <= f + 1e-4 * alpha * slope) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;

      std::vector<double> gn = gradient(xn);
      std::vector<double> s(dim), y(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        s[i] = xn[i] - x[i];
        y[i] = gn[i] - g[i];
      }
      const double sy = dot(s, y);
      if (sy > 1e-16) {
        // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
        const double rho = 1.0 / sy;
        std::vector<double> hy(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) hy[i] += h[i * dim + j] * y[j];
        }
        const double yhy = dot(y, hy);
        for (std::size_t i = 0; i < dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) {
            h[i * dim + j] += (1.0 + rho * yhy) * rho * s[i] * s[j] -
                              rho * (hy[i] * s[j] + s[i] * hy[j]);
          }
        }
      }
      x = std::move(xn);
      g = std::move(gn);
      f = fn;
      best.trace.emplace_back(restart, 1.0 - f);
      if (1.0 - f > best.fidelity) {
        best.fidelity = 1.0 - f;
        best_x = x;
      }
    }
    if (f <= tol || used >= budget) break;
  }

  best.params = unflatten(best_x);
  best.iterations = used;
  best.fidelity = std::clamp(best.fidelity, 0.0, 1.0);
  best.converged = best.fidelity >= options.target_fidelity;
  return best;
}

StateVector haar_state(std::size_t n_qubits, const RngStream& stream) {
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes = haar_unitary(std::size_t{1} << n_qubits, stream).col(0);
  return s;
}

}  // namespace qspe
