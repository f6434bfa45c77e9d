// Rectangular (Clements) Mach-Zehnder meshes: compile a unitary into
// two-mode crossings plus an output phase column, and evaluate programs
// back into matrices.
#pragma once

#include <cstddef>
#include <vector>

#include "qspe/numerics.hpp"

namespace qspe {

/// One tunable beam splitter acting on modes (top_mode, top_mode + 1).
///
/// Its 2x2 block is [[e^{i phi} cos(theta), -sin(theta)],
///                   [e^{i phi} sin(theta),  cos(theta)]],
/// i.e. amplitude reflectivity cos(theta) and a phase shift phi on the
/// top input.
struct Crossing {
  std::size_t layer = 0;
  std::size_t top_mode = 0;
  double theta = 0.0;  // [0, pi/2]
  double phi = 0.0;    // [0, 2 pi)

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Compiled form U = D * T_k * ... * T_1.
///
/// `crossings` is stored in the order light meets them: crossings.front()
/// acts first on the input (rightmost factor). `output_phases` are the
/// diagonal of D.
struct MeshProgram {
  std::size_t dim = 0;
  std::vector<Crossing> crossings;
  std::vector<double> output_phases;
};

/// The identity-padded dim x dim beam-splitter matrix for one crossing.
/// Throws std::invalid_argument if top_mode > dim - 2.
ComplexMatrix t_matrix(std::size_t dim, std::size_t top_mode, double theta,
                       double phi);

/// Clements decomposition. Throws ValidationError when `u` is not unitary
/// to kUnitaryTolerance (the message carries ||U^dagger U - I||_F).
MeshProgram clements_decompose(const ComplexMatrix& u);

/// Evaluates D * product of t_matrix factors. Throws std::invalid_argument
/// for malformed programs (bad mode indices, wrong phase count).
ComplexMatrix mesh_reconstruct(const MeshProgram& p);

/// Output amplitudes for a photon entering mode 0: column 0 of the
/// reconstructed unitary.
ComplexVector qsp_column(const MeshProgram& p);

/// Checks the Crossing range invariants; throws std::invalid_argument.
void validate_program(const MeshProgram& p);

/// Wraps an angle into [0, 2 pi).
double wrap_positive(double angle);

/// Reassigns layer indices by as-soon-as-possible placement in list order.
/// Crossings sharing a layer act on disjoint mode pairs.
void assign_layers(MeshProgram& p);

}  // namespace qspe
