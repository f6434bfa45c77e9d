// Qubit state-preparation circuits: CNOT-count bounds, nearest-neighbor
// template synthesis, and the photonic cost of CNOTs and single-qubit
// operations on a programmable or dedicated mesh.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "qspe/energy.hpp"
#include "qspe/numerics.hpp"

namespace qspe {

struct Cnot {
  std::size_t control = 0;
  std::size_t target = 0;
  friend bool operator==(const Cnot&, const Cnot&) = default;
};

/// Single-qubit operation slot. `params` are the three Euler angles of
///   [[cos(t/2),            -e^{i l} sin(t/2)],
///    [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]]   with (t, p, l) = params.
/// All-zero params is the identity.
struct Sqo {
  std::size_t qubit = 0;
  std::array<double, 3> params{};
  friend bool operator==(const Sqo&, const Sqo&) = default;
};

using Gate = std::variant<Cnot, Sqo>;

struct GateCircuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;

  std::size_t cnot_count() const;
  std::size_t sqo_count() const;
  /// True when every CNOT acts on adjacent lines.
  bool nearest_neighbor() const;
  /// Throws std::invalid_argument on out-of-range indices or control == target.
  void validate() const;
};

// Closed-form CNOT counts for n-qubit state preparation. All require n >= 2
// and throw std::invalid_argument otherwise. Values are real: the bounds
// are not integers for every n.
double cnot_count_bergholm(int n);
double cnot_count_plesch(int n);
/// Plesch bound plus the cost of replacing its long-range CNOTs with
/// nearest-neighbor ones (+n for even n, +n-1 for odd n).
double cnot_count_modified(int n);

/// Nearest-neighbor replacement of CNOT(control, target) for
/// |control - target| >= 2: C(c,c+1) C(c+1,t) C(c,c+1), with the middle
/// gate expanded recursively when it is still long-range. Emits 2|c-t|-1
/// gates. Throws std::invalid_argument for distance < 2.
std::vector<Gate> decompose_long_range(std::size_t control, std::size_t target);

inline constexpr int kMaxTemplateQubits = 24;

/// Nearest-neighbor state-preparation template.
///
/// n = 2 is the three alternating CNOTs C(0,1) C(1,0) C(0,1). For n >= 3 the
/// lines split into A = [0, floor(n/2)) and B = the rest, and the circuit is
///   1. a state-preparation block on A,
///   2. CNOT(i, |A| + i) for every i in A, long-range ones decomposed,
///   3./4. unitary blocks on A and on B, interleaved gate by gate.
/// Blocks are NN CNOT ladders whose lengths follow the Plesch accounting
/// (2^k - k - 1 for preparation, 23/48 4^k - 3/2 2^k + 4/3 for a unitary).
/// Every CNOT is preceded by an SQO slot on both of its lines and each line
/// ends with one SQO slot; slot angles are zero.
/// Throws std::invalid_argument unless 2 <= n <= kMaxTemplateQubits.
GateCircuit build_modified_plesch(int n);

/// Counts of the template above without materializing it.
struct TemplateCounts {
  std::uint64_t cnots = 0;
  std::uint64_t sqos = 0;
};
TemplateCounts modified_plesch_counts(int n);

/// log10 of the expected number of repetitions when `cnots` heralded gates,
/// each succeeding with probability 1/9, must all succeed.
double expected_attempts_log10(double cnots);

struct ResourceCounts {
  std::size_t qubit_waveguides = 0;
  std::size_t qubit_photons = 0;
  std::size_t qudit_waveguides = 0;
  std::size_t qudit_photons = 0;
};
/// Path-encoding resources for a d-dimensional state; d must be a power of
/// two >= 2.
ResourceCounts resource_counts(std::uint64_t dim);

// ---------------------------------------------------------------------------
// Hardware cost

/// Settings of the 6-mode heralded CNOT on a Clements mesh.
inline constexpr double kHalfReflectivityTheta = 1.0471975511965976;  // pi/3
double third_reflectivity_theta();  // acos(1/3)

struct BlockCost {
  double e_identity = 0.0;
  double e_half = 0.0;
  double e_third = 0.0;
  double e_block = 0.0;
  std::size_t identity_count = 0;
  std::size_t half_count = 0;
  std::size_t third_count = 0;
};

/// The 15-crossing, 6-mode program of one CNOT block: 10 identity, 2 at
/// reflectivity 1/2, 3 at reflectivity 1/3, zero external and output
/// phases.
MeshProgram cnot_block_program();

/// Energy of one programmable CNOT block.
///
/// With `pad_idle_modes`, the block is billed across the full 2n-mode device:
/// a six-column slice of a 2n-mode rectangular mesh has 6n - 3 crossings,
/// and the ones outside the 6-mode gate are set to identity.
BlockCost map_cnot_block(const EomModel& model, bool pad_idle_modes = false,
                         int n_qubits = 3);

/// Programming energy of the single crossing realizing a 2x2 unitary
/// (internal phase plus external phase; the output diagonal is not billed).
double sqo_energy(const EomModel& model, const ComplexMatrix& u2);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

/// Mean and standard deviation of sqo_energy over Haar-random 2x2
/// unitaries; sample i draws from stream.substream(i). Throws
/// std::invalid_argument when samples == 0.
MeanStd sqo_cost(const EomModel& model, const RngStream& stream,
                 std::size_t samples, unsigned threads = 1);

enum class QubitHardware { kProgrammable, kDedicated };

struct QubitCostOptions {
  /// Scales the SQO slot count in the energy sum.
  double sqo_multiplier = 1.0;
  /// Bill 15 SQOs at n = 2 instead of the slot rule's 8.
  bool two_qubit_sqo_override = true;
  bool pad_idle_modes = false;
  /// Dedicated blocks keep `trim_phases` correction shifters each, with
  /// phases drawn from |Normal(0, trim_sigma)|.
  std::size_t trim_phases = 5;
  double trim_sigma = 0.1;
  unsigned threads = 1;
};

struct QubitEnergy {
  double mean = 0.0;
  double std = 0.0;
  double cnots = 0.0;
  std::uint64_t sqos = 0;
  double per_cnot = 0.0;  // e_block or trim cost
  MeanStd sqo;
};

/// CNOT and SQO counts used for energy: template counts for
/// n <= kMaxTemplateQubits, ceil(cnot_count_modified) and the slot rule
/// beyond.
TemplateCounts qubit_counts(int n, const QubitCostOptions& options);

/// Mean programming energy of an n-qubit state preparation:
/// cnots * per_cnot + multiplier * sqos * mean_sqo. The standard deviation
/// treats every SQO (and trim phase) as an independent draw.
QubitEnergy qsp_energy_qubits(int n, QubitHardware mode, const EomModel& model,
                              const RngStream& stream, std::size_t samples,
                              const QubitCostOptions& options = {});

}  // namespace qspe
