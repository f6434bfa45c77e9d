// Haar Monte Carlo sweeps of state-preparation energy and CNOT-count tables.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qspe/circuits.hpp"
#include "qspe/energy.hpp"
#include "qspe/numerics.hpp"

namespace qspe {

enum class Encoding { kQudit, kQubitProgrammable, kQubitDedicated };

std::string to_string(Encoding e);
/// Accepts "qudit", "qubit-programmable", "qubit-dedicated" (underscores too).
Encoding parse_encoding(const std::string& s);

struct QuditEnergy {
  double mean = 0.0;
  double std = 0.0;
  /// Billed elements per trial (crossings plus output phases when billed).
  std::size_t elements = 0;
  /// Draws rejected as numerically non-unitary and resampled.
  std::size_t failures = 0;
};

/// Mean/std of mesh programming energy over Haar-random dim x dim unitaries.
/// Trial i draws from stream.substream(i); a rejected draw is replaced by
/// substream(i).substream(attempt). The reduction runs in trial order, so
/// the result does not depend on `threads`.
QuditEnergy qsp_energy_qudit(std::size_t dim, const EomModel& model,
                             const RngStream& stream, std::size_t samples,
                             unsigned threads = 1);

struct SweepSpec {
  Encoding encoding = Encoding::kQudit;
  /// Dimensions d for qudits, qubit counts n otherwise.
  std::vector<int> points;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  EomModel model;
  QubitCostOptions qubit;
  unsigned threads = 1;

  /// Throws std::invalid_argument on an empty or non-increasing point list
  /// or samples == 0.
  void validate() const;
};

struct SweepRow {
  Encoding encoding = Encoding::kQudit;
  int x = 0;
  double mean_energy = 0.0;
  double std_energy = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> cnots;
  std::optional<std::uint64_t> sqos;
  std::optional<double> attempts_log10;
  std::size_t failures = 0;
  /// Non-empty when this point could not be evaluated.
  std::string error;
};

/// One row per point. Point x uses the stream (seed, x). A point that throws
/// is recorded with its error message and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct CountRow {
  int n = 0;
  double bergholm = 0.0;
  double plesch = 0.0;
  double modified = 0.0;
};

std::vector<CountRow> count_sweep(const std::vector<int>& n_list);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

inline constexpr const char* kSweepCsvHeader =
    "x,encoding,mode,mean_energy_j,std_energy_j,samples,seed,cnots,sqos,attempts_log10";

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_counts_csv(std::ostream& os, const std::vector<CountRow>& rows);

}  // namespace qspe
