// Dense complex linear algebra helpers, reproducible random streams and
// Haar-random unitary sampling.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace qspe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Frobenius tolerance used for unitarity and roundtrip checks.
inline constexpr double kUnitaryTolerance = 1e-10;

/// Raised when an input fails a numerical validity check (e.g. a matrix
/// that should be unitary is not). The message names the defect.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ||a - b||_F. Throws std::invalid_argument on a shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||U^dagger U - I||_F; +inf for a non-square matrix.
double unitarity_defect(const ComplexMatrix& u);

bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTolerance);

/// Identifies one independent random sequence. Two streams with equal
/// (seed, stream_index) always produce the same numbers.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  /// A child stream keyed by `key`; distinct keys give unrelated sequences.
  [[nodiscard]] RngStream substream(std::uint64_t key) const;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Engine bound to one RngStream. Uniform and normal deviates are derived
/// from the raw 64-bit output with fixed formulas so that sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(const RngStream& stream);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-distributed dim x dim unitary: complex Ginibre sample, Householder
/// QR, then each column of Q rescaled by the phase of R's diagonal.
/// Throws std::invalid_argument when dim == 0.
ComplexMatrix haar_unitary(std::size_t dim, Rng& rng);
ComplexMatrix haar_unitary(std::size_t dim, const RngStream& stream);

/// Runs body(i) for every i in [0, count) on up to `threads` workers.
/// Work is split into contiguous chunks; callers keep results indexed by i
/// so that any reduction is independent of the schedule. threads == 0 uses
/// the hardware concurrency. The first exception thrown by a worker is
/// rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace qspe
