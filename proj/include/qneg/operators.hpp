#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qneg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Input that violates a type invariant (non-Hermitian, not normalized, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

inline constexpr double kHermitianDriftTol = 1e-12;
inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kDensityTraceTol = 1e-12;
inline constexpr double kDensityEigenTol = 1e-10;

/// Dense d x d complex Hermitian matrix.
///
/// Construction symmetrizes (a + a^dagger)/2 when the largest elementwise
/// drift |a_ij - conj(a_ji)| is below 1e-12 and throws InvalidInput otherwise.
/// Instances are immutable.
class HermitianOperator {
 public:
  explicit HermitianOperator(const CMatrix& entries);

  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);
  static HermitianOperator diagonal(std::span<const double> values);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }
  double trace() const { return m_.trace().real(); }

  /// Conjugation U h U^dagger; U must be unitary for the result to keep the
  /// spectrum, but only Hermiticity is required here.
  HermitianOperator conjugated_by(const CMatrix& u) const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;
  friend HermitianOperator operator*(double scale, const HermitianOperator& h) {
    return h * scale;
  }

 private:
  struct Trusted {};
  HermitianOperator(CMatrix entries, Trusted) : m_(std::move(entries)) {}

  CMatrix m_;
};

/// Unit vector in C^d.
class PureState {
 public:
  /// The one-dimensional state (1); placeholder for default-built records.
  PureState() : amps_(CVector::Ones(1)) {}

  /// Throws InvalidInput unless |amplitudes| = 1 within 1e-12.
  explicit PureState(CVector amplitudes);

  /// Rescales to unit norm; throws InvalidInput for a zero vector.
  static PureState normalized(const CVector& amplitudes);
  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_(i); }

  HermitianOperator projector() const;

 private:
  CVector amps_;
};

/// Positive semidefinite unit-trace Hermitian operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op);
  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }

 private:
  HermitianOperator op_;
};

/// Re Tr(a b).
double trace_inner_product(const HermitianOperator& a, const HermitianOperator& b);

/// <psi| h |psi>
double expectation(const HermitianOperator& h, const PureState& psi);

/// Largest elementwise |a_ij - b_ij|.
double max_abs_diff(const HermitianOperator& a, const HermitianOperator& b);

/// Full spectral decomposition, eigenvalues ascending.
struct Eigensystem {
  Eigen::VectorXd values;
  CMatrix vectors;  // columns
};

Eigensystem eigensystem(const HermitianOperator& h);
Eigen::VectorXd eigenvalues(const HermitianOperator& h);

struct MinEigenpair {
  double value;
  PureState vector;
};

MinEigenpair min_eigenpair(const HermitianOperator& h);

/// Per-stream seed derived from a base seed and a stream index (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Haar-random pure state: i.i.d. complex standard normal components,
/// normalized. Throws InvalidInput for dim < 2.
PureState random_pure_state(int dim, std::uint64_t rng_seed);
PureState random_pure_state(int dim, std::mt19937_64& rng);

}  // namespace qneg
