#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qneg/operators.hpp"

namespace qneg {

/// Shift X|j> = |j+1 mod d> and phase Z|j> = omega^j |j> in dimension d.
class WhGroup {
 public:
  explicit WhGroup(int dim);

  int dim() const { return dim_; }
  const CMatrix& shift() const { return x_; }
  const CMatrix& phase() const { return z_; }
  Complex omega() const { return omega_; }

  /// X^i Z^j, phase factors dropped.
  CMatrix displacement(int i, int j) const;

 private:
  int dim_;
  Complex omega_;
  CMatrix x_;
  CMatrix z_;
};

/// Orbit {X^i Z^j F (X^i Z^j)^dagger}, ordered lexicographically by (i, j),
/// i.e. element index i*d + j.
std::vector<HermitianOperator> wh_orbit(const HermitianOperator& fiducial);
std::vector<HermitianOperator> wh_orbit(const HermitianOperator& fiducial, int dim);

/// Orbit under the tensor product of `factors` qubit WH groups (dimension
/// 2^factors). Elements are ordered lexicographically in the index pairs
/// (i1, j1, i2, j2, ...), the first factor being the most significant.
std::vector<HermitianOperator> tensor_wh_orbit(const HermitianOperator& fiducial, int factors = 3);

/// Orbit index after translating the group label (i, j) -> (i + s, j + t).
std::size_t wh_translate_index(std::size_t index, int dim, int s, int t);

// ---------------------------------------------------------------------------
// d = 3 WH Q-rep fiducials. Matrix layout
//
//   [ a   y   x ]
//   [ y*  f   v ]
//   [ x*  v*  1-a-f ]
//
// generates a Q-rep iff
//   a^2 + a f + f^2 = a + f,   |y|^2 + |x|^2 + |v|^2 = 1,   x y + y* v + v* x* = 0.

inline constexpr double kWhFiducialTol = 1e-9;

class SamplingFailure : public Error {
 public:
  using Error::Error;
};

struct WhFiducialD3 {
  double a = 0.0;
  double f = 0.0;
  Complex y;
  Complex x;
  Complex v;

  HermitianOperator matrix() const;
  static WhFiducialD3 from_matrix(const HermitianOperator& m);
};

struct WhFiducialCheck {
  double diagonal_residual = 0.0;
  double modulus_residual = 0.0;
  double phase_residual = 0.0;
  bool passed = false;
};

/// Throws DimensionMismatch for non-3x3 input and InvalidInput when the
/// trace differs from 1 by more than 1e-10.
WhFiducialCheck check_wh_fiducial_d3(const HermitianOperator& m);

/// Coordinates on the fiducial manifold. `diag_angle` places (a, f) on the
/// ellipse; (polar, azimuth) place (|y|, |x|, |v|) on the unit sphere; the
/// phase of v is free; `branch` in [0, 6) selects one of the discrete phase
/// solutions for y and x.
struct WhFiducialParams {
  double diag_angle = 0.0;
  double polar = 0.0;
  double azimuth = 0.0;
  double v_phase = 0.0;
  int branch = 0;
};

inline constexpr int kWhPhaseBranches = 6;

/// Diagonal (a, f) for an ellipse angle.
std::array<double, 2> wh_diagonal_d3(double diag_angle);

/// Throws SamplingFailure when the moduli admit no phase solution.
WhFiducialD3 sample_wh_fiducial_d3(const WhFiducialParams& params);

/// offdiag = (polar, azimuth, v_phase). With a seed the branch is drawn from
/// it, otherwise branch 0 is used.
WhFiducialD3 sample_wh_fiducial_d3(double diag_angle, const std::array<double, 3>& offdiag,
                                   std::optional<std::uint64_t> rng_seed = std::nullopt);

std::optional<WhFiducialD3> try_sample_wh_fiducial_d3(const WhFiducialParams& params);

/// Uniform draw of all coordinates (sphere-uniform moduli).
WhFiducialParams random_wh_params(std::mt19937_64& rng);

/// Redraws until a feasible point is found. Throws SamplingFailure after
/// `max_attempts`.
std::pair<WhFiducialParams, WhFiducialD3> random_wh_fiducial_d3(std::mt19937_64& rng,
                                                                int max_attempts = 1000);

/// Inverse of sample_wh_fiducial_d3 for a valid fiducial. Throws
/// SamplingFailure if no branch reproduces the matrix within `tol`.
WhFiducialParams wh_params_d3(const HermitianOperator& fiducial, double tol = 1e-8);

/// The two explicit non-SIC fiducials with extreme sum negativity.
HermitianOperator qmin_fiducial();
HermitianOperator qmax_fiducial();

}  // namespace qneg
