#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qneg/operators.hpp"
#include "qneg/qrep.hpp"

namespace qneg {

inline constexpr double kSicRankTol = 1e-9;
inline constexpr double kSicOverlapTol = 1e-8;
inline constexpr double kSicOverlapTolExact = 1e-12;

/// Largest deviations from Tr Pi_j = Tr Pi_j^2 = 1 and
/// Tr(Pi_i Pi_j) = (d delta_ij + 1)/(d + 1).
struct SicValidation {
  double max_rank_violation = 0.0;
  double max_overlap_violation = 0.0;
  bool passed = false;
};

SicValidation validate_sic(std::span<const HermitianOperator> projectors, double overlap_tol);

/// d^2 rank-one projectors with equiangular Gram matrix.
class SicSystem {
 public:
  /// Throws InvalidInput unless the projectors form a SIC within `overlap_tol`.
  SicSystem(std::vector<HermitianOperator> projectors, std::string fiducial_label,
            double overlap_tol = kSicOverlapTol);

  int dim() const { return projectors_.front().dim(); }
  const std::vector<HermitianOperator>& projectors() const { return projectors_; }
  const HermitianOperator& operator[](std::size_t j) const { return projectors_[j]; }
  std::size_t size() const { return projectors_.size(); }
  const std::string& fiducial_label() const { return label_; }
  const SicValidation& validation() const { return validation_; }

 private:
  std::vector<HermitianOperator> projectors_;
  std::string label_;
  SicValidation validation_;
};

/// Shipped fiducial labels: d2, d3-hesse, d4, d5, d8-hoggar.
const std::vector<std::string>& sic_labels();

/// Embedded fiducial vector for a shipped label.
PureState sic_fiducial(std::string_view label);

/// WH orbit (three-qubit WH orbit for d8-hoggar) of the embedded fiducial.
/// Throws InvalidInput for unknown labels and when the embedded data fails
/// SIC validation.
SicSystem load_sic(std::string_view label);

/// Tr(Pi_i Pi_j).
Eigen::MatrixXd gram_matrix(std::span<const HermitianOperator> ops);

struct SicQReps {
  QRep plus;
  QRep minus;
};

/// Q_j^(+/-) = -/+ sqrt(d+1) Pi_j + (1 +/- sqrt(d+1))/d I.
SicQReps sic_qreps(const SicSystem& s);

/// Extreme ceiling negativities over all Q-reps in dimension d.
struct CeilingBounds {
  int dim = 0;
  double n_plus = 0.0;
  double n_minus = 0.0;
};

CeilingBounds ceiling_bounds(int d);

/// Born rule through the SIC outcome probabilities:
/// q(j) = sum_i [(d+1) p(i) - 1/d] r(j|i), p(i) = Tr(rho Pi_i)/d, r(j|i) = Tr(Pi_i G_j).
std::vector<double> urgleichung_rhs(const DensityMatrix& rho, const SicSystem& s, const Povm& g);

}  // namespace qneg
