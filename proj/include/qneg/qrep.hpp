#pragma once

#include <span>
#include <string>
#include <vector>

#include "qneg/operators.hpp"

namespace qneg {

inline constexpr double kQRepTraceTol = 1e-10;
inline constexpr double kQRepGramTol = 1e-9;
inline constexpr double kQRepSumTol = 1e-9;
inline constexpr double kQuasiprobSumTol = 1e-10;
inline constexpr double kPovmEffectTol = 1e-10;
inline constexpr double kPovmSumTol = 1e-9;

class InvalidQRep : public Error {
 public:
  using Error::Error;
};

/// Largest violation of each defining property of a Q-rep:
///   Tr Q_j = 1,  Tr(Q_i Q_j) = d delta_ij,  sum_j Q_j = d I.
struct QRepValidation {
  int dim = 0;
  std::size_t count = 0;
  double max_trace_violation = 0.0;
  double max_gram_violation = 0.0;
  double max_sum_violation = 0.0;
  bool passed = false;

  std::string summary() const;
};

/// Throws DimensionMismatch on wrong count (!= d^2) or mixed dimensions.
QRepValidation validate_qrep(std::span<const HermitianOperator> candidate);

/// Self-dual orthogonal Hermitian basis {Q_j} with d^2 elements. The frame
/// F_j = Q_j / d is never stored; factors of 1/d are applied by callers.
class QRep {
 public:
  /// Validates and throws InvalidQRep on failure.
  QRep(std::vector<HermitianOperator> elements, std::string label);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const HermitianOperator& operator[](std::size_t j) const { return elements_[j]; }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  const std::string& label() const { return label_; }
  const QRepValidation& validation() const { return validation_; }

  /// Same Q-rep with elements reordered: result[k] = (*this)[order[k]].
  QRep permuted(std::span<const std::size_t> order) const;

 private:
  int dim_;
  std::vector<HermitianOperator> elements_;
  std::string label_;
  QRepValidation validation_;
};

/// Real vector summing to one; entries may be negative.
class QuasiprobVector {
 public:
  explicit QuasiprobVector(std::vector<double> entries);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<double>& entries() const { return entries_; }
  std::span<const double> view() const { return entries_; }
  double l2_norm() const;

 private:
  std::vector<double> entries_;
};

/// Positive semidefinite effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<HermitianOperator> effects);

  static Povm computational_basis(int dim);

  int dim() const { return effects_.front().dim(); }
  std::size_t size() const { return effects_.size(); }
  const HermitianOperator& operator[](std::size_t j) const { return effects_[j]; }
  const std::vector<HermitianOperator>& effects() const { return effects_; }

 private:
  std::vector<HermitianOperator> effects_;
};

/// entries[i] = Tr(rho Q_i) / d.
QuasiprobVector represent(const DensityMatrix& rho, const QRep& q);
QuasiprobVector represent(const PureState& psi, const QRep& q);

/// sum_j v[j] Q_j.
HermitianOperator reconstruct(const QuasiprobVector& v, const QRep& q);

/// r[j][i] = Tr(Q_i G_j); rows indexed by effect, columns by Q-rep element.
std::vector<std::vector<double>> conditional_matrix(const QRep& q, const Povm& g);

/// Born rule evaluated directly (lhs[j] = Tr(rho G_j)) and through the
/// quasiprobability law of total probability (rhs[j] = sum_i p(i) r(j|i)).
struct BornComparison {
  std::vector<double> lhs;
  std::vector<double> rhs;

  double max_deviation() const;
};

BornComparison born_lhs_rhs(const DensityMatrix& rho, const QRep& q, const Povm& g);

}  // namespace qneg
