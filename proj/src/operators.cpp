#include "qneg/operators.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace qneg {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(fmt::format("{}: dimension mismatch ({} vs {})", what, a, b));
  }
}

}  // namespace

HermitianOperator::HermitianOperator(const CMatrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw InvalidInput(fmt::format("Hermitian operator must be square and nonempty, got {}x{}",
                                   entries.rows(), entries.cols()));
  }
  const double drift = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(drift < kHermitianDriftTol)) {
    throw InvalidInput(fmt::format("matrix is not Hermitian (drift {:.3e})", drift));
  }
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::conjugated_by(const CMatrix& u) const {
  require_same_dim(static_cast<int>(u.rows()), dim(), "conjugated_by");
  CMatrix r = u * m_ * u.adjoint();
  return HermitianOperator(0.5 * (r + r.adjoint()), Trusted{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim(), "operator+");
  return HermitianOperator(m_ + other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim(), "operator-");
  return HermitianOperator(m_ - other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  return HermitianOperator(m_ * scale, Trusted{});
}

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw InvalidInput("pure state must have positive dimension");
  const double norm = amps_.norm();
  if (!(std::abs(norm - 1.0) <= kStateNormTol)) {
    throw InvalidInput(fmt::format("pure state is not normalized (norm {:.15g})", norm));
  }
}

PureState PureState::normalized(const CVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidInput("cannot normalize a zero vector");
  return PureState(amplitudes / norm);
}

PureState PureState::basis(int dim, int index) {
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return PureState(v);
}

HermitianOperator PureState::projector() const {
  return HermitianOperator(amps_ * amps_.adjoint());
}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (!(std::abs(tr - 1.0) <= kDensityTraceTol)) {
    throw InvalidInput(fmt::format("density matrix trace is {:.15g}, expected 1", tr));
  }
  const double lowest = eigenvalues(op_)(0);
  if (lowest < -kDensityEigenTol) {
    throw InvalidInput(fmt::format("density matrix has negative eigenvalue {:.3e}", lowest));
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(HermitianOperator::identity(dim) * (1.0 / dim));
}

double trace_inner_product(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "trace_inner_product");
  // Tr(ab) = sum_ij a_ij b_ji = sum_ij a_ij conj(b_ij) for Hermitian b.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

double expectation(const HermitianOperator& h, const PureState& psi) {
  require_same_dim(h.dim(), psi.dim(), "expectation");
  return psi.amplitudes().dot(h.matrix() * psi.amplitudes()).real();
}

double max_abs_diff(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Eigensystem eigensystem(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigenvalues(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");
  return solver.eigenvalues();
}

MinEigenpair min_eigenpair(const HermitianOperator& h) {
  auto es = eigensystem(h);
  return {es.values(0), PureState::normalized(es.vectors.col(0))};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PureState random_pure_state(int dim, std::mt19937_64& rng) {
  if (dim < 2) throw InvalidInput(fmt::format("random_pure_state needs dim >= 2, got {}", dim));
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return PureState::normalized(v);
}

PureState random_pure_state(int dim, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  return random_pure_state(dim, rng);
}

}  // namespace qneg
