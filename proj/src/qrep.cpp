#include "qneg/qrep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace qneg {

std::string QRepValidation::summary() const {
  return fmt::format("dim={} count={} trace={:.3e} gram={:.3e} sum={:.3e} -> {}", dim, count,
                     max_trace_violation, max_gram_violation, max_sum_violation,
                     passed ? "pass" : "fail");
}

QRepValidation validate_qrep(std::span<const HermitianOperator> candidate) {
  if (candidate.empty()) throw DimensionMismatch("validate_qrep: empty candidate list");
  const int d = candidate.front().dim();
  for (const auto& op : candidate) {
    if (op.dim() != d) {
      throw DimensionMismatch(
          fmt::format("validate_qrep: mixed dimensions ({} and {})", d, op.dim()));
    }
  }
  const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  if (candidate.size() != n) {
    throw DimensionMismatch(
        fmt::format("validate_qrep: expected {} operators for d={}, got {}", n, d, candidate.size()));
  }

  QRepValidation report;
  report.dim = d;
  report.count = n;
  CMatrix total = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    report.max_trace_violation =
        std::max(report.max_trace_violation, std::abs(candidate[i].trace() - 1.0));
    total += candidate[i].matrix();
    for (std::size_t j = i; j < n; ++j) {
      const double expected = i == j ? static_cast<double>(d) : 0.0;
      const double g = trace_inner_product(candidate[i], candidate[j]);
      report.max_gram_violation = std::max(report.max_gram_violation, std::abs(g - expected));
    }
  }
  report.max_sum_violation =
      (total - static_cast<double>(d) * CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  report.passed = report.max_trace_violation <= kQRepTraceTol &&
                  report.max_gram_violation <= kQRepGramTol &&
                  report.max_sum_violation <= kQRepSumTol;
  return report;
}

QRep::QRep(std::vector<HermitianOperator> elements, std::string label)
    : dim_(elements.empty() ? 0 : elements.front().dim()),
      elements_(std::move(elements)),
      label_(std::move(label)),
      validation_(validate_qrep(elements_)) {
  if (!validation_.passed) {
    throw InvalidQRep(fmt::format("'{}' is not a valid Q-rep: {}", label_, validation_.summary()));
  }
}

QRep QRep::permuted(std::span<const std::size_t> order) const {
  if (order.size() != elements_.size()) throw DimensionMismatch("QRep::permuted: wrong order size");
  std::vector<HermitianOperator> out;
  out.reserve(order.size());
  for (auto k : order) out.push_back(elements_.at(k));
  return QRep(std::move(out), label_ + "/permuted");
}

QuasiprobVector::QuasiprobVector(std::vector<double> entries) : entries_(std::move(entries)) {
  const double total = std::accumulate(entries_.begin(), entries_.end(), 0.0);
  if (!(std::abs(total - 1.0) <= kQuasiprobSumTol)) {
    throw InvalidInput(fmt::format("quasiprobability vector sums to {:.15g}, expected 1", total));
  }
}

double QuasiprobVector::l2_norm() const {
  double s = 0.0;
  for (double x : entries_) s += x * x;
  return std::sqrt(s);
}

Povm::Povm(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw InvalidInput("POVM needs at least one effect");
  const int d = effects_.front().dim();
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& e : effects_) {
    if (e.dim() != d) throw DimensionMismatch("POVM effects have mixed dimensions");
    const double lowest = eigenvalues(e)(0);
    if (lowest < -kPovmEffectTol) {
      throw InvalidInput(fmt::format("POVM effect has negative eigenvalue {:.3e}", lowest));
    }
    total += e.matrix();
  }
  const double err = (total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > kPovmSumTol) {
    throw InvalidInput(fmt::format("POVM effects do not sum to identity (error {:.3e})", err));
  }
}

Povm Povm::computational_basis(int dim) {
  std::vector<HermitianOperator> effects;
  for (int k = 0; k < dim; ++k) effects.push_back(PureState::basis(dim, k).projector());
  return Povm(std::move(effects));
}

QuasiprobVector represent(const DensityMatrix& rho, const QRep& q) {
  if (rho.dim() != q.dim()) throw DimensionMismatch("represent: state and Q-rep dimensions differ");
  std::vector<double> out(q.size());
  const double inv_d = 1.0 / q.dim();
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = trace_inner_product(rho.op(), q[i]) * inv_d;
  return QuasiprobVector(std::move(out));
}

QuasiprobVector represent(const PureState& psi, const QRep& q) {
  if (psi.dim() != q.dim()) throw DimensionMismatch("represent: state and Q-rep dimensions differ");
  std::vector<double> out(q.size());
  const double inv_d = 1.0 / q.dim();
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = expectation(q[i], psi) * inv_d;
  return QuasiprobVector(std::move(out));
}

HermitianOperator reconstruct(const QuasiprobVector& v, const QRep& q) {
  if (v.size() != q.size()) throw DimensionMismatch("reconstruct: vector length differs from Q-rep size");
  HermitianOperator acc = HermitianOperator::zero(q.dim());
  for (std::size_t j = 0; j < q.size(); ++j) acc = acc + q[j] * v[j];
  return acc;
}

std::vector<std::vector<double>> conditional_matrix(const QRep& q, const Povm& g) {
  if (g.dim() != q.dim()) throw DimensionMismatch("conditional_matrix: POVM and Q-rep dimensions differ");
  std::vector<std::vector<double>> r(g.size(), std::vector<double>(q.size()));
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < q.size(); ++i) r[j][i] = trace_inner_product(q[i], g[j]);
  }
  return r;
}

double BornComparison::max_deviation() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) worst = std::max(worst, std::abs(lhs[j] - rhs[j]));
  return worst;
}

BornComparison born_lhs_rhs(const DensityMatrix& rho, const QRep& q, const Povm& g) {
  if (rho.dim() != q.dim() || g.dim() != q.dim()) {
    throw DimensionMismatch("born_lhs_rhs: state, Q-rep and POVM dimensions differ");
  }
  const auto p = represent(rho, q);
  const auto r = conditional_matrix(q, g);
  BornComparison out;
  out.lhs.resize(g.size());
  out.rhs.assign(g.size(), 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    out.lhs[j] = trace_inner_product(rho.op(), g[j]);
    for (std::size_t i = 0; i < q.size(); ++i) out.rhs[j] += p[i] * r[j][i];
  }
  return out;
}

}  // namespace qneg
