#pragma once

#include <random>
#include <vector>

#include "qneg/operators.hpp"
#include "qneg/qrep.hpp"

namespace qneg::testing {

/// Mixture of three Haar-random pure states with random weights.
inline DensityMatrix random_density(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CMatrix m = CMatrix::Zero(d, d);
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double w = u(rng);
    total += w;
    m += w * random_pure_state(d, rng).projector().matrix();
  }
  return DensityMatrix(HermitianOperator(m / total));
}

/// Random d-outcome POVM: G_j = S^{-1/2} A_j S^{-1/2} with A_j random
/// positive and S = sum A_j.
inline Povm random_povm(int d, std::mt19937_64& rng) {
  std::vector<CMatrix> a;
  CMatrix s = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    CMatrix r = random_density(d, rng).op().matrix();
    a.push_back(r);
    s += r;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  const CMatrix inv_sqrt =
      es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  std::vector<HermitianOperator> effects;
  for (const auto& x : a) {
    CMatrix g = inv_sqrt * x * inv_sqrt;
    effects.emplace_back(CMatrix((g + g.adjoint()) / 2.0));
  }
  return Povm(std::move(effects));
}

inline const std::vector<const char*>& small_builtins() {
  static const std::vector<const char*> names = {"d2-qplus",       "d2-qminus", "d3-hesse-qplus",
                                                 "d3-hesse-qminus", "d4-qplus",  "d4-qminus",
                                                 "qmin",            "qmax"};
  return names;
}

}  // namespace qneg::testing
