#include <doctest.h>

#include <cmath>

#include "qneg/operators.hpp"

using namespace qneg;

TEST_CASE("hermitian construction symmetrizes small drift and rejects large drift") {
  CMatrix m(2, 2);
  m << 1.0, Complex(0.5, 0.25), Complex(0.5, -0.25 + 1e-14), 2.0;
  const HermitianOperator h(m);
  CHECK(std::abs(h(0, 1) - std::conj(h(1, 0))) == 0.0);

  m(1, 0) = Complex(0.5, -0.2);
  CHECK_THROWS_AS(HermitianOperator{m}, InvalidInput);
  CHECK_THROWS_AS(HermitianOperator{CMatrix::Zero(2, 3)}, Error);
}

TEST_CASE("eigenvalues come back ascending") {
  const std::vector<double> diag = {3.0, 1.0, 2.0};
  const auto ev = eigenvalues(HermitianOperator::diagonal(diag));
  CHECK(ev(0) == doctest::Approx(1.0));
  CHECK(ev(1) == doctest::Approx(2.0));
  CHECK(ev(2) == doctest::Approx(3.0));

  const auto pair = min_eigenpair(HermitianOperator::diagonal(diag));
  CHECK(pair.value == doctest::Approx(1.0));
  CHECK(std::abs(pair.vector[1]) == doctest::Approx(1.0));
}

TEST_CASE("eigensystem reconstructs the operator") {
  const auto psi = random_pure_state(5, 11);
  const auto phi = random_pure_state(5, 12);
  const auto h = psi.projector() * 0.7 - phi.projector() * 0.3 + HermitianOperator::identity(5) * 0.1;
  const auto es = eigensystem(h);
  const CMatrix back = es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
  CHECK((back - h.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pure states") {
  CHECK_THROWS_AS(PureState(CVector::Ones(3)), InvalidInput);
  CHECK_THROWS_AS(PureState::normalized(CVector::Zero(3)), InvalidInput);
  const auto s = PureState::normalized(CVector::Ones(4));
  CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.projector().trace() == doctest::Approx(1.0));
  CHECK(trace_inner_product(s.projector(), s.projector()) == doctest::Approx(1.0));
}

TEST_CASE("random pure states are normalized and reproducible") {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const auto a = random_pure_state(4, seed);
    const auto b = random_pure_state(4, seed);
    CHECK(std::abs(a.amplitudes().norm() - 1.0) < 1e-12);
    CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
  }
  CHECK((random_pure_state(4, 1).amplitudes() - random_pure_state(4, 2).amplitudes()).norm() > 1e-3);
  CHECK_THROWS_AS(random_pure_state(1, 1), InvalidInput);
}

TEST_CASE("density matrices") {
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(3));
  const std::vector<double> bad_trace = {0.5, 0.6};
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator::diagonal(bad_trace)), InvalidInput);
  const std::vector<double> negative = {1.5, -0.5};
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator::diagonal(negative)), InvalidInput);
}

TEST_CASE("trace inner product and expectation") {
  const auto id = HermitianOperator::identity(4);
  CHECK(trace_inner_product(id, id) == doctest::Approx(4.0));
  const auto psi = random_pure_state(4, 5);
  CHECK(expectation(id, psi) == doctest::Approx(1.0));
  CHECK(expectation(psi.projector(), psi) == doctest::Approx(1.0));
  CHECK_THROWS_AS(trace_inner_product(id, HermitianOperator::identity(3)), DimensionMismatch);
}

TEST_CASE("derived seeds differ per stream") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}
