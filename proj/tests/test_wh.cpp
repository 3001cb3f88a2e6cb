#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qneg/builtins.hpp"
#include "qneg/negativity.hpp"
#include "qneg/qrep.hpp"
#include "qneg/wh.hpp"

using namespace qneg;

TEST_CASE("shift and phase satisfy the WH relations") {
  for (int d : {2, 3, 5}) {
    const WhGroup g(d);
    CMatrix xd = CMatrix::Identity(d, d);
    CMatrix zd = CMatrix::Identity(d, d);
    for (int k = 0; k < d; ++k) {
      xd = xd * g.shift();
      zd = zd * g.phase();
    }
    CHECK((xd - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((zd - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
    const CMatrix zx = g.phase() * g.shift();
    const CMatrix xz = g.shift() * g.phase();
    CHECK((zx - g.omega() * xz).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("orbits preserve trace and spectrum") {
  const auto f = qmax_fiducial();
  const auto orbit = wh_orbit(f, 3);
  REQUIRE(orbit.size() == 9);
  const auto ref = eigenvalues(f);
  for (const auto& e : orbit) {
    CHECK(std::abs(e.trace() - 1.0) < 1e-12);
    CHECK((eigenvalues(e) - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(max_abs_diff(orbit[0], f) < 1e-15);
  CHECK_THROWS_AS(wh_orbit(f, 4), DimensionMismatch);
}

TEST_CASE("fiducial conditions") {
  CHECK(check_wh_fiducial_d3(qmin_fiducial()).passed);
  CHECK(check_wh_fiducial_d3(qmax_fiducial()).passed);
  CHECK(check_wh_fiducial_d3(builtin_qrep("d3-hesse-qminus")[0]).passed);
  CHECK(check_wh_fiducial_d3(builtin_qrep("d3-hesse-qplus")[0]).passed);

  // Flat diagonal with equal real off-diagonals violates two of the conditions.
  const double r = 1.0 / std::sqrt(3.0);
  CMatrix m(3, 3);
  m << 1.0 / 3, r, r, r, 1.0 / 3, r, r, r, 1.0 / 3;
  const auto c = check_wh_fiducial_d3(HermitianOperator(m));
  CHECK_FALSE(c.passed);
  CHECK(c.phase_residual > 0.5);
  CHECK(c.diagonal_residual > 0.1);

  CHECK_THROWS_AS(check_wh_fiducial_d3(HermitianOperator::identity(2)), DimensionMismatch);
  CHECK_THROWS_AS(check_wh_fiducial_d3(HermitianOperator::identity(3)), InvalidInput);
}

TEST_CASE("sampled fiducials satisfy the conditions and generate Q-reps") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const auto [params, fid] = random_wh_fiducial_d3(rng);
    const auto m = fid.matrix();
    CHECK(check_wh_fiducial_d3(m).passed);
    CHECK(validate_qrep(wh_orbit(m, 3)).passed);
  }
}

TEST_CASE("sampling is deterministic and the branch seed is honoured") {
  const std::array<double, 3> off = {1.1, 0.4, 0.3};
  const auto a = sample_wh_fiducial_d3(0.7, off).matrix();
  const auto b = sample_wh_fiducial_d3(0.7, off).matrix();
  CHECK(max_abs_diff(a, b) == 0.0);
  const auto c = sample_wh_fiducial_d3(0.7, off, 5).matrix();
  CHECK(check_wh_fiducial_d3(c).passed);
}

TEST_CASE("infeasible moduli raise SamplingFailure") {
  // |v| = 1 with |x| = |y| = 0 is fine, but |y| ~ 1 with tiny |x|, |v| and a
  // lopsided triangle has no phase solution.
  WhFiducialParams p;
  p.polar = 1.5;
  p.azimuth = 0.01;
  CHECK_FALSE(try_sample_wh_fiducial_d3(p).has_value());
  CHECK_THROWS_AS(sample_wh_fiducial_d3(p), SamplingFailure);
}

TEST_CASE("parameters recovering Q^min and Q^max reproduce them") {
  for (const auto& f : {qmin_fiducial(), qmax_fiducial()}) {
    const auto params = wh_params_d3(f);
    CHECK(max_abs_diff(sample_wh_fiducial_d3(params).matrix(), f) < 1e-10);
  }
}

TEST_CASE("group translation permutes the orbit and leaves negativities unchanged") {
  const QRep q(wh_orbit(qmin_fiducial(), 3), "qmin");
  const double base = sum_negativity_exhaustive(q).value;
  const double ceiling = ceiling_negativity(q).value;
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 3; ++t) {
      std::vector<std::size_t> order(9);
      for (std::size_t k = 0; k < 9; ++k) order[k] = wh_translate_index(k, 3, s, t);
      auto sorted = order;
      std::sort(sorted.begin(), sorted.end());
      std::vector<std::size_t> iota(9);
      std::iota(iota.begin(), iota.end(), std::size_t{0});
      CHECK(sorted == iota);
      const CMatrix u = WhGroup(3).displacement(s, t);
      for (std::size_t k = 0; k < 9; ++k) CHECK(max_abs_diff(q[k].conjugated_by(u), q[order[k]]) < 1e-12);
      const auto moved = q.permuted(order);
      CHECK(std::abs(sum_negativity_exhaustive(moved).value - base) < 1e-10);
      CHECK(std::abs(ceiling_negativity(moved).value - ceiling) < 1e-10);
    }
  }
}

TEST_CASE("Hoggar orbit is a SIC orbit") {
  const auto orbit = tensor_wh_orbit(builtin_qrep("d8-hoggar-qplus")[0], 3);
  CHECK(orbit.size() == 64);
  CHECK(validate_qrep(orbit).passed);
}
