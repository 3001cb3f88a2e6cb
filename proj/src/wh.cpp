#include "qneg/wh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace qneg {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix qubit_displacement(int i, int j) {
  CMatrix m = CMatrix::Zero(2, 2);
  for (int b = 0; b < 2; ++b) m((b + i) % 2, b) = (j * b) % 2 == 0 ? 1.0 : -1.0;
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

double residual_diag(double a, double f) { return std::abs(a * a + a * f + f * f - a - f); }

double residual_modulus(Complex y, Complex x, Complex v) {
  return std::abs(std::norm(y) + std::norm(x) + std::norm(v) - 1.0);
}

double residual_phase(Complex y, Complex x, Complex v) {
  return std::abs(x * y + std::conj(y) * v + std::conj(v) * std::conj(x));
}

}  // namespace

WhGroup::WhGroup(int dim) : dim_(dim), omega_(std::polar(1.0, 2.0 * kPi / dim)) {
  if (dim < 2) throw InvalidInput(fmt::format("WH group needs dim >= 2, got {}", dim));
  x_ = CMatrix::Zero(dim, dim);
  z_ = CMatrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    x_((j + 1) % dim, j) = 1.0;
    z_(j, j) = std::polar(1.0, 2.0 * kPi * j / dim);
  }
}

CMatrix WhGroup::displacement(int i, int j) const {
  // (X^i Z^j)|b> = omega^{jb} |b+i>; exponents reduced mod d keep phases exact-ish.
  CMatrix m = CMatrix::Zero(dim_, dim_);
  for (int b = 0; b < dim_; ++b) {
    const int e = (j * b) % dim_;
    m((b + i) % dim_, b) = std::polar(1.0, 2.0 * kPi * e / dim_);
  }
  return m;
}

std::vector<HermitianOperator> wh_orbit(const HermitianOperator& fiducial) {
  return wh_orbit(fiducial, fiducial.dim());
}

std::vector<HermitianOperator> wh_orbit(const HermitianOperator& fiducial, int dim) {
  if (fiducial.dim() != dim) {
    throw DimensionMismatch(fmt::format("wh_orbit: fiducial is {}x{}, expected d={}",
                                        fiducial.dim(), fiducial.dim(), dim));
  }
  const WhGroup group(dim);
  std::vector<HermitianOperator> out;
  out.reserve(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) out.push_back(fiducial.conjugated_by(group.displacement(i, j)));
  }
  return out;
}

std::vector<HermitianOperator> tensor_wh_orbit(const HermitianOperator& fiducial, int factors) {
  if (factors < 1 || factors > 3) {
    throw InvalidInput(fmt::format("tensor_wh_orbit supports 1..3 factors, got {}", factors));
  }
  const int dim = 1 << factors;
  if (fiducial.dim() != dim) {
    throw DimensionMismatch(
        fmt::format("tensor_wh_orbit: fiducial must be {}x{} for {} factors", dim, dim, factors));
  }
  const int count = 1 << (2 * factors);
  std::vector<HermitianOperator> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int label = 0; label < count; ++label) {
    CMatrix u = CMatrix::Identity(1, 1);
    for (int k = factors - 1; k >= 0; --k) {
      const int pair = (label >> (2 * k)) & 3;
      u = kron(u, qubit_displacement(pair >> 1, pair & 1));
    }
    out.push_back(fiducial.conjugated_by(u));
  }
  return out;
}

std::size_t wh_translate_index(std::size_t index, int dim, int s, int t) {
  const auto d = static_cast<std::size_t>(dim);
  const std::size_t i = index / d;
  const std::size_t j = index % d;
  const auto shift = [d](std::size_t base, int delta) {
    const auto m = static_cast<long long>(d);
    return static_cast<std::size_t>(((static_cast<long long>(base) + delta) % m + m) % m);
  };
  return shift(i, s) * d + shift(j, t);
}

HermitianOperator WhFiducialD3::matrix() const {
  CMatrix m(3, 3);
  m << a, y, x,
       std::conj(y), f, v,
       std::conj(x), std::conj(v), 1.0 - a - f;
  return HermitianOperator(m);
}

WhFiducialD3 WhFiducialD3::from_matrix(const HermitianOperator& m) {
  if (m.dim() != 3) throw DimensionMismatch("WH fiducial must be 3x3");
  return {m(0, 0).real(), m(1, 1).real(), m(0, 1), m(0, 2), m(1, 2)};
}

WhFiducialCheck check_wh_fiducial_d3(const HermitianOperator& m) {
  if (m.dim() != 3) throw DimensionMismatch(fmt::format("expected a 3x3 fiducial, got d={}", m.dim()));
  if (std::abs(m.trace() - 1.0) > 1e-10) {
    throw InvalidInput(fmt::format("fiducial trace is {:.15g}, expected 1", m.trace()));
  }
  const auto fid = WhFiducialD3::from_matrix(m);
  WhFiducialCheck out;
  out.diagonal_residual = residual_diag(fid.a, fid.f);
  out.modulus_residual = residual_modulus(fid.y, fid.x, fid.v);
  out.phase_residual = residual_phase(fid.y, fid.x, fid.v);
  out.passed = out.diagonal_residual < kWhFiducialTol && out.modulus_residual < kWhFiducialTol &&
               out.phase_residual < kWhFiducialTol;
  return out;
}

std::array<double, 2> wh_diagonal_d3(double diag_angle) {
  // With s = a + f and t = a - f the ellipse reads 3(s - 2/3)^2 + t^2 = 4/3.
  const double s = 2.0 / 3.0 + (2.0 / 3.0) * std::cos(diag_angle);
  const double t = (2.0 / std::sqrt(3.0)) * std::sin(diag_angle);
  return {0.5 * (s + t), 0.5 * (s - t)};
}

std::optional<WhFiducialD3> try_sample_wh_fiducial_d3(const WhFiducialParams& params) {
  if (params.branch < 0 || params.branch >= kWhPhaseBranches) {
    throw InvalidInput(fmt::format("phase branch must be in [0, 6), got {}", params.branch));
  }
  const auto [a, f] = wh_diagonal_d3(params.diag_angle);
  const double ry = std::abs(std::sin(params.polar) * std::cos(params.azimuth));
  const double rx = std::abs(std::sin(params.polar) * std::sin(params.azimuth));
  const double rv = std::abs(std::cos(params.polar));

  // With A = arg(xy), B = arg(y* v), C = arg(v* x*) we have A + B + C = 0 and
  // the three terms p e^{iA} + q e^{iB} + s e^{iC} must close a triangle.
  const double p = rx * ry;
  const double q = ry * rv;
  const double s = rv * rx;
  const double scale = std::max({p, q, s});
  const double phv = params.v_phase;
  double phy = 0.0;
  double phx = 0.0;
  if (scale < 1e-14) {
    // At most one modulus is nonzero; every phase choice works.
  } else {
    if (std::min({p, q, s}) < 1e-14 * scale) return std::nullopt;
    double c = (s * s - p * p - q * q) / (2.0 * p * q);
    if (std::abs(c) > 1.0 + 1e-12) return std::nullopt;
    c = std::clamp(c, -1.0, 1.0);
    const double beta = (params.branch % 2 == 0 ? 1.0 : -1.0) * std::acos(c);
    const Complex eg = (-p - q * std::polar(1.0, beta)) / s;
    const double gamma = std::arg(eg);
    const double big_a = (-beta - gamma + 2.0 * kPi * (params.branch / 2)) / 3.0;
    const double big_b = big_a + beta;
    phy = phv - big_b;
    phx = big_a - phy;
  }
  WhFiducialD3 out{a, f, std::polar(ry, phy), std::polar(rx, phx), std::polar(rv, phv)};
  if (residual_diag(out.a, out.f) > 1e-10 || residual_modulus(out.y, out.x, out.v) > 1e-10 ||
      residual_phase(out.y, out.x, out.v) > 1e-10) {
    return std::nullopt;
  }
  return out;
}

WhFiducialD3 sample_wh_fiducial_d3(const WhFiducialParams& params) {
  auto out = try_sample_wh_fiducial_d3(params);
  if (!out) {
    throw SamplingFailure(fmt::format(
        "no WH fiducial for polar={:.6g} azimuth={:.6g} v_phase={:.6g} branch={}", params.polar,
        params.azimuth, params.v_phase, params.branch));
  }
  return *out;
}

WhFiducialD3 sample_wh_fiducial_d3(double diag_angle, const std::array<double, 3>& offdiag,
                                   std::optional<std::uint64_t> rng_seed) {
  WhFiducialParams params{diag_angle, offdiag[0], offdiag[1], offdiag[2], 0};
  if (rng_seed) {
    std::mt19937_64 rng(*rng_seed);
    params.branch = std::uniform_int_distribution<int>(0, kWhPhaseBranches - 1)(rng);
  }
  return sample_wh_fiducial_d3(params);
}

WhFiducialParams random_wh_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> cosine(-1.0, 1.0);
  std::uniform_int_distribution<int> branch(0, kWhPhaseBranches - 1);
  WhFiducialParams p;
  p.diag_angle = angle(rng);
  p.polar = std::acos(cosine(rng));
  p.azimuth = angle(rng);
  p.v_phase = angle(rng);
  p.branch = branch(rng);
  return p;
}

std::pair<WhFiducialParams, WhFiducialD3> random_wh_fiducial_d3(std::mt19937_64& rng,
                                                                int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const auto params = random_wh_params(rng);
    if (auto fid = try_sample_wh_fiducial_d3(params)) return {params, *fid};
  }
  throw SamplingFailure(fmt::format("no feasible WH fiducial in {} attempts", max_attempts));
}

WhFiducialParams wh_params_d3(const HermitianOperator& fiducial, double tol) {
  const auto fid = WhFiducialD3::from_matrix(fiducial);
  WhFiducialParams p;
  const double s = fid.a + fid.f;
  const double t = fid.a - fid.f;
  p.diag_angle = std::atan2(t * std::sqrt(3.0) / 2.0, 1.5 * (s - 2.0 / 3.0));
  const double rv = std::clamp(std::abs(fid.v), 0.0, 1.0);
  p.polar = std::acos(rv);
  p.azimuth = std::atan2(std::abs(fid.x), std::abs(fid.y));
  p.v_phase = std::arg(fid.v);
  for (int b = 0; b < kWhPhaseBranches; ++b) {
    p.branch = b;
    if (auto cand = try_sample_wh_fiducial_d3(p)) {
      if (max_abs_diff(cand->matrix(), fiducial) <= tol) return p;
    }
  }
  throw SamplingFailure("fiducial is not reproduced by any phase branch");
}

HermitianOperator qmin_fiducial() {
  const Complex u(-1.0 / 3.0, 1.0 / 3.0);
  const Complex w(2.0 / 3.0, -1.0 / 3.0);
  CMatrix m(3, 3);
  m << 0.0, u, w,
       std::conj(u), 1.0, u,
       std::conj(w), std::conj(u), 0.0;
  return HermitianOperator(m);
}

HermitianOperator qmax_fiducial() {
  const double r7 = std::sqrt(7.0);
  const Complex u(-1.0 / 3.0 + r7 / 12.0, 0.25);
  const Complex w(2.0 / 3.0 + r7 / 12.0, -0.25);
  CMatrix m(3, 3);
  m << 0.0, u, w,
       std::conj(u), 1.0, u,
       std::conj(w), std::conj(u), 0.0;
  return HermitianOperator(m);
}

}  // namespace qneg
