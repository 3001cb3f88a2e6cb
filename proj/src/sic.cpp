#include "qneg/sic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "qneg/wh.hpp"

namespace qneg {

namespace {

struct Amplitude {
  const char* re;
  const char* im;
};

struct FiducialData {
  const char* label;
  int dim;
  bool exact;        // closed-form values rendered to 40+ digits
  bool hoggar;       // three-qubit WH covariance instead of WH(d)
  std::vector<Amplitude> amplitudes;
};

// d2: (sqrt((1+1/sqrt3)/2), e^{i pi/4} sqrt((1-1/sqrt3)/2)).
// d3-hesse: (0, 1, -1)/sqrt2.
// d4, d5: WH-covariant numerical fiducials polished by Newton iteration at
// 60 digits (overlap residual below 1e-50), printed to 45 digits.
// d8-hoggar: (-1, 1, i, -2-i, 1, 1, -i, i)/sqrt12.
const std::vector<FiducialData>& fiducial_table() {
  static const std::vector<FiducialData> table = {
      {"d2", 2, true, false,
       {{"0.888073833977115262160764596418121804011717", "0"},
        {"0.325057583671868143161124167775119702823789",
         "0.325057583671868143161124167775119702823789"}}},
      {"d3-hesse", 3, true, false,
       {{"0", "0"},
        {"0.707106781186547524400844362104849039284836", "0"},
        {"-0.707106781186547524400844362104849039284836", "0"}}},
      {"d4", 4, false, false,
       {{"0.201188586486865892934562815966788267066345640", "0"},
        {"0.307634553105919065945690869630249782994691112",
         "-0.256983296271631920993076296548228548365955777"},
        {"0", "-0.485712214091264039091521531768121971098467942"},
        {"-0.106445966619053173011128053663461515928345471",
         "0.742695510362895960084597828316350519464423719"}}},
      {"d5", 5, false, false,
       {{"-0.171392161257470535868754826523916256904197509", "0"},
        {"0.342620312984222930683473126871657177487072103",
         "-0.327628230640265355863609188272267136706725361"},
        {"0.0968284217001535857649458425327011264062596763",
         "0.378867214062988021503912666751584986368826558"},
        {"-0.706580784722067917077677066829190985951355152",
         "0.0258528249410324725188415085513383232951838977"},
        {"0.0519960276749910059605724960654722047625501849",
         "0.300584964272931114959764364009690267234091992"}}},
      {"d8-hoggar", 8, true, true,
       {{"-0.288675134594812882254574390250978727823801", "0"},
        {"0.288675134594812882254574390250978727823801", "0"},
        {"0", "0.288675134594812882254574390250978727823801"},
        {"-0.577350269189625764509148780501957455647602",
         "-0.288675134594812882254574390250978727823801"},
        {"0.288675134594812882254574390250978727823801", "0"},
        {"0.288675134594812882254574390250978727823801", "0"},
        {"0", "-0.288675134594812882254574390250978727823801"},
        {"0", "0.288675134594812882254574390250978727823801"}}},
  };
  return table;
}

const FiducialData& find_fiducial(std::string_view label) {
  for (const auto& f : fiducial_table()) {
    if (label == f.label) return f;
  }
  throw InvalidInput(fmt::format("unknown SIC label '{}'", label));
}

double parse_decimal(const char* s) {
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0') throw InvalidInput(fmt::format("bad decimal literal '{}'", s));
  return v;
}

}  // namespace

SicValidation validate_sic(std::span<const HermitianOperator> projectors, double overlap_tol) {
  if (projectors.empty()) throw DimensionMismatch("validate_sic: no projectors");
  const int d = projectors.front().dim();
  if (projectors.size() != static_cast<std::size_t>(d * d)) {
    throw DimensionMismatch(
        fmt::format("validate_sic: expected {} projectors, got {}", d * d, projectors.size()));
  }
  SicValidation out;
  const double off = 1.0 / (d + 1);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    if (projectors[i].dim() != d) throw DimensionMismatch("validate_sic: mixed dimensions");
    const double tr = projectors[i].trace();
    const double purity = trace_inner_product(projectors[i], projectors[i]);
    out.max_rank_violation =
        std::max({out.max_rank_violation, std::abs(tr - 1.0), std::abs(purity - 1.0)});
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      const double g = trace_inner_product(projectors[i], projectors[j]);
      out.max_overlap_violation = std::max(out.max_overlap_violation, std::abs(g - off));
    }
  }
  out.passed = out.max_rank_violation <= kSicRankTol && out.max_overlap_violation <= overlap_tol;
  return out;
}

SicSystem::SicSystem(std::vector<HermitianOperator> projectors, std::string fiducial_label,
                     double overlap_tol)
    : projectors_(std::move(projectors)),
      label_(std::move(fiducial_label)),
      validation_(validate_sic(projectors_, overlap_tol)) {
  if (!validation_.passed) {
    throw InvalidInput(fmt::format("'{}' is not a SIC: rank violation {:.3e}, overlap violation {:.3e}",
                                   label_, validation_.max_rank_violation,
                                   validation_.max_overlap_violation));
  }
}

const std::vector<std::string>& sic_labels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> out;
    for (const auto& f : fiducial_table()) out.emplace_back(f.label);
    return out;
  }();
  return labels;
}

PureState sic_fiducial(std::string_view label) {
  const auto& data = find_fiducial(label);
  CVector v(data.dim);
  for (int k = 0; k < data.dim; ++k) {
    const auto& a = data.amplitudes[static_cast<std::size_t>(k)];
    v(k) = Complex(parse_decimal(a.re), parse_decimal(a.im));
  }
  return PureState::normalized(v);
}

SicSystem load_sic(std::string_view label) {
  const auto& data = find_fiducial(label);
  const auto fiducial = sic_fiducial(label).projector();
  auto projectors = data.hoggar ? tensor_wh_orbit(fiducial, 3) : wh_orbit(fiducial, data.dim);
  return SicSystem(std::move(projectors), data.label,
                   data.exact ? kSicOverlapTolExact : kSicOverlapTol);
}

Eigen::MatrixXd gram_matrix(std::span<const HermitianOperator> ops) {
  const auto n = static_cast<Eigen::Index>(ops.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = g(j, i) = trace_inner_product(ops[static_cast<std::size_t>(i)],
                                              ops[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

SicQReps sic_qreps(const SicSystem& s) {
  const int d = s.dim();
  const double root = std::sqrt(d + 1.0);
  const auto id = HermitianOperator::identity(d);
  std::vector<HermitianOperator> plus;
  std::vector<HermitianOperator> minus;
  for (const auto& pi : s.projectors()) {
    plus.push_back(pi * (-root) + id * ((1.0 + root) / d));
    minus.push_back(pi * root + id * ((1.0 - root) / d));
  }
  return {QRep(std::move(plus), s.fiducial_label() + "-qplus"),
          QRep(std::move(minus), s.fiducial_label() + "-qminus")};
}

CeilingBounds ceiling_bounds(int d) {
  if (d < 2) throw InvalidInput(fmt::format("ceiling_bounds needs d >= 2, got {}", d));
  const double root = std::sqrt(d + 1.0);
  const double d2 = static_cast<double>(d) * d;
  return {d, ((d - 1) * root - 1.0) / d2, (root - 1.0) / d2};
}

std::vector<double> urgleichung_rhs(const DensityMatrix& rho, const SicSystem& s, const Povm& g) {
  const int d = s.dim();
  if (rho.dim() != d || g.dim() != d) throw DimensionMismatch("urgleichung_rhs: dimension mismatch");
  std::vector<double> p(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) p[i] = trace_inner_product(rho.op(), s[i]) / d;
  std::vector<double> q(g.size(), 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      q[j] += ((d + 1) * p[i] - 1.0 / d) * trace_inner_product(s[i], g[j]);
    }
  }
  return q;
}

}  // namespace qneg
