#include "qneg/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

namespace qneg {

namespace {

double number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw InvalidInput(fmt::format("bad decimal string '{}'", s));
    return v;
  }
  throw InvalidInput(fmt::format("expected a number or decimal string, got {}", j.dump()));
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(fmt::format("missing field '{}'", key));
  return j.at(key);
}

int read_dim(const Json& j) {
  const auto d = field(j, "dim");
  if (!d.is_number_integer() || d.get<int>() < 1) throw InvalidInput("'dim' must be a positive integer");
  return d.get<int>();
}

double p_from_json(const Json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "infinity") return kInfinity;
  }
  return number(j);
}

}  // namespace

Json to_json(const HermitianOperator& h) {
  const int d = h.dim();
  Json re = Json::array();
  Json im = Json::array();
  for (int r = 0; r < d; ++r) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (int c = 0; c < d; ++c) {
      rr.push_back(h(r, c).real());
      ir.push_back(h(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"dim", d}, {"re", re}, {"im", im}};
}

HermitianOperator hermitian_from_json(const Json& j) {
  const int d = read_dim(j);
  const auto& re = field(j, "re");
  const bool has_im = j.contains("im");
  const Json& im = has_im ? j.at("im") : re;
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    if (!re.is_array() || re.size() != static_cast<std::size_t>(d) || re[r].size() != static_cast<std::size_t>(d) ||
        (has_im && (im.size() != static_cast<std::size_t>(d) || im[r].size() != static_cast<std::size_t>(d)))) {
      throw DimensionMismatch(fmt::format("matrix literal rows do not match dim {}", d));
    }
    for (int c = 0; c < d; ++c) m(r, c) = Complex(number(re[r][c]), has_im ? number(im[r][c]) : 0.0);
  }
  return HermitianOperator(m);
}

Json to_json(const PureState& psi) {
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < psi.dim(); ++i) {
    re.push_back(psi[i].real());
    im.push_back(psi[i].imag());
  }
  return {{"dim", psi.dim()}, {"re", re}, {"im", im}};
}

PureState state_from_json(const Json& j) {
  const int d = read_dim(j);
  const auto& re = field(j, "re");
  const bool has_im = j.contains("im");
  if (re.size() != static_cast<std::size_t>(d) || (has_im && j.at("im").size() != static_cast<std::size_t>(d))) {
    throw DimensionMismatch(fmt::format("state literal length does not match dim {}", d));
  }
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(number(re[i]), has_im ? number(j.at("im")[i]) : 0.0);
  return PureState(v);
}

Json to_json(const QRep& q) {
  Json elems = Json::array();
  for (const auto& e : q.elements()) elems.push_back(to_json(e));
  return {{"label", q.label()}, {"dim", q.dim()}, {"elements", elems}};
}

QRep qrep_from_json(const Json& j) {
  const auto& elems = j.is_array() ? j : field(j, "elements");
  std::vector<HermitianOperator> ops;
  for (const auto& e : elems) ops.push_back(hermitian_from_json(e));
  std::string label = j.is_object() && j.contains("label") ? j.at("label").get<std::string>() : "file";
  return QRep(std::move(ops), std::move(label));
}

Json to_json(const Povm& g) {
  Json effects = Json::array();
  for (const auto& e : g.effects()) effects.push_back(to_json(e));
  return {{"effects", effects}};
}

Povm povm_from_json(const Json& j) {
  const auto& elems = j.is_array() ? j : field(j, "effects");
  std::vector<HermitianOperator> ops;
  for (const auto& e : elems) ops.push_back(hermitian_from_json(e));
  return Povm(std::move(ops));
}

Json to_json(const QuasiprobVector& v) { return Json(v.entries()); }

Json to_json(const QRepValidation& v) {
  return {{"dim", v.dim},
          {"count", v.count},
          {"max_trace_violation", v.max_trace_violation},
          {"max_gram_violation", v.max_gram_violation},
          {"max_sum_violation", v.max_sum_violation},
          {"passed", v.passed}};
}

Json to_json(const WhFiducialParams& p) {
  return {{"diag_angle", p.diag_angle},
          {"polar", p.polar},
          {"azimuth", p.azimuth},
          {"v_phase", p.v_phase},
          {"branch", p.branch}};
}

WhFiducialParams wh_params_from_json(const Json& j) {
  WhFiducialParams p;
  p.diag_angle = number(field(j, "diag_angle"));
  p.polar = number(field(j, "polar"));
  p.azimuth = number(field(j, "azimuth"));
  if (j.contains("v_phase")) p.v_phase = number(j.at("v_phase"));
  if (j.contains("branch")) p.branch = j.at("branch").get<int>();
  return p;
}

Json to_json(const WhFiducialCheck& c) {
  return {{"diagonal_residual", c.diagonal_residual},
          {"modulus_residual", c.modulus_residual},
          {"phase_residual", c.phase_residual},
          {"passed", c.passed}};
}

Json to_json(const StationaryVector& v) {
  return {{"dim", v.dim}, {"n", v.n}, {"m", v.m}, {"k", v.positives()},
          {"a", v.a},     {"b", v.b}, {"sum_negativity", v.sum_negativity()}};
}

Json to_json(const LocalMaxCertificate& c) {
  Json clusters = Json::array();
  for (const auto& cl : c.clusters) clusters.push_back({{"center", cl.center}, {"count", cl.count}});
  return {{"verdict", c.verdict},
          {"certified", c.certified},
          {"global_max_witness", c.global_max_witness},
          {"stationary_bound", c.stationary_bound},
          {"clusters", clusters},
          {"quasiprobabilities", c.quasiprobabilities}};
}

Json to_json(const ConjectureSweepResult& r) {
  Json polished = Json::array();
  for (const auto& p : r.polished) polished.push_back({{"params", to_json(p.params)}, {"value", p.value}});
  return {{"samples", r.samples},
          {"sampling_failures", r.sampling_failures},
          {"bound", r.bound},
          {"raw_min", r.raw_min},
          {"polished_min", r.polished_min},
          {"raw_below_bound", r.raw_below_bound},
          {"polished_below_bound", r.polished_below_bound},
          {"best", {{"params", to_json(r.best.params)}, {"value", r.best.value}}},
          {"best_fiducial", to_json(r.best_fiducial)},
          {"best_spectrum_gap_to_qmin", r.best_spectrum_gap_to_qmin},
          {"polished", polished},
          {"wall_seconds", r.wall_seconds}};
}

Json to_json(const NegativityReport& r) {
  Json j;
  j["p"] = std::isinf(r.p) ? Json("inf") : Json(r.p);
  j["value"] = r.value;
  j["achieving_state"] = to_json(r.achieving_state);
  j["achieving_subset"] = r.achieving_subset;
  j["exhaustive"] = r.exhaustive;
  j["subsets_scanned"] = r.subsets_scanned;
  j["seeds_used"] = r.seeds_used;
  j["method"] = r.method;
  j["eigensolves"] = r.eigensolves;
  j["pruned_gershgorin"] = r.pruned_gershgorin;
  j["pruned_definite"] = r.pruned_definite;
  j["reseeds"] = r.reseeds;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

NegativityReport report_from_json(const Json& j) {
  NegativityReport r;
  r.p = p_from_json(field(j, "p"));
  r.value = number(field(j, "value"));
  r.achieving_state = state_from_json(field(j, "achieving_state"));
  if (j.contains("achieving_subset")) r.achieving_subset = j.at("achieving_subset").get<std::vector<std::size_t>>();
  r.exhaustive = j.value("exhaustive", false);
  r.subsets_scanned = j.value("subsets_scanned", std::uint64_t{0});
  r.seeds_used = j.value("seeds_used", std::uint64_t{0});
  r.method = j.value("method", std::string{});
  r.eigensolves = j.value("eigensolves", std::uint64_t{0});
  r.pruned_gershgorin = j.value("pruned_gershgorin", std::uint64_t{0});
  r.pruned_definite = j.value("pruned_definite", std::uint64_t{0});
  r.reseeds = j.value("reseeds", std::uint64_t{0});
  r.wall_seconds = j.value("wall_seconds", 0.0);
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(fmt::format("cannot open '{}'", path));
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write '{}'", path));
  out << j.dump(2) << '\n';
}

}  // namespace qneg
