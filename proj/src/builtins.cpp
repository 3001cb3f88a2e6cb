#include "qneg/builtins.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "qneg/io.hpp"
#include "qneg/sic.hpp"
#include "qneg/wh.hpp"

namespace qneg {

namespace {

constexpr std::string_view kPlus = "-qplus";
constexpr std::string_view kMinus = "-qminus";

}  // namespace

const std::vector<std::string>& builtin_qrep_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& label : sic_labels()) {
      out.push_back(label + std::string(kPlus));
      out.push_back(label + std::string(kMinus));
    }
    out.emplace_back("qmin");
    out.emplace_back("qmax");
    return out;
  }();
  return names;
}

bool is_builtin_qrep(std::string_view name) {
  const auto& names = builtin_qrep_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

QRep builtin_qrep(std::string_view name) {
  if (name == "qmin") return QRep(wh_orbit(qmin_fiducial(), 3), "qmin");
  if (name == "qmax") return QRep(wh_orbit(qmax_fiducial(), 3), "qmax");
  if (is_builtin_qrep(name)) {
    const bool plus = name.ends_with(kPlus);
    const auto label = name.substr(0, name.size() - (plus ? kPlus.size() : kMinus.size()));
    auto reps = sic_qreps(load_sic(label));
    return plus ? std::move(reps.plus) : std::move(reps.minus);
  }
  throw InvalidInput(fmt::format("unknown builtin Q-rep '{}'", name));
}

QRep resolve_qrep(const std::string& name_or_path) {
  if (is_builtin_qrep(name_or_path)) return builtin_qrep(name_or_path);
  return qrep_from_json(read_json_file(name_or_path));
}

}  // namespace qneg
