#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qneg/qrep.hpp"

namespace qneg {

/// Every builtin Q-rep name: "<sic>-qplus" and "<sic>-qminus" for each
/// shipped SIC label, then "qmin" and "qmax" (WH orbits in d=3).
const std::vector<std::string>& builtin_qrep_names();

bool is_builtin_qrep(std::string_view name);

/// Throws InvalidInput for an unknown name.
QRep builtin_qrep(std::string_view name);

/// A builtin name, or else a path to a Q-rep JSON file.
QRep resolve_qrep(const std::string& name_or_path);

}  // namespace qneg
