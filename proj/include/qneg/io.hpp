#pragma once

#include <string>

#include <json.hpp>

#include "qneg/negativity.hpp"
#include "qneg/operators.hpp"
#include "qneg/qrep.hpp"
#include "qneg/stationary.hpp"
#include "qneg/wh.hpp"

namespace qneg {

using Json = nlohmann::json;

/// Matrix literal {"dim": d, "re": [[...]], "im": [[...]]}. Entries may be
/// JSON numbers or decimal strings; "im" may be omitted for real matrices.
Json to_json(const HermitianOperator& h);
HermitianOperator hermitian_from_json(const Json& j);

/// {"dim": d, "re": [...], "im": [...]}
Json to_json(const PureState& psi);
PureState state_from_json(const Json& j);

/// {"label": ..., "dim": d, "elements": [matrix, ...]}. Loading re-validates.
Json to_json(const QRep& q);
QRep qrep_from_json(const Json& j);

/// {"effects": [matrix, ...]}
Json to_json(const Povm& g);
Povm povm_from_json(const Json& j);

Json to_json(const QuasiprobVector& v);
Json to_json(const QRepValidation& v);
Json to_json(const WhFiducialParams& p);
WhFiducialParams wh_params_from_json(const Json& j);
Json to_json(const WhFiducialCheck& c);
Json to_json(const StationaryVector& v);
Json to_json(const LocalMaxCertificate& c);
Json to_json(const ConjectureSweepResult& r);

/// All report fields; "p" is the string "inf" for the ceiling measure.
Json to_json(const NegativityReport& r);
NegativityReport report_from_json(const Json& j);

/// Throws InvalidInput when the file is missing or not valid JSON.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qneg
