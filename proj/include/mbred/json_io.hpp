#pragma once

#include <json.hpp>

#include "mbred/extensions.hpp"
#include "mbred/fuzzy.hpp"
#include "mbred/linalg.hpp"
#include "mbred/measures.hpp"
#include "mbred/projective.hpp"

namespace mbred {

using Json = nlohmann::json;

// Complex matrices travel as row-major nested arrays of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json ket_to_json(const Ket& k);
Ket ket_from_json(const Json& j);

// {"ket": [[re, im], ...], "phase_gauge": "arbitrary"}
Json pure_point_to_json(const PurePoint& p);
PurePoint pure_point_from_json(const Json& j);

// [{"point": ..., "weight": ...}, ...]
Json measure_to_json(const PureMeasure& mu);
PureMeasure pure_measure_from_json(const Json& j);

Json measure_to_json(const LabelMeasure& mu);
LabelMeasure label_measure_from_json(const Json& j);

// Array of effect matrices.
Json povm_to_json(const Povm& f);
Povm povm_from_json(const Json& j);

// {"points": [...], "states": [...], "target_dim": ..., "adaptation_note": ...}
Json extension_to_json(const ClassicalExtension& ext);
ClassicalExtension extension_from_json(const Json& j);

}  // namespace mbred
