#pragma once

// JSON forms of library values. Exact quantities are strings and carry
// "exactness": "exact-rational"; floats carry "exactness": "float+relErr"
// together with their relative error.

#include <json.hpp>

#include "heightlab/asymptotics.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/northcott.hpp"

namespace heightlab::cli {

using json = nlohmann::ordered_json;

json to_json(const HeightValue& h);
json to_json(const LocalMagnitude& m);
json to_json(const std::vector<PlaceContribution>& parts);
json to_json(const OperatorHeightResult& r);
json to_json(const VectorK& x);
json to_json(const MatrixK& t);
json to_json(const ProjectivePoint& p);
json to_json(const EndoClass& c);
json to_json(const ConvergenceTrace& trace);

}  // namespace heightlab::cli
