#pragma once

#include "gcode/numerics.hpp"
#include "json.hpp"

namespace gcode {

// Complex numbers are [re, im]; vectors are arrays of those; matrices are row-major arrays of rows.
nlohmann::json to_json(Complex z);
nlohmann::json to_json(std::span<const Complex> v);
nlohmann::json to_json(const CMatrix& m);

Complex complex_from_json(const nlohmann::json& j);
CVector vector_from_json(const nlohmann::json& j);
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace gcode
