#include "gcode/json_io.hpp"

#include <stdexcept>

namespace gcode {

nlohmann::json to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json to_json(std::span<const Complex> v) {
  auto arr = nlohmann::json::array();
  for (const Complex& z : v) arr.push_back(to_json(z));
  return arr;
}

nlohmann::json to_json(const CMatrix& m) {
  auto arr = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(to_json(m.row(i)));
  return arr;
}

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("vector must be a non-empty array");
  CVector v;
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw std::invalid_argument("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

}  // namespace gcode
