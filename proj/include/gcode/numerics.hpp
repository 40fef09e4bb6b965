#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace gcode {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Library-wide comparison tolerance. Distances closer than this are ties.
inline constexpr double kTolerance = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  explicit CMatrix(std::size_t n) : CMatrix(n, n) {}
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const { return data_; }
  std::span<const Complex> row(std::size_t i) const {
    return std::span<const Complex>(data_).subspan(i * cols_, cols_);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Complex hermitian_inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);
double distance(std::span<const Complex> u, std::span<const Complex> v);
CVector add(std::span<const Complex> u, std::span<const Complex> v);
CVector subtract(std::span<const Complex> u, std::span<const Complex> v);
CVector scale(std::span<const Complex> v, Complex c);
CVector normalized(std::span<const Complex> v);

CVector apply(const CMatrix& m, std::span<const Complex> v);
CMatrix mat_mul(const CMatrix& a, const CMatrix& b);
CMatrix conj_transpose(const CMatrix& m);
bool is_unitary(const CMatrix& m, double tol = kTolerance);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);

// Block direct sum diag(a, b).
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

// x -> (phase_i * x_{source_i})_i, the shape of every monomial matrix.
struct MonomialMap {
  std::vector<std::size_t> source;
  std::vector<Complex> phase;
};

// The action of a group element on vectors, dense or monomial.
class LinearMap {
 public:
  LinearMap() = default;
  explicit LinearMap(CMatrix m) : rep_(std::move(m)) {}
  explicit LinearMap(MonomialMap m) : rep_(std::move(m)) {}

  std::size_t dimension() const;
  CVector apply(std::span<const Complex> v) const;
  void apply_into(std::span<const Complex> v, std::span<Complex> out) const;
  CMatrix to_matrix() const;
  bool is_monomial() const { return std::holds_alternative<MonomialMap>(rep_); }

 private:
  std::variant<CMatrix, MonomialMap> rep_;
};

// Nearest-neighbour lookup of complex tuples under the max-abs metric.
// Candidates are pre-filtered by a fixed linear projection, then compared exactly.
class ProximityIndex {
 public:
  ProximityIndex() = default;
  ProximityIndex(std::size_t length, double tol);

  std::optional<std::size_t> find(std::span<const Complex> key) const;
  void insert(std::span<const Complex> key, std::size_t id);
  std::size_t size() const { return keys_.size(); }

 private:
  double project(std::span<const Complex> key) const;

  std::size_t length_ = 0;
  double tol_ = kTolerance;
  double window_ = 0.0;
  std::vector<double> weights_;
  std::multimap<double, std::size_t> by_projection_;
  std::vector<std::vector<Complex>> keys_;
  std::vector<std::size_t> ids_;
};

}  // namespace gcode
