#include "gcode/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcode {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("CMatrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Complex hermitian_inner(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_size(u.size(), v.size(), "hermitian_inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double distance(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_size(u.size(), v.size(), "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u[i] - v[i]);
  return std::sqrt(s);
}

CVector add(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_size(u.size(), v.size(), "add");
  CVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

CVector subtract(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_size(u.size(), v.size(), "subtract");
  CVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

CVector scale(std::span<const Complex> v, Complex c) {
  CVector out(v.begin(), v.end());
  for (auto& z : out) z *= c;
  return out;
}

CVector normalized(std::span<const Complex> v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  return scale(v, 1.0 / n);
}

CVector apply(const CMatrix& m, std::span<const Complex> v) {
  require_same_size(m.cols(), v.size(), "apply");
  CVector out(m.rows(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  require_same_size(a.cols(), b.rows(), "mat_mul");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMatrix conj_transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (!m.is_square() || m.rows() == 0) return false;
  return max_abs_diff(mat_mul(m, conj_transpose(m)), CMatrix::identity(m.rows())) <= tol;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_size(a.size(), b.size(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

std::size_t LinearMap::dimension() const {
  if (const auto* m = std::get_if<CMatrix>(&rep_)) return m->rows();
  return std::get<MonomialMap>(rep_).source.size();
}

CVector LinearMap::apply(std::span<const Complex> v) const {
  CVector out(dimension());
  apply_into(v, out);
  return out;
}

void LinearMap::apply_into(std::span<const Complex> v, std::span<Complex> out) const {
  require_same_size(dimension(), v.size(), "LinearMap::apply");
  if (const auto* m = std::get_if<CMatrix>(&rep_)) {
    for (std::size_t i = 0; i < m->rows(); ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < m->cols(); ++j) s += (*m)(i, j) * v[j];
      out[i] = s;
    }
    return;
  }
  const auto& mono = std::get<MonomialMap>(rep_);
  for (std::size_t i = 0; i < mono.source.size(); ++i) out[i] = mono.phase[i] * v[mono.source[i]];
}

CMatrix LinearMap::to_matrix() const {
  if (const auto* m = std::get_if<CMatrix>(&rep_)) return *m;
  const auto& mono = std::get<MonomialMap>(rep_);
  CMatrix out(mono.source.size());
  for (std::size_t i = 0; i < mono.source.size(); ++i) out(i, mono.source[i]) = mono.phase[i];
  return out;
}

ProximityIndex::ProximityIndex(std::size_t length, double tol) : length_(length), tol_(tol) {
  // Irrational-ish weights keep distinct group elements from sharing a projection.
  weights_.resize(2 * length);
  double sum = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    const double frac = std::fmod(0.6180339887498949 * static_cast<double>(j + 1), 1.0);
    weights_[j] = 1.0 + frac + 0.1 * std::sqrt(static_cast<double>(j + 2));
    sum += weights_[j];
  }
  window_ = sum * tol_ * 1.0000001;
}

double ProximityIndex::project(std::span<const Complex> key) const {
  double s = 0.0;
  for (std::size_t j = 0; j < key.size(); ++j)
    s += weights_[2 * j] * key[j].real() + weights_[2 * j + 1] * key[j].imag();
  return s;
}

std::optional<std::size_t> ProximityIndex::find(std::span<const Complex> key) const {
  require_same_size(key.size(), length_, "ProximityIndex::find");
  const double p = project(key);
  std::optional<std::size_t> best;
  double best_diff = tol_;
  for (auto it = by_projection_.lower_bound(p - window_); it != by_projection_.end() && it->first <= p + window_;
       ++it) {
    const double d = max_abs_diff(keys_[it->second], key);
    if (d <= best_diff) {
      best_diff = d;
      best = ids_[it->second];
    }
  }
  return best;
}

void ProximityIndex::insert(std::span<const Complex> key, std::size_t id) {
  require_same_size(key.size(), length_, "ProximityIndex::insert");
  by_projection_.emplace(project(key), keys_.size());
  keys_.emplace_back(key.begin(), key.end());
  ids_.push_back(id);
}

}  // namespace gcode
