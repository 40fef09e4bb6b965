#include "gcode/code.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "gcode/gr1n.hpp"

namespace gcode {

Code::Code(GroupPtr action, CVector x0, double tol)
    : action_(std::move(action)), x0_(std::move(x0)), tol_(tol), stabilizer_(Subgroup::trivial(action_)) {
  if (x0_.size() != action_->dimension()) throw std::invalid_argument("Code: x0 dimension mismatch");
  if (std::abs(norm(x0_) - 1.0) > tol_) throw std::invalid_argument("Code: x0 must have unit norm");
  const std::size_t order = action_->order();
  images_.resize(order);
  displacement_.resize(order);
  std::vector<ElementId> fix;
  for (ElementId g = 0; g < order; ++g) {
    images_[g] = action_->apply(g, x0_);
    displacement_[g] = distance(images_[g], x0_);
    if (displacement_[g] <= tol_) fix.push_back(g);
  }
  stabilizer_ = Subgroup(action_, std::move(fix));
  dmin_ = std::numeric_limits<double>::infinity();
  for (ElementId g = 0; g < order; ++g)
    if (displacement_[g] > tol_) dmin_ = std::min(dmin_, displacement_[g]);
  if (std::isfinite(dmin_))
    for (ElementId g = 0; g < order; ++g)
      if (displacement_[g] > tol_ && displacement_[g] <= dmin_ + tol_) neighbors_.push_back(g);
}

std::vector<CVector> Code::orbit() const { return gcode::orbit(*action_, x0_, tol_); }

double Code::dmin() const {
  if (!std::isfinite(dmin_)) throw std::domain_error("dmin: the orbit of x0 is a single point");
  return dmin_;
}

const std::vector<ElementId>& Code::neighbor_elements() const {
  if (neighbors_.empty()) throw std::domain_error("nearest_neighbors: the orbit of x0 is a single point");
  return neighbors_;
}

std::vector<CVector> Code::neighbor_points() const {
  std::vector<CVector> pts;
  ProximityIndex seen(x0_.size(), tol_);
  for (ElementId g : neighbor_elements()) {
    if (seen.find(images_[g])) continue;
    seen.insert(images_[g], pts.size());
    pts.push_back(images_[g]);
  }
  return pts;
}

double standard_beta_ratio(int r) {
  if (r < 2) throw std::invalid_argument("standard_beta_ratio: r must be at least 2");
  return std::sqrt(1.0 - std::cos(2.0 * kPi / r));
}

CVector standard_form_vector(std::size_t n, double beta_over_alpha) {
  if (n < 1) throw std::invalid_argument("standard_form_vector: n must be positive");
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + beta_over_alpha * static_cast<double>(i);
  return normalized(x);
}

CVector standard_initial_vector(int r, std::size_t n) { return standard_form_vector(n, standard_beta_ratio(r)); }

double standard_dmin_formula(int r, std::size_t n) {
  const double beta = standard_beta_ratio(r);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(1.0 + beta * static_cast<double>(i), 2);
  return std::sqrt(2.0) * beta / std::sqrt(s);
}

double fundamental_margin(std::span<const Complex> x, const Subgroup& h, std::span<const Complex> x0, double tol) {
  const GroupAction& g = h.parent();
  const double base = distance(x, x0);
  double margin = std::numeric_limits<double>::infinity();
  for (ElementId a : h.members()) {
    if (a == g.identity()) continue;
    const CVector ax0 = g.apply(a, x0);
    if (distance(ax0, x0) <= tol) continue;
    margin = std::min(margin, distance(g.apply(a, x), x0) - base);
  }
  return margin;
}

bool in_fundamental_region(std::span<const Complex> x, const Subgroup& h, std::span<const Complex> x0, double tol) {
  return fundamental_margin(x, h, x0, tol) > tol;
}

double decoding_margin(std::span<const Complex> x, ElementId g, const Code& code) {
  const GroupAction& act = code.action();
  // a is in S g exactly when a^{-1} x0 = g^{-1} x0.
  const CVector& target = code.codeword(g);
  const double own = distance(act.apply(g, x), code.x0());
  double margin = std::numeric_limits<double>::infinity();
  for (ElementId a = 0; a < act.order(); ++a) {
    if (distance(code.codeword(a), target) <= code.tolerance()) continue;
    margin = std::min(margin, distance(act.apply(a, x), code.x0()) - own);
  }
  return margin;
}

bool in_decoding_region(std::span<const Complex> x, ElementId g, const Code& code) {
  return decoding_margin(x, g, code) > code.tolerance();
}

ElementId region_minimizer(std::span<const Complex> x, const Subgroup& h, std::span<const Complex> x0) {
  const GroupAction& g = h.parent();
  ElementId best = g.identity();
  double best_d = distance(x, x0);
  for (ElementId a : h.members()) {
    const double d = distance(g.apply(a, x), x0);
    if (d < best_d) {
      best_d = d;
      best = a;
    }
  }
  return best;
}

CVector random_ball_vector(std::size_t dim, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CVector v(dim);
  for (auto& z : v) z = {gauss(rng), gauss(rng)};
  const double len = norm(v);
  // Radius law for the uniform distribution in a ball of real dimension 2*dim.
  const double rho = radius * std::pow(unit(rng), 1.0 / (2.0 * static_cast<double>(dim)));
  return scale(v, len > 0.0 ? rho / len : 0.0);
}

std::optional<CVector> sample_fundamental_region(const Code& code, const Subgroup& h, std::mt19937_64& rng,
                                                 double radius_fraction) {
  const GroupAction& act = code.action();
  std::uniform_int_distribution<std::size_t> pick(0, act.order() - 1);
  const ElementId g = pick(rng);
  const CVector noise = random_ball_vector(code.dimension(), radius_fraction * code.dmin(), rng);
  const CVector x = add(code.codeword(g), noise);
  const ElementId best = region_minimizer(x, h, code.x0());
  CVector y = act.apply(best, x);
  if (fundamental_margin(y, h, code.x0(), code.tolerance()) <= code.tolerance()) return std::nullopt;
  return y;
}

double gr1n_dmin_exhaustive(int r, std::size_t n, std::span<const Complex> x0) {
  if (x0.size() != n) throw std::invalid_argument("gr1n_dmin_exhaustive: dimension mismatch");
  std::vector<Complex> phase(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) phase[static_cast<std::size_t>(k)] = root_of_unity(r, k);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    // Per-slot costs for every exponent; the total is their sum.
    std::vector<std::vector<double>> cost(n, std::vector<double>(static_cast<std::size_t>(r)));
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < r; ++k) cost[i][static_cast<std::size_t>(k)] = std::norm(phase[static_cast<std::size_t>(k)] * x0[perm[i]] - x0[i]);
    std::vector<int> k(n, 0);
    while (true) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += cost[i][static_cast<std::size_t>(k[i])];
      const double d = std::sqrt(s);
      if (d > kTolerance) best = std::min(best, d);
      std::size_t pos = 0;
      while (pos < n && ++k[pos] == r) k[pos++] = 0;
      if (pos == n) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<DminCell> dmin_table(const std::vector<int>& rs, const std::vector<std::size_t>& ns) {
  std::vector<DminCell> cells;
  for (int r : rs)
    for (std::size_t n : ns) {
      const CVector x0 = standard_initial_vector(r, n);
      cells.push_back({r, n, gr1n_dmin_exhaustive(r, n, x0), standard_dmin_formula(r, n)});
    }
  return cells;
}

std::string dmin_table_csv(const std::vector<DminCell>& cells) {
  std::vector<int> rs;
  std::vector<std::size_t> ns;
  for (const auto& c : cells) {
    if (std::find(rs.begin(), rs.end(), c.r) == rs.end()) rs.push_back(c.r);
    if (std::find(ns.begin(), ns.end(), c.n) == ns.end()) ns.push_back(c.n);
  }
  std::ostringstream os;
  os << "r";
  for (std::size_t n : ns) os << ",n=" << n;
  os << '\n';
  char buf[32];
  for (int r : rs) {
    os << r;
    for (std::size_t n : ns) {
      for (const auto& c : cells)
        if (c.r == r && c.n == n) {
          std::snprintf(buf, sizeof buf, ",%.4f", c.measured);
          os << buf;
        }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gcode
