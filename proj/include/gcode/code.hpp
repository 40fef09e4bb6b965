#pragma once

#include <optional>
#include <random>

#include "gcode/group.hpp"

namespace gcode {

// A group code: the orbit of a unit vector x0, with messages g encoded as g^{-1} x0.
class Code {
 public:
  Code(GroupPtr action, CVector x0, double tol = kTolerance);

  const GroupAction& action() const { return *action_; }
  const GroupPtr& action_ptr() const { return action_; }
  const CVector& x0() const { return x0_; }
  double tolerance() const { return tol_; }
  std::size_t dimension() const { return x0_.size(); }

  // g x0, cached per element.
  const CVector& image(ElementId g) const { return images_.at(g); }
  // The codeword g^{-1} x0 transmitted for message g.
  const CVector& codeword(ElementId g) const { return images_.at(action_->inverse(g)); }
  // ||g x0 - x0||
  double displacement(ElementId g) const { return displacement_.at(g); }

  const Subgroup& stabilizer() const { return stabilizer_; }
  bool full_orbit() const { return stabilizer_.size() == 1; }
  std::vector<CVector> orbit() const;

  double dmin() const;
  const std::vector<ElementId>& neighbor_elements() const;
  std::vector<CVector> neighbor_points() const;

 private:
  GroupPtr action_;
  CVector x0_;
  double tol_;
  std::vector<CVector> images_;
  std::vector<double> displacement_;
  Subgroup stabilizer_;
  double dmin_ = 0.0;
  std::vector<ElementId> neighbors_;
};

// The standard G(r,1,n) vector (a, a+b, ..., a+(n-1)b) with b/a = sqrt(1 - cos(2 pi / r)), normalized.
double standard_beta_ratio(int r);
CVector standard_initial_vector(int r, std::size_t n);
CVector standard_form_vector(std::size_t n, double beta_over_alpha);
// sqrt(2) b / ||(a, ..., a+(n-1)b)|| with a = 1.
double standard_dmin_formula(int r, std::size_t n);

// min over h in H - Stab_H(x0) of ||h x - x0|| - ||x - x0||; positive means x is in FR(H).
double fundamental_margin(std::span<const Complex> x, const Subgroup& h, std::span<const Complex> x0,
                          double tol = kTolerance);
bool in_fundamental_region(std::span<const Complex> x, const Subgroup& h, std::span<const Complex> x0,
                           double tol = kTolerance);

// min over a outside S g of ||a x - x0|| - ||g x - x0||.
double decoding_margin(std::span<const Complex> x, ElementId g, const Code& code);
bool in_decoding_region(std::span<const Complex> x, ElementId g, const Code& code);

// The h in H minimizing ||h x - x0|| (first in member order on ties).
ElementId region_minimizer(std::span<const Complex> x, const Subgroup& h, std::span<const Complex> x0);

// Draw g^{-1} x0 + noise (||noise|| < radius_fraction * d_min) for random g and move it into FR(H).
// Returns nullopt for samples landing within tol of the region boundary.
std::optional<CVector> sample_fundamental_region(const Code& code, const Subgroup& h, std::mt19937_64& rng,
                                                 double radius_fraction = 0.5);

// Uniform point in the open ball of the given radius (complex dimension dim).
CVector random_ball_vector(std::size_t dim, double radius, std::mt19937_64& rng);

struct DminCell {
  int r;
  std::size_t n;
  double measured;
  double formula;
};
std::vector<DminCell> dmin_table(const std::vector<int>& rs, const std::vector<std::size_t>& ns);
std::string dmin_table_csv(const std::vector<DminCell>& cells);

// Exact d_min of the standard G(r,1,n) code by enumerating the orbit of monomial images.
double gr1n_dmin_exhaustive(int r, std::size_t n, std::span<const Complex> x0);

}  // namespace gcode
