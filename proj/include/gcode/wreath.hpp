#pragma once

#include "gcode/chain.hpp"

namespace gcode {

// (sigma; h_1..h_n) acting on block vectors by (g x)_i = h_{sigma(i)} x_{sigma(i)}.
// sigma is a 0-based image array; blocks index into the base group H.
struct WreathElement {
  std::vector<std::size_t> sigma;
  std::vector<ElementId> blocks;
  bool operator==(const WreathElement&) const = default;
};

class WreathProduct {
 public:
  WreathProduct(std::shared_ptr<const FiniteUnitaryGroup> base, std::size_t n);

  const FiniteUnitaryGroup& base() const { return *base_; }
  const std::shared_ptr<const FiniteUnitaryGroup>& base_ptr() const { return base_; }
  std::size_t n() const { return n_; }
  std::size_t dimension() const { return n_ * base_->dimension(); }

  WreathElement identity() const;
  WreathElement block(std::size_t slot, ElementId h) const;  // slot 1-based
  WreathElement transposition(std::size_t j) const;          // (j j+1), 1-based
  // The cycle leader moving slot l+1 to slot j: product of transpositions (j j+1) ... (l l+1).
  WreathElement cycle(std::size_t j, std::size_t l_plus_1) const;

  WreathElement multiply(const WreathElement& g, const WreathElement& h) const;
  WreathElement inverse(const WreathElement& g) const;
  CMatrix to_matrix(const WreathElement& g) const;
  CVector apply(const WreathElement& g, std::span<const Complex> x) const;

  // The full group as an enumerated matrix group (|H|^n n! must fit the closure budget).
  std::shared_ptr<const FiniteUnitaryGroup> enumerate(std::size_t max_order = 100000) const;

 private:
  void check(const WreathElement& g) const;

  std::shared_ptr<const FiniteUnitaryGroup> base_;
  std::size_t n_;
};

struct WreathChain {
  std::vector<std::vector<WreathElement>> leaders;     // per stage, stage 1 first, identity first
  std::vector<std::vector<WreathElement>> generators;  // X_k per stage
};

// 2n-1 stages: stage 1 = H in slot 1; stage 2l = H in slot l+1; stage 2l+1 = cycles ending at l+1.
WreathChain standard_chain(const WreathProduct& w);

// X_{2l-1} = {(h,1,..,1) : h in X_H} + {(1 2), ..., (l-1 l)}; X_{2l} adds all of H in slot l+1.
std::vector<std::vector<WreathElement>> standard_generators(const WreathProduct& w, std::span<const ElementId> x_h);

WreathChain standard_chain_with_generators(const WreathProduct& w, std::span<const ElementId> x_h);

SubgroupChain to_subgroup_chain(const WreathChain& chain, const WreathProduct& w,
                                const std::shared_ptr<const FiniteUnitaryGroup>& enumerated);

// (u_1 v0, ..., u_n v0) scaled to unit norm.
CVector extend_initial_vector(std::span<const Complex> v0, std::span<const double> u);

// v0 is suitable when the identity is the unique element of H fixing it, i.e. its H-orbit is full.
bool is_suitable_base_vector(const FiniteUnitaryGroup& h, std::span<const Complex> v0, double tol = kTolerance);

}  // namespace gcode
