#include "gcode/wreath.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcode {

WreathProduct::WreathProduct(std::shared_ptr<const FiniteUnitaryGroup> base, std::size_t n)
    : base_(std::move(base)), n_(n) {
  if (!base_) throw std::invalid_argument("WreathProduct: null base group");
  if (n_ < 1) throw std::invalid_argument("WreathProduct: n must be positive");
}

void WreathProduct::check(const WreathElement& g) const {
  if (g.sigma.size() != n_ || g.blocks.size() != n_) throw std::invalid_argument("WreathElement: wrong n");
  std::vector<char> hit(n_, 0);
  for (std::size_t s : g.sigma) {
    if (s >= n_ || hit[s]) throw std::invalid_argument("WreathElement: sigma is not a permutation");
    hit[s] = 1;
  }
  for (ElementId h : g.blocks)
    if (h >= base_->order()) throw std::invalid_argument("WreathElement: block id outside H");
}

WreathElement WreathProduct::identity() const {
  WreathElement e;
  e.sigma.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) e.sigma[i] = i;
  e.blocks.assign(n_, base_->identity());
  return e;
}

WreathElement WreathProduct::block(std::size_t slot, ElementId h) const {
  if (slot < 1 || slot > n_) throw std::out_of_range("WreathProduct::block: slot out of range");
  auto e = identity();
  e.blocks[slot - 1] = h;
  check(e);
  return e;
}

WreathElement WreathProduct::transposition(std::size_t j) const {
  if (j < 1 || j >= n_) throw std::out_of_range("WreathProduct::transposition: index out of range");
  auto e = identity();
  std::swap(e.sigma[j - 1], e.sigma[j]);
  return e;
}

WreathElement WreathProduct::cycle(std::size_t j, std::size_t l_plus_1) const {
  if (j < 1 || j > l_plus_1 || l_plus_1 > n_) throw std::out_of_range("WreathProduct::cycle: bad range");
  auto e = identity();
  for (std::size_t i = j; i < l_plus_1; ++i) e = multiply(e, transposition(i));
  return e;
}

WreathElement WreathProduct::multiply(const WreathElement& g, const WreathElement& h) const {
  check(g);
  check(h);
  WreathElement out;
  out.sigma.resize(n_);
  out.blocks.resize(n_);
  std::vector<std::size_t> h_inv(n_);
  for (std::size_t i = 0; i < n_; ++i) h_inv[h.sigma[i]] = i;
  for (std::size_t i = 0; i < n_; ++i) out.sigma[i] = h.sigma[g.sigma[i]];
  for (std::size_t j = 0; j < n_; ++j) out.blocks[j] = base_->multiply(g.blocks[h_inv[j]], h.blocks[j]);
  return out;
}

WreathElement WreathProduct::inverse(const WreathElement& g) const {
  check(g);
  WreathElement out;
  out.sigma.resize(n_);
  out.blocks.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) out.sigma[g.sigma[i]] = i;
  for (std::size_t j = 0; j < n_; ++j) out.blocks[j] = base_->inverse(g.blocks[g.sigma[j]]);
  return out;
}

CMatrix WreathProduct::to_matrix(const WreathElement& g) const {
  check(g);
  const std::size_t d = base_->dimension();
  CMatrix m(n_ * d, n_ * d);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t src = g.sigma[i];
    const CMatrix& h = base_->element(g.blocks[src]);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) m(i * d + a, src * d + b) = h(a, b);
  }
  return m;
}

CVector WreathProduct::apply(const WreathElement& g, std::span<const Complex> x) const {
  check(g);
  const std::size_t d = base_->dimension();
  if (x.size() != n_ * d) throw std::invalid_argument("WreathProduct::apply: dimension mismatch");
  CVector out(x.size());
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t src = g.sigma[i];
    const CVector part = base_->apply(g.blocks[src], x.subspan(src * d, d));
    std::copy(part.begin(), part.end(), out.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  return out;
}

std::shared_ptr<const FiniteUnitaryGroup> WreathProduct::enumerate(std::size_t max_order) const {
  std::vector<CMatrix> gens;
  std::vector<std::string> names;
  for (std::size_t s = 0; s < base_->generators().size(); ++s) {
    gens.push_back(to_matrix(block(1, base_->generator_ids()[s])));
    names.push_back(base_->generator_names()[s] + "1");
  }
  for (std::size_t j = 1; j < n_; ++j) {
    gens.push_back(to_matrix(transposition(j)));
    names.push_back("s" + std::to_string(j));
  }
  return FiniteUnitaryGroup::generate(std::move(gens), std::move(names), base_->tolerance(), max_order);
}

WreathChain standard_chain(const WreathProduct& w) {
  WreathChain c;
  const std::size_t n = w.n();
  const std::size_t order_h = w.base().order();
  auto slot_leaders = [&](std::size_t slot) {
    std::vector<WreathElement> ls;
    ls.push_back(w.identity());
    for (ElementId h = 0; h < order_h; ++h)
      if (h != w.base().identity()) ls.push_back(w.block(slot, h));
    return ls;
  };
  c.leaders.push_back(slot_leaders(1));
  for (std::size_t l = 1; l < n; ++l) {
    c.leaders.push_back(slot_leaders(l + 1));
    std::vector<WreathElement> cycles;
    for (std::size_t t = 0; t <= l; ++t) cycles.push_back(w.cycle(l + 1 - t, l + 1));
    c.leaders.push_back(std::move(cycles));
  }
  c.generators.resize(c.leaders.size());
  return c;
}

std::vector<std::vector<WreathElement>> standard_generators(const WreathProduct& w, std::span<const ElementId> x_h) {
  std::vector<ElementId> xs(x_h.begin(), x_h.end());
  if (Subgroup::generated_by(w.base_ptr(), xs).size() != w.base().order())
    throw std::invalid_argument("standard_generators: X_H does not generate H");
  const std::size_t n = w.n();
  std::vector<std::vector<WreathElement>> out;
  auto odd = [&](std::size_t l) {
    std::vector<WreathElement> x;
    for (ElementId h : x_h) x.push_back(w.block(1, h));
    for (std::size_t j = 1; j + 1 <= l; ++j) x.push_back(w.transposition(j));
    return x;
  };
  for (std::size_t l = 1; l <= n; ++l) {
    out.push_back(odd(l));
    if (l < n) {
      auto x = odd(l);
      for (ElementId h = 0; h < w.base().order(); ++h)
        if (h != w.base().identity()) x.push_back(w.block(l + 1, h));
      out.push_back(std::move(x));
    }
  }
  return out;
}

WreathChain standard_chain_with_generators(const WreathProduct& w, std::span<const ElementId> x_h) {
  auto c = standard_chain(w);
  c.generators = standard_generators(w, x_h);
  return c;
}

SubgroupChain to_subgroup_chain(const WreathChain& chain, const WreathProduct& w,
                                const std::shared_ptr<const FiniteUnitaryGroup>& enumerated) {
  if (enumerated->dimension() != w.dimension())
    throw std::invalid_argument("to_subgroup_chain: enumerated group has the wrong dimension");
  std::vector<ChainStage> stages;
  for (std::size_t s = 0; s < chain.leaders.size(); ++s) {
    ChainStage st;
    for (const auto& c : chain.leaders[s]) st.leaders.push_back(enumerated->id_of(w.to_matrix(c)));
    if (s < chain.generators.size())
      for (const auto& x : chain.generators[s]) st.generators.push_back(enumerated->id_of(w.to_matrix(x)));
    stages.push_back(std::move(st));
  }
  return SubgroupChain(enumerated, std::move(stages));
}

CVector extend_initial_vector(std::span<const Complex> v0, std::span<const double> u) {
  if (v0.empty() || norm(v0) == 0.0) throw std::invalid_argument("extend_initial_vector: zero v0");
  if (u.empty()) throw std::invalid_argument("extend_initial_vector: empty u");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) throw std::invalid_argument("extend_initial_vector: u must be positive");
    if (i > 0 && !(u[i] > u[i - 1])) throw std::invalid_argument("extend_initial_vector: u must be increasing");
  }
  const CVector v = normalized(v0);
  CVector x;
  x.reserve(v.size() * u.size());
  for (double ui : u)
    for (const Complex& z : v) x.push_back(ui * z);
  return normalized(x);
}

bool is_suitable_base_vector(const FiniteUnitaryGroup& h, std::span<const Complex> v0, double tol) {
  if (v0.size() != h.dimension()) throw std::invalid_argument("is_suitable_base_vector: dimension mismatch");
  for (ElementId g = 0; g < h.order(); ++g)
    if (g != h.identity() && distance(h.apply(g, v0), v0) <= tol) return false;
  return true;
}

}  // namespace gcode
