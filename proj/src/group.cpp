#include "gcode/group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace gcode {

std::string GroupAction::label(ElementId a) const { return "g" + std::to_string(a); }

CVector GroupAction::apply(ElementId a, std::span<const Complex> v) const { return linear_map(a).apply(v); }

std::shared_ptr<const FiniteUnitaryGroup> FiniteUnitaryGroup::generate(std::vector<CMatrix> generators,
                                                                       std::vector<std::string> generator_names,
                                                                       double tol, std::size_t max_order) {
  if (generators.empty()) throw std::invalid_argument("generate_closure: no generators");
  const std::size_t dim = generators.front().rows();
  for (const auto& g : generators) {
    if (!g.is_square() || g.rows() != dim) throw std::invalid_argument("generate_closure: generator shape mismatch");
    if (!is_unitary(g, tol)) throw std::invalid_argument("generate_closure: generator is not unitary");
  }
  if (generator_names.empty()) {
    for (std::size_t i = 0; i < generators.size(); ++i)
      generator_names.push_back(i < 26 ? std::string(1, static_cast<char>('A' + i)) : "X" + std::to_string(i));
  }
  if (generator_names.size() != generators.size())
    throw std::invalid_argument("generate_closure: generator name count mismatch");

  std::shared_ptr<FiniteUnitaryGroup> g(new FiniteUnitaryGroup());
  g->dim_ = dim;
  g->tol_ = tol;
  g->generators_ = std::move(generators);
  g->generator_names_ = std::move(generator_names);
  g->index_ = ProximityIndex(dim * dim, tol);

  auto add = [&](CMatrix m, ElementId parent, std::size_t gen) -> ElementId {
    const ElementId id = g->elements_.size();
    if (id >= max_order) throw ClosureOverflow("generate_closure: closure exceeds max_order");
    g->index_.insert(m.data(), id);
    g->elements_.push_back(std::move(m));
    g->bfs_parent_.push_back(parent);
    g->bfs_generator_.push_back(gen);
    return id;
  };
  add(CMatrix::identity(dim), 0, 0);
  for (std::size_t head = 0; head < g->elements_.size(); ++head) {
    for (std::size_t s = 0; s < g->generators_.size(); ++s) {
      CMatrix p = mat_mul(g->generators_[s], g->elements_[head]);
      if (!g->index_.find(p.data())) add(std::move(p), head, s);
    }
  }

  const std::size_t n = g->elements_.size();
  g->inverse_.resize(n);
  for (ElementId a = 0; a < n; ++a) {
    auto inv = g->index_.find(conj_transpose(g->elements_[a]).data());
    if (!inv) throw std::logic_error("generate_closure: inverse missing from closure");
    g->inverse_[a] = *inv;
  }
  for (const auto& gen : g->generators_) g->generator_ids_.push_back(g->id_of(gen));
  if (n <= 2048) {
    g->table_.resize(n * n);
    for (ElementId a = 0; a < n; ++a)
      for (ElementId b = 0; b < n; ++b) {
        auto p = g->index_.find(mat_mul(g->elements_[a], g->elements_[b]).data());
        if (!p) throw std::logic_error("generate_closure: product missing from closure");
        g->table_[a * n + b] = *p;
      }
  }
  return g;
}

ElementId FiniteUnitaryGroup::multiply(ElementId a, ElementId b) const {
  const std::size_t n = elements_.size();
  if (a >= n || b >= n) throw std::out_of_range("FiniteUnitaryGroup::multiply");
  if (!table_.empty()) return table_[a * n + b];
  return id_of(mat_mul(elements_[a], elements_[b]));
}

CVector FiniteUnitaryGroup::apply(ElementId a, std::span<const Complex> v) const {
  return gcode::apply(elements_.at(a), v);
}

std::optional<ElementId> FiniteUnitaryGroup::find(const CMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) return std::nullopt;
  return index_.find(m.data());
}

ElementId FiniteUnitaryGroup::id_of(const CMatrix& m) const {
  auto id = find(m);
  if (!id) throw std::invalid_argument("FiniteUnitaryGroup: matrix is not a group element");
  return *id;
}

std::vector<std::size_t> FiniteUnitaryGroup::word(ElementId a) const {
  std::vector<std::size_t> w;
  while (a != 0) {
    w.push_back(bfs_generator_.at(a));
    a = bfs_parent_[a];
  }
  return w;
}

std::string FiniteUnitaryGroup::label(ElementId a) const {
  const auto w = word(a);
  if (w.empty()) return "I";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (i > 0) os << '*';
    os << generator_names_[w[i]];
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  return os.str();
}

Subgroup::Subgroup(GroupPtr parent, std::vector<ElementId> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!contains(parent_->identity())) throw std::invalid_argument("Subgroup: identity missing");
}

Subgroup Subgroup::generated_by(GroupPtr parent, std::span<const ElementId> generators) {
  std::vector<ElementId> members{parent->identity()};
  std::vector<char> seen(parent->order(), 0);
  seen[parent->identity()] = 1;
  for (std::size_t head = 0; head < members.size(); ++head)
    for (ElementId s : generators) {
      const ElementId p = parent->multiply(s, members[head]);
      if (!seen[p]) {
        seen[p] = 1;
        members.push_back(p);
      }
    }
  return Subgroup(std::move(parent), std::move(members));
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<ElementId> all(parent->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
  const ElementId e = parent->identity();
  return Subgroup(std::move(parent), {e});
}

bool Subgroup::contains(ElementId g) const { return std::binary_search(members_.begin(), members_.end(), g); }

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::vector<std::vector<ElementId>> left_cosets(const Subgroup& k, const Subgroup& h) {
  if (!h.is_subset_of(k)) throw std::invalid_argument("left_cosets: H is not contained in K");
  const GroupAction& g = k.parent();
  std::vector<std::vector<ElementId>> classes;
  std::vector<char> assigned(g.order(), 0);
  auto add_class = [&](ElementId a) {
    std::vector<ElementId> cls;
    cls.reserve(h.size());
    for (ElementId x : h.members()) {
      const ElementId p = g.multiply(a, x);
      assigned[p] = 1;
      cls.push_back(p);
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  };
  add_class(g.identity());
  for (ElementId a : k.members())
    if (!assigned[a]) add_class(a);
  return classes;
}

Subgroup stabilizer(const GroupPtr& group, std::span<const Complex> x0, double tol) {
  return stabilizer(Subgroup::whole(group), x0, tol);
}

Subgroup stabilizer(const Subgroup& h, std::span<const Complex> x0, double tol) {
  const GroupAction& g = h.parent();
  if (x0.size() != g.dimension()) throw std::invalid_argument("stabilizer: dimension mismatch");
  std::vector<ElementId> fix;
  for (ElementId a : h.members())
    if (distance(g.apply(a, x0), x0) <= tol) fix.push_back(a);
  return Subgroup(h.parent_ptr(), std::move(fix));
}

std::vector<CVector> orbit(const GroupAction& group, std::span<const Complex> x0, double tol) {
  if (x0.size() != group.dimension()) throw std::invalid_argument("orbit: dimension mismatch");
  std::vector<CVector> points;
  ProximityIndex seen(x0.size(), tol);
  for (ElementId a = 0; a < group.order(); ++a) {
    CVector p = group.apply(a, x0);
    if (seen.find(p)) continue;
    seen.insert(p, points.size());
    points.push_back(std::move(p));
  }
  return points;
}

bool has_full_orbit(const GroupPtr& group, std::span<const Complex> x0, double tol) {
  return stabilizer(group, x0, tol).size() == 1;
}

CosetLeaderSelection select_coset_leaders(const Subgroup& k, const Subgroup& h, std::span<const Complex> x0,
                                          double tol) {
  const GroupAction& g = k.parent();
  if (x0.size() != g.dimension()) throw std::invalid_argument("select_coset_leaders: dimension mismatch");
  CosetLeaderSelection out;
  for (const auto& cls : left_cosets(k, h)) {
    std::vector<double> disp(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) disp[i] = distance(g.apply(cls[i], x0), x0);
    const double best = *std::min_element(disp.begin(), disp.end());
    std::vector<ElementId> minimizers;
    for (std::size_t i = 0; i < cls.size(); ++i)
      if (disp[i] <= best + tol) minimizers.push_back(cls[i]);
    ElementId leader = minimizers.front();
    if (std::find(cls.begin(), cls.end(), g.identity()) != cls.end()) leader = g.identity();

    // Another minimizer ch is a genuine tie unless h fixes x0.
    const ElementId leader_inv = g.inverse(leader);
    bool tie = false;
    for (ElementId m : minimizers) {
      const ElementId hh = g.multiply(leader_inv, m);
      if (distance(g.apply(hh, x0), x0) > tol) tie = true;
    }
    if (tie) out.report.ties.push_back({cls, minimizers, best});
    out.leaders.leaders.push_back(leader);
  }
  return out;
}

std::variant<CosetLeaderSet, TieReport> minimal_coset_leaders(const Subgroup& k, const Subgroup& h,
                                                              std::span<const Complex> x0, double tol) {
  auto sel = select_coset_leaders(k, h, x0, tol);
  if (sel.has_ties()) return sel.report;
  return sel.leaders;
}

}  // namespace gcode
