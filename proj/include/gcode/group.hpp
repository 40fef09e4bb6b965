#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gcode/numerics.hpp"

namespace gcode {

using ElementId = std::size_t;

// A finite group acting unitarily on C^d, with elements addressed by dense ids.
class GroupAction {
 public:
  virtual ~GroupAction() = default;

  virtual std::size_t order() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual ElementId identity() const = 0;
  virtual ElementId multiply(ElementId a, ElementId b) const = 0;
  virtual ElementId inverse(ElementId a) const = 0;
  virtual LinearMap linear_map(ElementId a) const = 0;
  virtual std::string label(ElementId a) const;

  virtual CVector apply(ElementId a, std::span<const Complex> v) const;
};

using GroupPtr = std::shared_ptr<const GroupAction>;

struct ClosureOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumerated closure of a set of unitary generators.
class FiniteUnitaryGroup final : public GroupAction {
 public:
  static std::shared_ptr<const FiniteUnitaryGroup> generate(std::vector<CMatrix> generators,
                                                            std::vector<std::string> generator_names = {},
                                                            double tol = kTolerance,
                                                            std::size_t max_order = 10000);

  std::size_t order() const override { return elements_.size(); }
  std::size_t dimension() const override { return dim_; }
  ElementId identity() const override { return 0; }
  ElementId multiply(ElementId a, ElementId b) const override;
  ElementId inverse(ElementId a) const override { return inverse_.at(a); }
  LinearMap linear_map(ElementId a) const override { return LinearMap(elements_.at(a)); }
  std::string label(ElementId a) const override;
  CVector apply(ElementId a, std::span<const Complex> v) const override;

  const CMatrix& element(ElementId a) const { return elements_.at(a); }
  std::optional<ElementId> find(const CMatrix& m) const;
  ElementId id_of(const CMatrix& m) const;
  const std::vector<CMatrix>& generators() const { return generators_; }
  const std::vector<ElementId>& generator_ids() const { return generator_ids_; }
  const std::vector<std::string>& generator_names() const { return generator_names_; }
  double tolerance() const { return tol_; }

  // Shortest word (as generator indices, leftmost applied last) reaching a.
  std::vector<std::size_t> word(ElementId a) const;

 private:
  FiniteUnitaryGroup() = default;

  std::size_t dim_ = 0;
  double tol_ = kTolerance;
  std::vector<CMatrix> generators_;
  std::vector<std::string> generator_names_;
  std::vector<ElementId> generator_ids_;
  std::vector<CMatrix> elements_;
  std::vector<ElementId> inverse_;
  std::vector<ElementId> bfs_parent_;
  std::vector<std::size_t> bfs_generator_;
  std::vector<ElementId> table_;  // full Cayley table for small groups, else empty
  ProximityIndex index_;
};

class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<ElementId> members);

  static Subgroup generated_by(GroupPtr parent, std::span<const ElementId> generators);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupAction& parent() const { return *parent_; }
  const GroupPtr& parent_ptr() const { return parent_; }
  const std::vector<ElementId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(ElementId g) const;
  bool is_subset_of(const Subgroup& other) const;

 private:
  GroupPtr parent_;
  std::vector<ElementId> members_;  // sorted
};

// Left cosets aH of H in K; the class containing the identity comes first.
std::vector<std::vector<ElementId>> left_cosets(const Subgroup& k, const Subgroup& h);

Subgroup stabilizer(const GroupPtr& group, std::span<const Complex> x0, double tol = kTolerance);
Subgroup stabilizer(const Subgroup& h, std::span<const Complex> x0, double tol = kTolerance);
std::vector<CVector> orbit(const GroupAction& group, std::span<const Complex> x0, double tol = kTolerance);
bool has_full_orbit(const GroupPtr& group, std::span<const Complex> x0, double tol = kTolerance);

struct CosetLeaderSet {
  std::vector<ElementId> leaders;  // leaders[0] is the identity
};

struct CosetTie {
  std::vector<ElementId> coset;
  std::vector<ElementId> tied;
  double displacement = 0.0;
};

struct TieReport {
  std::vector<CosetTie> ties;
};

// Leader of each coset: an element moving x0 the least (first such in id order).
// Ties between elements that are not stabilizer-mates are reported alongside.
struct CosetLeaderSelection {
  CosetLeaderSet leaders;
  TieReport report;
  bool has_ties() const { return !report.ties.empty(); }
};

CosetLeaderSelection select_coset_leaders(const Subgroup& k, const Subgroup& h, std::span<const Complex> x0,
                                          double tol = kTolerance);
std::variant<CosetLeaderSet, TieReport> minimal_coset_leaders(const Subgroup& k, const Subgroup& h,
                                                              std::span<const Complex> x0,
                                                              double tol = kTolerance);

}  // namespace gcode
