#pragma once

#include <cstdint>
#include <memory>
#include <mutex>

#include "gcode/group.hpp"

namespace gcode {

struct ChainStage {
  std::vector<ElementId> leaders;     // CL(G_k/G_{k-1}); leaders[0] is the identity
  std::vector<ElementId> generators;  // X_k, generating G_k (may be empty if unknown)
};

// G_0 = {I} < G_1 < ... < G_m = G with a leader set per consecutive pair.
// Stages are numbered 1..m.
class SubgroupChain {
 public:
  SubgroupChain(GroupPtr action, std::vector<ChainStage> stages);

  const GroupAction& action() const { return *action_; }
  const GroupPtr& action_ptr() const { return action_; }
  std::size_t length() const { return stages_.size(); }
  const ChainStage& stage(std::size_t k) const { return stages_.at(k - 1); }
  const std::vector<LinearMap>& leader_maps(std::size_t k) const { return maps_.at(k - 1); }
  std::vector<std::size_t> radices() const;
  std::uint64_t product_of_indices() const;

  // X_k; X_0 is empty.
  const std::vector<ElementId>& generators(std::size_t k) const;

  // c_m * ... * c_1 for digits (d_1, ..., d_m).
  ElementId compose(std::span<const std::size_t> digits) const;
  // Inverse of compose; requires the chain to be a valid transversal of the whole group.
  std::vector<std::size_t> factorize(ElementId g) const;

  // G_k as enumerated products of the first k leader sets.
  Subgroup subgroup(std::size_t k) const;
  // CL(G_l / G_k): products c_l ... c_{k+1}, stage k+1 varying fastest.
  std::vector<ElementId> induced_leaders(std::size_t k, std::size_t l) const;

  SubgroupChain with_stage(std::size_t k, ChainStage replacement) const;

  // Throws std::invalid_argument describing the first structural defect found.
  void validate() const;

 private:
  struct Enumeration {
    std::once_flag once;
    std::vector<ElementId> by_code;        // mixed-radix code -> element
    std::vector<std::uint64_t> code_of;    // element -> code, or kNoCode
    std::string defect;
  };
  static constexpr std::uint64_t kNoCode = ~std::uint64_t{0};

  const Enumeration& enumeration() const;

  GroupPtr action_;
  std::vector<ChainStage> stages_;
  std::vector<std::vector<LinearMap>> maps_;
  std::shared_ptr<Enumeration> enum_;
};

}  // namespace gcode
