#include "gcode/chain.hpp"

#include <algorithm>

namespace gcode {

namespace {
const std::vector<ElementId> kEmpty;
}

SubgroupChain::SubgroupChain(GroupPtr action, std::vector<ChainStage> stages)
    : action_(std::move(action)), stages_(std::move(stages)), enum_(std::make_shared<Enumeration>()) {
  if (stages_.empty()) throw std::invalid_argument("SubgroupChain: no stages");
  for (const auto& st : stages_) {
    if (st.leaders.empty() || st.leaders.front() != action_->identity())
      throw std::invalid_argument("SubgroupChain: each stage must list the identity first");
    std::vector<LinearMap> maps;
    maps.reserve(st.leaders.size());
    for (ElementId c : st.leaders) maps.push_back(action_->linear_map(c));
    maps_.push_back(std::move(maps));
  }
}

std::vector<std::size_t> SubgroupChain::radices() const {
  std::vector<std::size_t> r;
  for (const auto& st : stages_) r.push_back(st.leaders.size());
  return r;
}

std::uint64_t SubgroupChain::product_of_indices() const {
  std::uint64_t p = 1;
  for (const auto& st : stages_) p *= st.leaders.size();
  return p;
}

const std::vector<ElementId>& SubgroupChain::generators(std::size_t k) const {
  if (k == 0) return kEmpty;
  return stage(k).generators;
}

ElementId SubgroupChain::compose(std::span<const std::size_t> digits) const {
  if (digits.size() != stages_.size()) throw std::invalid_argument("compose: wrong digit count");
  ElementId g = action_->identity();
  for (std::size_t k = 0; k < stages_.size(); ++k)
    g = action_->multiply(stages_[k].leaders.at(digits[k]), g);
  return g;
}

const SubgroupChain::Enumeration& SubgroupChain::enumeration() const {
  std::call_once(enum_->once, [this] {
    Enumeration& e = *enum_;
    e.code_of.assign(action_->order(), kNoCode);
    std::vector<ElementId> list{action_->identity()};
    for (const auto& st : stages_) {
      std::vector<ElementId> next;
      next.reserve(list.size() * st.leaders.size());
      for (ElementId c : st.leaders)
        for (ElementId h : list) next.push_back(action_->multiply(c, h));
      list = std::move(next);
    }
    for (std::uint64_t code = 0; code < list.size(); ++code) {
      if (e.code_of[list[code]] != kNoCode) {
        if (e.defect.empty()) e.defect = "leaders do not form a transversal: element " + action_->label(list[code]) +
                                         " has two factorizations";
        continue;
      }
      e.code_of[list[code]] = code;
    }
    if (e.defect.empty() && list.size() != action_->order())
      e.defect = "product of stage indices " + std::to_string(list.size()) + " differs from group order " +
                 std::to_string(action_->order());
    e.by_code = std::move(list);
  });
  return *enum_;
}

std::vector<std::size_t> SubgroupChain::factorize(ElementId g) const {
  const auto& e = enumeration();
  if (!e.defect.empty()) throw std::invalid_argument("factorize: " + e.defect);
  std::uint64_t code = e.code_of.at(g);
  std::vector<std::size_t> digits(stages_.size());
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    const std::size_t r = stages_[k].leaders.size();
    digits[k] = code % r;
    code /= r;
  }
  return digits;
}

Subgroup SubgroupChain::subgroup(std::size_t k) const {
  if (k > stages_.size()) throw std::out_of_range("subgroup: stage out of range");
  std::vector<ElementId> list{action_->identity()};
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<ElementId> next;
    for (ElementId c : stages_[s].leaders)
      for (ElementId h : list) next.push_back(action_->multiply(c, h));
    list = std::move(next);
  }
  return Subgroup(action_, std::move(list));
}

std::vector<ElementId> SubgroupChain::induced_leaders(std::size_t k, std::size_t l) const {
  if (k > l || l > stages_.size()) throw std::out_of_range("induced_leaders: bad stage range");
  std::vector<ElementId> list{action_->identity()};
  for (std::size_t s = k; s < l; ++s) {
    std::vector<ElementId> next;
    for (ElementId c : stages_[s].leaders)
      for (ElementId h : list) next.push_back(action_->multiply(c, h));
    list = std::move(next);
  }
  return list;
}

SubgroupChain SubgroupChain::with_stage(std::size_t k, ChainStage replacement) const {
  auto st = stages_;
  st.at(k - 1) = std::move(replacement);
  return SubgroupChain(action_, std::move(st));
}

void SubgroupChain::validate() const {
  const auto& e = enumeration();
  if (!e.defect.empty()) throw std::invalid_argument("SubgroupChain: " + e.defect);
  std::size_t below = 1;
  for (std::size_t k = 1; k <= stages_.size(); ++k) {
    const std::size_t size_k = below * stages_[k - 1].leaders.size();
    std::vector<ElementId> members(e.by_code.begin(), e.by_code.begin() + static_cast<std::ptrdiff_t>(size_k));
    Subgroup gk(action_, members);
    // Closed under multiplication by every leader of this and lower stages.
    for (std::size_t s = 0; s < k; ++s)
      for (ElementId c : stages_[s].leaders)
        for (ElementId x : gk.members())
          if (!gk.contains(action_->multiply(x, c)))
            throw std::invalid_argument("SubgroupChain: G_" + std::to_string(k) + " is not closed");
    const auto& gens = stages_[k - 1].generators;
    if (!gens.empty()) {
      Subgroup closure = Subgroup::generated_by(action_, gens);
      if (closure.members() != gk.members())
        throw std::invalid_argument("SubgroupChain: X_" + std::to_string(k) + " does not generate G_" +
                                    std::to_string(k));
    }
    below = size_k;
  }
}

}  // namespace gcode
