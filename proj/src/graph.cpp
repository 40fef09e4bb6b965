#include "gcode/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace gcode {

std::vector<ElementId> symmetric_step_set(const GroupAction& g, std::span<const ElementId> x) {
  std::vector<ElementId> steps;
  for (ElementId a : x)
    if (std::find(steps.begin(), steps.end(), a) == steps.end()) steps.push_back(a);
  const std::size_t base = steps.size();
  for (std::size_t i = 0; i < base; ++i) {
    const ElementId inv = g.inverse(steps[i]);
    if (std::find(steps.begin(), steps.end(), inv) == steps.end()) steps.push_back(inv);
  }
  return steps;
}

CosetLeaderGraph::CosetLeaderGraph(GroupPtr action, std::vector<ElementId> leaders, std::vector<ElementId> generators,
                                   std::vector<std::string> generator_names)
    : action_(std::move(action)), leaders_(std::move(leaders)) {
  const GroupAction& g = *action_;
  steps_ = symmetric_step_set(g, generators);
  for (ElementId a : steps_) {
    std::string name;
    for (std::size_t i = 0; i < generators.size() && i < generator_names.size(); ++i) {
      if (generators[i] == a) name = generator_names[i];
    }
    if (name.empty())
      for (std::size_t i = 0; i < generators.size() && i < generator_names.size(); ++i)
        if (g.inverse(generators[i]) == a) name = generator_names[i] + "^-1";
    if (name.empty()) name = g.label(a);
    step_names_.push_back(name);
  }
  std::vector<ElementId> distinct;
  for (ElementId a : generators)
    if (std::find(distinct.begin(), distinct.end(), a) == distinct.end()) distinct.push_back(a);
  const std::size_t x_count = distinct.size();  // steps_ lists X first
  for (std::size_t ci = 0; ci < leaders_.size(); ++ci)
    for (std::size_t s = 0; s < x_count; ++s) {
      const ElementId d = g.multiply(g.inverse(steps_[s]), leaders_[ci]);
      if (auto di = vertex_of(d)) edges_.push_back({ci, *di, s});
    }
}

std::optional<std::size_t> CosetLeaderGraph::vertex_of(ElementId c) const {
  auto it = std::find(leaders_.begin(), leaders_.end(), c);
  if (it == leaders_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - leaders_.begin());
}

std::vector<std::size_t> CosetLeaderGraph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_) {
    if (e.from == v && e.to != v) out.push_back(e.to);
    if (e.to == v && e.from != v) out.push_back(e.from);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool CosetLeaderGraph::is_connected() const {
  if (leaders_.empty()) return true;
  std::vector<char> seen(leaders_.size(), 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        queue.push_back(w);
      }
  }
  return count == leaders_.size();
}

bool CosetLeaderGraph::adjacent(ElementId c, ElementId d) const {
  const auto ci = vertex_of(c);
  const auto di = vertex_of(d);
  if (!ci || !di) return false;
  for (const auto& e : edges_)
    if ((e.from == *ci && e.to == *di) || (e.from == *di && e.to == *ci)) return true;
  return false;
}

SpanningTree CosetLeaderGraph::spanning_tree() const {
  const GroupAction& g = *action_;
  SpanningTree t;
  const std::size_t n = leaders_.size();
  t.parent.assign(n, std::nullopt);
  t.via.assign(n, 0);
  t.children.assign(n, {});
  if (n == 0) {
    t.spans = true;
    return t;
  }
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  t.bfs_order.push_back(0);
  for (std::size_t head = 0; head < t.bfs_order.size(); ++head) {
    const std::size_t p = t.bfs_order[head];
    for (std::size_t s = 0; s < steps_.size(); ++s) {
      const auto c = vertex_of(g.multiply(steps_[s], leaders_[p]));
      if (!c || seen[*c]) continue;
      seen[*c] = 1;
      t.parent[*c] = p;
      t.via[*c] = s;
      t.children[p].push_back(*c);
      t.bfs_order.push_back(*c);
    }
  }
  t.spans = t.bfs_order.size() == n;
  return t;
}

std::string CosetLeaderGraph::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < leaders_.size(); ++v)
    os << "  v" << v << " [label=\"" << action_->label(leaders_[v]) << "\"];\n";
  for (const auto& e : edges_)
    os << "  v" << e.from << " -> v" << e.to << " [label=\"" << step_names_[e.step] << "\"];\n";
  os << "}\n";
  return os.str();
}

std::vector<CosetLeaderGraph> chain_graphs(const SubgroupChain& chain,
                                           const std::vector<std::vector<std::string>>& generator_names) {
  std::vector<CosetLeaderGraph> graphs;
  for (std::size_t k = 1; k <= chain.length(); ++k) {
    std::vector<std::string> names;
    if (k - 1 < generator_names.size()) names = generator_names[k - 1];
    graphs.emplace_back(chain.action_ptr(), chain.stage(k).leaders, chain.stage(k).generators, names);
  }
  return graphs;
}

}  // namespace gcode
