#pragma once

#include <optional>
#include <string>

#include "gcode/chain.hpp"

namespace gcode {

struct GraphEdge {
  std::size_t from;  // vertex index of c
  std::size_t to;    // vertex index of d
  std::size_t step;  // index into step_set() (always a member of X); c = step * d
};

struct SpanningTree {
  std::vector<std::optional<std::size_t>> parent;  // empty for the root and unreached vertices
  std::vector<std::size_t> via;                    // step index with child = step * parent
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> bfs_order;
  bool spans = false;
};

// Vertices are coset leaders; an edge c -> d labeled a whenever c = a d with a in X.
// Connectivity, adjacency and the spanning tree ignore edge direction.
class CosetLeaderGraph {
 public:
  CosetLeaderGraph(GroupPtr action, std::vector<ElementId> leaders, std::vector<ElementId> generators,
                   std::vector<std::string> generator_names = {});

  const std::vector<ElementId>& vertices() const { return leaders_; }
  // X followed by those inverses not already listed.
  const std::vector<ElementId>& step_set() const { return steps_; }
  const std::vector<std::string>& step_names() const { return step_names_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  std::size_t root() const { return 0; }

  std::optional<std::size_t> vertex_of(ElementId c) const;
  std::vector<std::size_t> neighbors(std::size_t v) const;  // direction ignored, sorted, unique
  bool is_connected() const;
  bool adjacent(ElementId c, ElementId d) const;
  SpanningTree spanning_tree() const;
  std::string to_dot(const std::string& name = "G") const;

 private:
  GroupPtr action_;
  std::vector<ElementId> leaders_;
  std::vector<ElementId> steps_;
  std::vector<std::string> step_names_;
  std::vector<GraphEdge> edges_;
};

// Step set X followed by the inverses of X not already in X.
std::vector<ElementId> symmetric_step_set(const GroupAction& g, std::span<const ElementId> x);

// One graph per chain stage, using the stage's generator set.
std::vector<CosetLeaderGraph> chain_graphs(const SubgroupChain& chain,
                                           const std::vector<std::vector<std::string>>& generator_names = {});

}  // namespace gcode
