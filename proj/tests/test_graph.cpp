#include <set>
#include <tuple>

#include "doctest.h"
#include "gcode/gr1n.hpp"
#include "gcode/graph.hpp"
#include "oracle.hpp"

using namespace gcode;

namespace {

std::shared_ptr<const FiniteUnitaryGroup> cyclic(int r) {
  return FiniteUnitaryGroup::generate({CMatrix{{oracle::xi_pow(r, 1)}}}, {"z"});
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("step set lists X then the missing inverses") {
    const auto g = cyclic(4);
    const ElementId z = g->generator_ids()[0];
    const ElementId z2 = g->multiply(z, z);
    const auto steps = symmetric_step_set(*g, std::vector<ElementId>{z, z2, z});
    REQUIRE(steps.size() == 3);
    CHECK(steps[0] == z);
    CHECK(steps[1] == z2);
    CHECK(steps[2] == g->inverse(z));
  }

  TEST_CASE("edges match a brute-force enumeration") {
    auto g = std::make_shared<const Gr1nGroup>(4, 3);
    const auto chain = gr1n_subgroup_chain(g);
    const auto graphs = chain_graphs(chain);
    REQUIRE(graphs.size() == chain.length());
    for (std::size_t k = 1; k <= chain.length(); ++k) {
      const auto& graph = graphs[k - 1];
      const auto& leaders = chain.stage(k).leaders;
      const auto& x = chain.stage(k).generators;
      std::set<std::pair<std::size_t, std::size_t>> expect, got;
      for (std::size_t c = 0; c < leaders.size(); ++c)
        for (std::size_t d = 0; d < leaders.size(); ++d)
          for (ElementId a : x)
            if (oracle::max_diff(g->element(leaders[c]).to_matrix(),
                                 oracle::naive_mul(g->element(a).to_matrix(), g->element(leaders[d]).to_matrix())) <
                1e-12)
              expect.insert({c, d});
      for (const auto& e : graph.edges()) {
        got.insert({e.from, e.to});
        CHECK(g->multiply(graph.step_set()[e.step], leaders[e.to]) == leaders[e.from]);
        CHECK(e.step < x.size());
      }
      CHECK(got == expect);
      CHECK(graph.is_connected());
    }
  }

  TEST_CASE("spanning tree structure") {
    auto g = std::make_shared<const Gr1nGroup>(5, 3);
    const auto chain = gr1n_subgroup_chain(g);
    for (const auto& graph : chain_graphs(chain)) {
      const auto t = graph.spanning_tree();
      REQUIRE(t.spans);
      CHECK(t.bfs_order.size() == graph.vertices().size());
      CHECK_FALSE(t.parent[graph.root()].has_value());
      std::size_t edges = 0;
      for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
        edges += t.children[v].size();
        if (v == graph.root()) continue;
        REQUIRE(t.parent[v].has_value());
        const ElementId step = graph.step_set()[t.via[v]];
        CHECK(g->multiply(step, graph.vertices()[*t.parent[v]]) == graph.vertices()[v]);
        CHECK(graph.adjacent(graph.vertices()[v], graph.vertices()[*t.parent[v]]));
      }
      CHECK(edges + 1 == graph.vertices().size());
    }
  }

  TEST_CASE("a disconnected leader set") {
    const auto g = cyclic(4);
    const ElementId z = g->generator_ids()[0];
    const CosetLeaderGraph graph(g, {g->identity(), g->multiply(z, z)}, {z});
    CHECK(graph.edges().empty());
    CHECK_FALSE(graph.is_connected());
    CHECK_FALSE(graph.spanning_tree().spans);
    CHECK(graph.neighbors(0).empty());
    CHECK_FALSE(graph.adjacent(g->identity(), g->multiply(z, z)));
  }

  TEST_CASE("direction is ignored for adjacency") {
    const auto g = cyclic(3);
    const ElementId z = g->generator_ids()[0];
    const ElementId z2 = g->multiply(z, z);
    // Only z = z * I and z2 = z * z are edges; I = z * z2 also holds.
    const CosetLeaderGraph graph(g, {g->identity(), z, z2}, {z}, {"z"});
    CHECK(graph.edges().size() == 3);
    CHECK(graph.neighbors(1) == std::vector<std::size_t>{0, 2});
    CHECK(graph.adjacent(z, g->identity()));
    CHECK(graph.step_names() == std::vector<std::string>{"z", "z^-1"});
  }

  TEST_CASE("dot output") {
    const auto g = cyclic(3);
    const ElementId z = g->generator_ids()[0];
    const CosetLeaderGraph graph(g, {g->identity(), z}, {z}, {"z"});
    const std::string dot = graph.to_dot("stage");
    CHECK(dot.rfind("digraph \"stage\" {\n", 0) == 0);
    CHECK(dot.find("v1 -> v0 [label=\"z\"];") != std::string::npos);
    CHECK(dot.find("[label=\"I\"]") != std::string::npos);
  }
}
