#include <gtest/gtest.h>

#include <map>
#include <random>

#include "deconn/euler_tour.hpp"
#include "deconn/oracle.hpp"
#include "support.hpp"

using namespace deconn;

namespace {

// Forest connectivity by DFS over the current tree edges.
std::vector<int> forest_labels(int n, const std::map<int, Edge>& trees) {
  std::vector<Edge> edges;
  for (auto& [_, e] : trees) edges.push_back(e);
  DynamicGraph g(n, edges);
  return oracle::components(g);
}

}  // namespace

TEST(EulerTourForest, SingletonsAtStart) {
  EulerTourForest f(5, 1);
  for (Vertex v = 0; v < 5; ++v) {
    EXPECT_EQ(f.tree_size(v), 1);
    for (Vertex w = 0; w < 5; ++w) EXPECT_EQ(f.connected(v, w), v == w);
  }
}

TEST(EulerTourForest, LinkCutPath) {
  EulerTourForest f(4, 2);
  auto a = f.link(0, 1, 10);
  auto b = f.link(1, 2, 11);
  f.link(2, 3, 12);
  EXPECT_EQ(f.tree_size(3), 4);
  EXPECT_EQ(f.arc_tag(a.forward), 10);
  f.cut(b);
  EXPECT_TRUE(f.connected(0, 1));
  EXPECT_TRUE(f.connected(2, 3));
  EXPECT_FALSE(f.connected(1, 2));
  EXPECT_EQ(f.tree_size(0), 2);
  std::vector<Vertex> vs;
  f.collect_vertices(3, vs);
  std::sort(vs.begin(), vs.end());
  EXPECT_EQ(vs, (std::vector<Vertex>{2, 3}));
}

TEST(EulerTourForest, MarksFollowTrees) {
  EulerTourForest f(6, 3);
  f.link(0, 1, 0);
  auto c = f.link(1, 2, 1);
  f.set_vertex_mark(2, true);
  EXPECT_EQ(f.find_marked_vertex(0), 2);
  f.set_arc_mark(c.backward, true);
  EXPECT_EQ(f.find_marked_arc(0), c.backward);
  EXPECT_LT(f.find_marked_vertex(4), 0);
  f.set_arc_mark(c.backward, false);
  f.cut(c);
  EXPECT_LT(f.find_marked_vertex(0), 0);
  EXPECT_EQ(f.find_marked_vertex(2), 2);
}

TEST(EulerTourForest, RandomLinkCutMatchesDfs) {
  std::mt19937 rng(17);
  const int n = 40;
  EulerTourForest f(n, 5);
  std::map<int, Edge> trees;
  std::map<int, EulerTourForest::Arcs> arcs;
  int next = 0;
  for (int step = 0; step < 3000; ++step) {
    if (trees.empty() || rng() % 3) {
      Vertex u = rng() % n, v = rng() % n;
      if (u == v || f.connected(u, v)) continue;
      arcs[next] = f.link(u, v, next);
      trees[next++] = {u, v};
    } else {
      auto it = trees.begin();
      std::advance(it, rng() % trees.size());
      f.cut(arcs[it->first]);
      arcs.erase(it->first);
      trees.erase(it);
    }
    if (step % 50 == 0) {
      std::vector<int> lab = forest_labels(n, trees);
      std::vector<int> size(n, 0);
      for (Vertex v = 0; v < n; ++v) ++size[lab[v]];
      for (Vertex v = 0; v < n; ++v) {
        ASSERT_EQ(f.tree_size(v), size[lab[v]]);
        for (Vertex w = v + 1; w < n; ++w) ASSERT_EQ(f.connected(v, w), lab[v] == lab[w]);
      }
    }
  }
}
