#include <iostream>

#include "deconn/deconn.hpp"

// Two triangles joined by one edge; delete edges and watch the 2-edge-connected
// components split.
int main() {
  using namespace deconn;
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}};
  DynamicGraph g(6, edges);

  CertificateParams params = CertificateParams::defaults(g.vertex_count(), 2);
  DecrementalConnectivity dc(g, 2, /*seed=*/7, params);

  std::cout << "bridges at start:";
  for (const BridgeEvent& b : dc.bridge_report()) std::cout << ' ' << b.edge;
  std::cout << "\n0 ~ 4: " << dc.same_component(0, 4) << '\n';

  for (EdgeId e : {EdgeId{1}, EdgeId{6}}) {
    for (const SplitNotification& s : dc.erase(e)) {
      std::cout << "delete " << e << ": component " << s.old_id << " lost {";
      for (std::size_t i = 0; i < s.vertices.size(); ++i) std::cout << (i ? "," : "") << s.vertices[i];
      std::cout << "} to " << s.new_id << '\n';
    }
  }
  std::cout << "connected(0, 4): " << dc.connected(0, 4) << '\n';

  SelfCheckReport report = dc.finalize();
  std::cout << "self-check: " << (report.pass ? "pass" : "fail") << '\n';
  return report.pass ? 0 : 1;
}
