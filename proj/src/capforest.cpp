#include <queue>

#include "mtcut/reductions.hpp"

namespace mtcut::reduce {

// Maximum-adjacency scan. r(y) is the weight between y and the scanned set;
// when x is scanned, every edge (x, y) to an unscanned y gets q = r(y) after
// adding w(x, y), which never exceeds the local connectivity of x and y.
std::vector<EdgeConnectivity> capforest(const ContractableGraph& g) {
  std::vector<EdgeConnectivity> out;
  out.reserve(g.numEdges());
  std::vector<EdgeWeight> r(g.slotCount(), 0);
  std::vector<char> scanned(g.slotCount(), 0);
  using Entry = std::pair<EdgeWeight, VertexId>;
  auto cmp = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

  for (VertexId start = 0; start < g.slotCount(); ++start) {
    if (!g.isAlive(start) || scanned[start]) continue;
    heap.push({0, start});
    while (!heap.empty()) {
      const auto [key, x] = heap.top();
      heap.pop();
      if (scanned[x] || key != r[x]) continue;
      scanned[x] = 1;
      for (const auto& [y, w] : g.neighbors(x)) {
        if (scanned[y]) continue;
        r[y] += w;
        out.push_back({x, y, r[y]});
        heap.push({r[y], y});
      }
    }
  }
  return out;
}

}  // namespace mtcut::reduce
