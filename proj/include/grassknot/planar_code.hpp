#pragma once

// Oriented planar-diagram code: each crossing lists its four incident edge
// labels counterclockwise, starting from the incoming under-strand.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace grassknot {

struct PlanarCrossing {
  /// Counterclockwise; ends[0] enters on the under-strand, ends[2] leaves on it.
  std::array<int, 4> ends{};
  /// The over-strand runs ends[3] -> ends[1]. That makes the crossing positive.
  bool over_exits_at_1 = false;

  [[nodiscard]] int sign() const noexcept { return over_exits_at_1 ? 1 : -1; }
  friend bool operator==(const PlanarCrossing&, const PlanarCrossing&) = default;
};

struct PlanarCode {
  std::vector<PlanarCrossing> crossings;
  int free_loops = 0;  // components that meet no crossing

  [[nodiscard]] int writhe() const {
    int w = 0;
    for (const auto& c : crossings) w += c.sign();
    return w;
  }

  /// Labels occurring in the code, sorted.
  [[nodiscard]] std::vector<int> edge_labels() const {
    std::vector<int> labels;
    for (const auto& c : crossings) labels.insert(labels.end(), c.ends.begin(), c.ends.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
  }

  /// Number of closed components, following edge orientation through crossings.
  [[nodiscard]] int component_count() const {
    // Each edge leaves exactly one crossing slot; map edge -> next edge.
    std::map<int, int> next;
    for (const auto& c : crossings) {
      next[c.ends[0]] = c.ends[2];
      if (c.over_exits_at_1)
        next[c.ends[3]] = c.ends[1];
      else
        next[c.ends[1]] = c.ends[3];
    }
    std::map<int, bool> seen;
    int cycles = 0;
    for (const auto& [start, unused] : next) {
      if (seen[start]) continue;
      ++cycles;
      for (int e = start; !seen[e]; e = next.at(e)) seen[e] = true;
    }
    return cycles + free_loops;
  }

  friend bool operator==(const PlanarCode&, const PlanarCode&) = default;
};

/// Builds an oriented code from unsigned PD tuples [in-under, ccw, out-under, ccw]
/// whose edge labels 1..2c run consecutively along a single knot.
inline PlanarCode planar_code_from_pd(const std::vector<std::array<int, 4>>& tuples) {
  PlanarCode code;
  const int edges = static_cast<int>(tuples.size()) * 2;
  auto succ = [edges](int e) { return e % edges + 1; };
  for (const auto& t : tuples) {
    if (succ(t[0]) != t[2]) throw std::invalid_argument("PD tuple under-strand labels are not consecutive");
    PlanarCrossing pc;
    pc.ends = t;
    if (succ(t[3]) == t[1])
      pc.over_exits_at_1 = true;
    else if (succ(t[1]) == t[3])
      pc.over_exits_at_1 = false;
    else
      throw std::invalid_argument("PD tuple over-strand labels are not consecutive");
    code.crossings.push_back(pc);
  }
  return code;
}

/// Reflection of the plane: reverses every cyclic order.
inline PlanarCode reflect(const PlanarCode& code) {
  PlanarCode out = code;
  for (auto& c : out.crossings) {
    std::swap(c.ends[1], c.ends[3]);
    c.over_exits_at_1 = !c.over_exits_at_1;
  }
  return out;
}

}  // namespace grassknot
