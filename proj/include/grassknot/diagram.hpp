#pragma once

// Canonical planar projection of a tied configuration.
//
// Strand i is the vertical segment x = i between the top ends (y = 0+) and
// the bottom ends. Every chord {a,b} on a side is drawn as a bracket: a leg
// rising from a to its level, a horizontal run to b, a leg back down. The
// bottom side is the same picture reflected through the strands.
//
// Levels are distinct per side and ordered by (span, distance of the
// midpoint from the centre, left endpoint), lowest first. Nested chords thus
// sit below their hosts and two chords meet exactly once when they
// interleave: the lower chord's run cuts the higher chord's leg that lies
// inside it. Among mutually interleaving chords of equal span the central one
// is lowest. For {14,25,36} this puts the middle chord on the strand side of
// the crossing of the outer two, the orientation in which alternating signs
// tie a trefoil.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grassknot/matching.hpp"
#include "grassknot/numeric.hpp"
#include "grassknot/planar_code.hpp"

namespace grassknot {

enum class Side { Top, Bottom };

inline std::string_view side_name(Side s) { return s == Side::Top ? "top" : "bottom"; }

/// Level of each chord of `m` (1 = closest to the strands), indexed like m.chords().
inline std::vector<int> chord_levels(const Matching& m) {
  const int centre2 = m.endpoint_count() + 1;
  auto cs = m.chords();
  std::vector<std::size_t> order(cs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) {
    const Chord& c = cs[i];
    const int off = c.lo + c.hi - centre2;
    return std::array<int, 3>{c.hi - c.lo, off < 0 ? -off : off, c.lo};
  };
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return key(l) < key(r); });
  std::vector<int> levels(cs.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) levels[order[rank]] = static_cast<int>(rank) + 1;
  return levels;
}

/// Position along a bracket chord measured from its smaller endpoint: legs
/// count height, the run counts horizontal distance.
inline int bracket_position(const Chord& c, int level, int x, int height) {
  if (x == c.lo && height <= level) return height;
  if (x == c.hi && height <= level) return level + (c.hi - c.lo) + (level - height);
  return level + (x - c.lo);
}

struct DiagramCrossing {
  Side side = Side::Top;
  Chord chord_a;  // the chord with the smaller left endpoint
  Chord chord_b;
  Rational x;     // abscissa of the crossing point
  int level = 0;  // distance from the strand ends
  /// Position of the crossing along chord_a and chord_b (see bracket_position).
  std::array<int, 2> along{};
  /// Sign of cross(t_a, t_b) for the forward tangents (toward larger endpoints).
  int turn = 1;
  /// Incident edge ids in counterclockwise order. Even slots lie on chord_a,
  /// odd slots on chord_b; slot 0 is chord_a's half toward its larger endpoint.
  std::array<int, 4> edges{};
  /// Orientation signs of (chord_a, chord_b) at this point: +1 when the
  /// traversal runs toward the chord's larger endpoint.
  std::array<int, 2> direction{};

  /// Writhe contribution when chord_a passes over chord_b (negated otherwise).
  [[nodiscard]] int sign_if_a_over() const noexcept { return direction[0] * direction[1] * turn; }
  /// Slot of chord_b's forward half.
  [[nodiscard]] int b_forward_slot() const noexcept { return turn > 0 ? 1 : 3; }
};

enum class Passage { Unsigned, Over, Under };

struct GaussVisit {
  int crossing = 0;
  bool on_chord_a = false;
  bool forward = false;  // moving toward the chord's larger endpoint
  Passage passage = Passage::Unsigned;
  friend bool operator==(const GaussVisit&, const GaussVisit&) = default;
};

struct DiagramEdge {
  int component = 0;
  int from_crossing = 0;
  int to_crossing = 0;
};

class LinkDiagram {
 public:
  [[nodiscard]] const TiedConfiguration& config() const noexcept { return config_; }
  [[nodiscard]] const std::vector<DiagramCrossing>& crossings() const noexcept { return crossings_; }
  [[nodiscard]] const std::vector<DiagramEdge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<std::vector<int>>& components() const noexcept { return components_; }
  [[nodiscard]] const std::vector<std::vector<GaussVisit>>& gauss_code() const noexcept { return gauss_; }
  [[nodiscard]] int total_crossings() const noexcept { return static_cast<int>(crossings_.size()); }
  [[nodiscard]] int component_count() const noexcept { return static_cast<int>(components_.size()); }
  [[nodiscard]] int free_loops() const noexcept {
    return static_cast<int>(std::count_if(gauss_.begin(), gauss_.end(), [](const auto& g) { return g.empty(); }));
  }

  [[nodiscard]] const Matching& matching(Side side) const noexcept {
    return side == Side::Top ? config_.top : config_.bottom;
  }
  [[nodiscard]] int level_of(Side side, const Chord& chord) const {
    const auto& m = matching(side);
    auto cs = m.chords();
    const auto it = std::lower_bound(cs.begin(), cs.end(), chord);
    if (it == cs.end() || *it != chord) throw std::invalid_argument("chord not in matching");
    return (side == Side::Top ? top_levels_ : bottom_levels_)[static_cast<std::size_t>(it - cs.begin())];
  }

  /// Crossing ids along one chord, ordered from its smaller endpoint.
  [[nodiscard]] std::vector<int> crossings_on(Side side, const Chord& chord) const {
    std::vector<std::pair<int, int>> keyed;
    for (int i = 0; i < total_crossings(); ++i) {
      const auto& c = crossings_[i];
      if (c.side != side) continue;
      if (c.chord_a == chord) keyed.emplace_back(c.along[0], i);
      if (c.chord_b == chord) keyed.emplace_back(c.along[1], i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> ids;
    for (const auto& [pos, id] : keyed) ids.push_back(id);
    return ids;
  }

 private:
  friend LinkDiagram build_diagram(const TiedConfiguration& config);

  TiedConfiguration config_;
  std::vector<int> top_levels_;
  std::vector<int> bottom_levels_;
  std::vector<DiagramCrossing> crossings_;
  std::vector<DiagramEdge> edges_;
  std::vector<std::vector<int>> components_;
  std::vector<std::vector<GaussVisit>> gauss_;
};

/// Crossings are ordered top side first, then bottom; within a side by
/// (chord_a, chord_b). Sign bitstrings index this order.
inline LinkDiagram build_diagram(const TiedConfiguration& config) {
  LinkDiagram d;
  d.config_ = config;
  d.components_ = union_cycles(config.top, config.bottom);
  d.top_levels_ = chord_levels(config.top);
  d.bottom_levels_ = chord_levels(config.bottom);

  for (Side side : {Side::Top, Side::Bottom}) {
    const Matching& m = d.matching(side);
    const auto& levels = side == Side::Top ? d.top_levels_ : d.bottom_levels_;
    // Leg directions in the plane: away from the strands is +y on top, -y below.
    const int away = side == Side::Top ? 1 : -1;
    auto cs = m.chords();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        if (!cs[i].interleaves(cs[j])) continue;
        DiagramCrossing c;
        c.side = side;
        c.chord_a = cs[i];  // chords are sorted, so cs[i].lo < cs[j].lo
        c.chord_b = cs[j];
        const bool a_lower = levels[i] < levels[j];
        const Chord& low = a_lower ? c.chord_a : c.chord_b;
        const Chord& high = a_lower ? c.chord_b : c.chord_a;
        const int low_level = a_lower ? levels[i] : levels[j];
        const int high_level = a_lower ? levels[j] : levels[i];
        // The higher chord's leg that lies inside the lower chord's span.
        const int leg = (low.lo < high.lo && high.lo < low.hi) ? high.lo : high.hi;
        c.x = Rational(leg);
        c.level = low_level;
        const int low_pos = bracket_position(low, low_level, leg, low_level);
        const int high_pos = bracket_position(high, high_level, leg, low_level);
        c.along = a_lower ? std::array<int, 2>{low_pos, high_pos} : std::array<int, 2>{high_pos, low_pos};
        // Forward tangents: the run points +x; a left leg points away from
        // the strands, a right leg toward them.
        const int leg_dy = leg == high.lo ? away : -away;
        // cross((1,0),(0,dy)) = dy, and cross((0,dy),(1,0)) = -dy.
        c.turn = a_lower ? leg_dy : -leg_dy;
        d.crossings_.push_back(std::move(c));
      }
    }
  }

  // Traverse: start at the top of the smallest strand, run down it, follow
  // the bottom chord, run up the partner strand, follow its top chord, ...
  struct Visit {
    int crossing;
    bool on_a;
    bool forward;
  };
  auto arc_visits = [&](Side side, int from, int to, std::vector<Visit>& out) {
    const Chord chord{std::min(from, to), std::max(from, to)};
    auto ids = d.crossings_on(side, chord);
    const bool forward = from < to;
    if (!forward) std::reverse(ids.begin(), ids.end());
    for (int id : ids) out.push_back({id, d.crossings_[id].chord_a == chord, forward});
  };

  int edge_base = 0;
  for (std::size_t comp = 0; comp < d.components_.size(); ++comp) {
    const int start = d.components_[comp].front();
    std::vector<Visit> visits;
    int cur = start;
    do {
      const int low = config.bottom.partner(cur);
      arc_visits(Side::Bottom, cur, low, visits);
      const int high = config.top.partner(low);
      arc_visits(Side::Top, low, high, visits);
      cur = high;
    } while (cur != start);

    std::vector<GaussVisit> code;
    const int m = static_cast<int>(visits.size());
    for (int i = 0; i < m; ++i) {
      const auto& v = visits[i];
      const int outgoing = edge_base + i;
      const int incoming = edge_base + (i + m - 1) % m;
      auto& c = d.crossings_[v.crossing];
      const int fwd_half = v.forward ? outgoing : incoming;
      const int bwd_half = v.forward ? incoming : outgoing;
      if (v.on_a) {
        c.edges[0] = fwd_half;
        c.edges[2] = bwd_half;
        c.direction[0] = v.forward ? 1 : -1;
      } else {
        c.edges[c.b_forward_slot()] = fwd_half;
        c.edges[(c.b_forward_slot() + 2) % 4] = bwd_half;
        c.direction[1] = v.forward ? 1 : -1;
      }
      code.push_back({v.crossing, v.on_a, v.forward, Passage::Unsigned});
      d.edges_.push_back({static_cast<int>(comp), v.crossing, visits[(i + 1) % m].crossing});
    }
    edge_base += m;
    d.gauss_.push_back(std::move(code));
  }
  return d;
}

/// One over/under choice per crossing; bit i true means chord_a passes over
/// chord_b at crossing i.
class SignAssignment {
 public:
  SignAssignment() = default;
  explicit SignAssignment(std::vector<bool> bits) : bits_(std::move(bits)) {}

  static SignAssignment from_mask(int count, std::uint64_t mask) {
    if (count > 64) throw std::invalid_argument("mask form limited to 64 crossings");
    std::vector<bool> bits(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) bits[i] = ((mask >> i) & 1U) != 0;
    return SignAssignment(std::move(bits));
  }

  /// "1" = chord_a over; character i is crossing i.
  static SignAssignment parse(std::string_view text) {
    std::vector<bool> bits;
    for (char ch : text) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("sign bitstring may contain only 0 and 1");
      bits.push_back(ch == '1');
    }
    return SignAssignment(std::move(bits));
  }

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool operator[](std::size_t i) const { return bits_.at(i); }
  [[nodiscard]] const std::vector<bool>& bits() const noexcept { return bits_; }

  [[nodiscard]] std::uint64_t mask() const {
    if (bits_.size() > 64) throw std::invalid_argument("mask form limited to 64 crossings");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) m |= std::uint64_t{1} << i;
    return m;
  }

  [[nodiscard]] SignAssignment flipped() const {
    auto b = bits_;
    b.flip();
    return SignAssignment(std::move(b));
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (bool b : bits_) s += b ? '1' : '0';
    return s;
  }

  friend bool operator==(const SignAssignment&, const SignAssignment&) = default;

 private:
  std::vector<bool> bits_;
};

/// Writhe of a connected diagram under a sign mask (bit i = crossing i).
inline int writhe_for_mask(const LinkDiagram& d, std::uint64_t mask) {
  int w = 0;
  for (int i = 0; i < d.total_crossings(); ++i) {
    const int s = d.crossings()[i].sign_if_a_over();
    w += ((mask >> i) & 1U) ? s : -s;
  }
  return w;
}

class SignedDiagram {
 public:
  SignedDiagram(std::shared_ptr<const LinkDiagram> diagram, SignAssignment signs)
      : diagram_(std::move(diagram)), signs_(std::move(signs)) {
    if (!diagram_) throw std::invalid_argument("null diagram");
    if (signs_.size() != static_cast<std::size_t>(diagram_->total_crossings()))
      throw std::invalid_argument("sign assignment has " + std::to_string(signs_.size()) + " bits, diagram has " +
                                  std::to_string(diagram_->total_crossings()) + " crossings");
    gauss_ = diagram_->gauss_code();
    for (auto& comp : gauss_)
      for (auto& v : comp) v.passage = (v.on_chord_a == signs_[v.crossing]) ? Passage::Over : Passage::Under;
    if (diagram_->component_count() == 1) {
      int w = 0;
      for (int i = 0; i < diagram_->total_crossings(); ++i) {
        const int s = diagram_->crossings()[i].sign_if_a_over();
        w += signs_[i] ? s : -s;
      }
      writhe_ = w;
    }
  }

  [[nodiscard]] const LinkDiagram& diagram() const noexcept { return *diagram_; }
  [[nodiscard]] const std::shared_ptr<const LinkDiagram>& diagram_ptr() const noexcept { return diagram_; }
  [[nodiscard]] const SignAssignment& signs() const noexcept { return signs_; }
  [[nodiscard]] const std::vector<std::vector<GaussVisit>>& gauss_code() const noexcept { return gauss_; }
  /// Present for single-component diagrams only.
  [[nodiscard]] std::optional<int> writhe() const noexcept { return writhe_; }

  /// Oriented planar code; edges are numbered as in the diagram.
  [[nodiscard]] PlanarCode planar_code() const {
    PlanarCode code;
    code.free_loops = diagram_->free_loops();
    for (int i = 0; i < diagram_->total_crossings(); ++i) {
      const auto& c = diagram_->crossings()[i];
      const bool a_over = signs_[i];
      // Incoming half of the under chord: the backward half when moving forward.
      int under_in_slot = 0;
      if (!a_over) {
        under_in_slot = c.direction[0] > 0 ? 2 : 0;
      } else {
        const int fwd_slot = c.b_forward_slot();
        under_in_slot = c.direction[1] > 0 ? (fwd_slot + 2) % 4 : fwd_slot;
      }
      PlanarCrossing pc;
      for (int k = 0; k < 4; ++k) pc.ends[k] = c.edges[(under_in_slot + k) % 4];
      // Over chord's outgoing slot.
      int over_out_slot = 0;
      if (a_over) {
        over_out_slot = c.direction[0] > 0 ? 0 : 2;
      } else {
        const int fwd_slot = c.b_forward_slot();
        over_out_slot = c.direction[1] > 0 ? fwd_slot : (fwd_slot + 2) % 4;
      }
      pc.over_exits_at_1 = (over_out_slot - under_in_slot + 4) % 4 == 1;
      code.crossings.push_back(pc);
    }
    return code;
  }

  friend bool operator==(const SignedDiagram& a, const SignedDiagram& b) {
    return a.diagram_->config() == b.diagram_->config() && a.signs_ == b.signs_;
  }

 private:
  std::shared_ptr<const LinkDiagram> diagram_;
  SignAssignment signs_;
  std::vector<std::vector<GaussVisit>> gauss_;
  std::optional<int> writhe_;
};

inline SignedDiagram apply_signs(const LinkDiagram& d, const SignAssignment& s) {
  return SignedDiagram(std::make_shared<const LinkDiagram>(d), s);
}
inline SignedDiagram apply_signs(std::shared_ptr<const LinkDiagram> d, const SignAssignment& s) {
  return SignedDiagram(std::move(d), s);
}

/// Same projection with every crossing switched.
inline SignedDiagram mirror_signed(const SignedDiagram& sd) {
  return SignedDiagram(sd.diagram_ptr(), sd.signs().flipped());
}

/// Rotates the whole picture by half a turn in the plane: top and bottom swap
/// and endpoints reflect i -> 2n+1-i. The physical over-strand at every
/// crossing is kept, so the knot type is unchanged.
inline std::pair<TiedConfiguration, SignAssignment> rotate_half_turn(const LinkDiagram& d, const SignAssignment& s) {
  const TiedConfiguration rotated(mirror(d.config().bottom), mirror(d.config().top));
  const LinkDiagram r = build_diagram(rotated);
  const int flip = d.config().top.endpoint_count() + 1;
  auto image = [flip](const Chord& c) { return Chord{flip - c.hi, flip - c.lo}; };
  std::vector<bool> bits(static_cast<std::size_t>(r.total_crossings()));
  for (int i = 0; i < d.total_crossings(); ++i) {
    const auto& c = d.crossings()[i];
    const Side target = c.side == Side::Top ? Side::Bottom : Side::Top;
    const Chord over = s[i] ? c.chord_a : c.chord_b;
    const Chord img_a = image(c.chord_a), img_b = image(c.chord_b);
    bool matched = false;
    for (int j = 0; j < r.total_crossings(); ++j) {
      const auto& rc = r.crossings()[j];
      if (rc.side != target) continue;
      if ((rc.chord_a == img_a && rc.chord_b == img_b) || (rc.chord_a == img_b && rc.chord_b == img_a)) {
        bits[j] = rc.chord_a == image(over);
        matched = true;
      }
    }
    if (!matched) throw std::logic_error("rotated diagram lost a crossing");
  }
  return {rotated, SignAssignment(std::move(bits))};
}

}  // namespace grassknot
