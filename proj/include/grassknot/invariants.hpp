#pragma once

// Kauffman bracket, Jones polynomial and knot classification.
//
// Bracket convention: at a crossing, rotate the over-strand counterclockwise
// onto the under-strand; the two regions swept are the A-regions and the
// A-smoothing joins them. With ends listed counterclockwise from the incoming
// under-strand, the A-smoothing pairs (0,1),(2,3) and the B-smoothing pairs
// (0,3),(1,2). A state contributes A^(#A - #B) * delta^(loops - 1),
// delta = -A^2 - A^-2.
//
// Jones: f(A) = (-A^3)^(-writhe) <D>, then t = A^-4.

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grassknot/diagram.hpp"
#include "grassknot/laurent.hpp"
#include "grassknot/planar_code.hpp"

namespace grassknot {

class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  /// Returns true when two classes merged.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

inline const BracketPolynomial& loop_value() {
  static const BracketPolynomial delta = BracketPolynomial::monomial(2, -1) + BracketPolynomial::monomial(-2, -1);
  return delta;
}

/// Sum over (B-count, loops) tallies: sum tally[k][L] A^(c-2k) delta^(L-1).
inline BracketPolynomial bracket_from_tally(int crossings, const std::vector<std::vector<std::int64_t>>& tally) {
  BracketPolynomial out;
  std::vector<BracketPolynomial> delta_pow{BracketPolynomial(BigInt(1))};
  for (std::size_t k = 0; k < tally.size(); ++k) {
    for (std::size_t loops = 1; loops < tally[k].size(); ++loops) {
      if (tally[k][loops] == 0) continue;
      while (delta_pow.size() < loops) delta_pow.push_back(delta_pow.back() * loop_value());
      out += delta_pow[loops - 1].scale_monomial(crossings - 2 * static_cast<int>(k), BigInt(tally[k][loops]));
    }
  }
  return out;
}

}  // namespace detail

/// State sum over all 2^c smoothings of an oriented planar code.
inline BracketPolynomial kauffman_bracket(const PlanarCode& code) {
  const int c = static_cast<int>(code.crossings.size());
  if (c > 30) throw std::invalid_argument("too many crossings for a state sum");
  if (c == 0) {
    if (code.free_loops == 0) throw std::invalid_argument("empty diagram");
    return detail::loop_value().pow(static_cast<unsigned>(code.free_loops - 1));
  }
  const auto labels = code.edge_labels();
  auto index = [&](int label) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  };
  std::vector<std::array<int, 4>> ends;
  for (const auto& x : code.crossings) ends.push_back({index(x.ends[0]), index(x.ends[1]), index(x.ends[2]), index(x.ends[3])});
  const int edges = static_cast<int>(labels.size());

  std::vector<std::vector<std::int64_t>> tally(static_cast<std::size_t>(c) + 1,
                                               std::vector<std::int64_t>(static_cast<std::size_t>(edges + code.free_loops) + 1));
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << c); ++state) {
    detail::DisjointSets sets(edges);
    int loops = edges;
    for (int i = 0; i < c; ++i) {
      const auto& e = ends[i];
      if ((state >> i) & 1U) {  // B
        loops -= sets.unite(e[0], e[3]);
        loops -= sets.unite(e[1], e[2]);
      } else {  // A
        loops -= sets.unite(e[0], e[1]);
        loops -= sets.unite(e[2], e[3]);
      }
    }
    ++tally[std::popcount(state)][loops + code.free_loops];
  }
  return detail::bracket_from_tally(c, tally);
}

/// Repeated bracket evaluation on one projection. Loop counts of the 2^c
/// sign-independent smoothings are computed once; each sign mask then picks
/// which of them are A-states.
///
/// In slot terms (see DiagramCrossing::edges) smoothing H pairs (0,1),(2,3)
/// and V pairs (1,2),(3,0). When chord_a is over, the under-strand occupies
/// the odd slots and the A-smoothing is V; otherwise it is H.
class BracketEngine {
 public:
  explicit BracketEngine(const LinkDiagram& d, int crossing_cap = 24)
      : crossings_(d.total_crossings()), free_loops_(d.free_loops()) {
    if (crossings_ > crossing_cap) throw std::invalid_argument("crossing count exceeds the bracket engine cap");
    const int edges = static_cast<int>(d.edges().size());
    loops_.resize(std::size_t{1} << crossings_);
    for (std::uint64_t v_mask = 0; v_mask < loops_.size(); ++v_mask) {
      detail::DisjointSets sets(edges);
      int loops = edges;
      for (int i = 0; i < crossings_; ++i) {
        const auto& e = d.crossings()[i].edges;
        if ((v_mask >> i) & 1U) {
          loops -= sets.unite(e[1], e[2]);
          loops -= sets.unite(e[3], e[0]);
        } else {
          loops -= sets.unite(e[0], e[1]);
          loops -= sets.unite(e[2], e[3]);
        }
      }
      loops_[v_mask] = static_cast<std::uint16_t>(loops + free_loops_);
      max_loops_ = std::max<int>(max_loops_, loops + free_loops_);
    }
  }

  [[nodiscard]] int crossings() const noexcept { return crossings_; }

  /// Bit i of `signs` set means chord_a over at crossing i.
  [[nodiscard]] BracketPolynomial bracket(std::uint64_t signs) const {
    std::vector<std::vector<std::int64_t>> tally(static_cast<std::size_t>(crossings_) + 1,
                                                 std::vector<std::int64_t>(static_cast<std::size_t>(max_loops_) + 1));
    // Smoothing V at crossing i is the A-smoothing iff bit i is set, so the
    // number of B-smoothings in state v is popcount(v xor signs).
    for (std::uint64_t v = 0; v < loops_.size(); ++v) ++tally[std::popcount(v ^ signs)][loops_[v]];
    return detail::bracket_from_tally(crossings_, tally);
  }

 private:
  int crossings_;
  int free_loops_;
  int max_loops_ = 0;
  std::vector<std::uint16_t> loops_;
};

inline BracketPolynomial kauffman_bracket(const LinkDiagram& d, const SignAssignment& s) {
  if (s.size() != static_cast<std::size_t>(d.total_crossings())) throw std::invalid_argument("sign length mismatch");
  return BracketEngine(d).bracket(s.mask());
}

/// Normalizes a knot bracket into the Jones polynomial in t.
inline JonesPolynomial jones_from_bracket(const BracketPolynomial& bracket, int writhe) {
  // (-A^3)^(-w) = (-1)^w A^(-3w)
  const BigInt sign = (writhe % 2 == 0) ? 1 : -1;
  const BracketPolynomial f = bracket.scale_monomial(-3 * writhe, sign);
  JonesPolynomial out;
  for (const auto& [e, c] : f.terms()) {
    if (e % 4 != 0)
      throw InconsistencyError("normalized bracket has exponent " + std::to_string(e) + " not divisible by 4");
    out.add_term(-e / 4, c);
  }
  return out;
}

inline JonesPolynomial jones(const PlanarCode& code) {
  if (code.component_count() != 1) throw std::invalid_argument("Jones polynomial requires a single component");
  return jones_from_bracket(kauffman_bracket(code), code.writhe());
}

inline JonesPolynomial jones(const SignedDiagram& sd) {
  if (!sd.writhe()) throw std::invalid_argument("Jones polynomial requires a single component");
  return jones_from_bracket(kauffman_bracket(sd.diagram(), sd.signs()), *sd.writhe());
}

// ---------------------------------------------------------------------------
// Reference knots, computed from standard minimal diagrams.

enum class ReferenceKnot { Unknot, TrefoilLeft, TrefoilRight, FigureEight };

inline std::optional<ReferenceKnot> parse_reference_knot(std::string_view name) {
  if (name == "unknot") return ReferenceKnot::Unknot;
  if (name == "trefoil_left") return ReferenceKnot::TrefoilLeft;
  if (name == "trefoil_right") return ReferenceKnot::TrefoilRight;
  if (name == "figure_eight") return ReferenceKnot::FigureEight;
  return std::nullopt;
}

/// Standard diagram for each reference knot.
inline PlanarCode reference_diagram(ReferenceKnot k) {
  switch (k) {
    case ReferenceKnot::Unknot: {
      PlanarCode loop;
      loop.free_loops = 1;
      return loop;
    }
    case ReferenceKnot::TrefoilRight:
    case ReferenceKnot::TrefoilLeft: {
      // Three-crossing alternating diagram; all crossings positive as written.
      auto code = planar_code_from_pd({{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 6, 2}});
      if (code.writhe() != 3) throw InconsistencyError("trefoil reference lost its handedness");
      return k == ReferenceKnot::TrefoilRight ? code : reflect(code);
    }
    case ReferenceKnot::FigureEight:
      return planar_code_from_pd({{4, 2, 5, 1}, {8, 6, 1, 5}, {6, 3, 7, 4}, {2, 7, 3, 8}});
  }
  throw std::invalid_argument("unknown reference knot");
}

/// Memoized; initialization is thread-safe.
inline const JonesPolynomial& reference_knot(ReferenceKnot k) {
  static const std::array<JonesPolynomial, 4> table = [] {
    return std::array<JonesPolynomial, 4>{
        jones(reference_diagram(ReferenceKnot::Unknot)), jones(reference_diagram(ReferenceKnot::TrefoilLeft)),
        jones(reference_diagram(ReferenceKnot::TrefoilRight)), jones(reference_diagram(ReferenceKnot::FigureEight))};
  }();
  return table[static_cast<std::size_t>(k)];
}

inline const JonesPolynomial& reference_knot(std::string_view name) {
  auto k = parse_reference_knot(name);
  if (!k) throw std::invalid_argument("unknown reference knot '" + std::string(name) + "'");
  return reference_knot(*k);
}

/// |V(-1)|.
inline BigInt determinant(const JonesPolynomial& v) {
  const Rational value = v.evaluate(BigInt(-1));
  if (denominator_of(value) != 1) throw InconsistencyError("V(-1) is not an integer");
  BigInt n = numerator_of(value);
  return n < 0 ? BigInt(-n) : n;
}

inline BigInt determinant(const SignedDiagram& sd) { return determinant(jones(sd)); }

// ---------------------------------------------------------------------------
// Classification.

enum class KnotTag { SplitLink, Unknot, TrefoilLeft, TrefoilRight, FigureEight, Other };

inline constexpr std::array<KnotTag, 6> kAllTags{KnotTag::SplitLink,    KnotTag::Unknot,      KnotTag::TrefoilLeft,
                                                 KnotTag::TrefoilRight, KnotTag::FigureEight, KnotTag::Other};

inline std::string_view tag_name(KnotTag t) {
  switch (t) {
    case KnotTag::SplitLink: return "split_link";
    case KnotTag::Unknot: return "unknot";
    case KnotTag::TrefoilLeft: return "trefoil_left";
    case KnotTag::TrefoilRight: return "trefoil_right";
    case KnotTag::FigureEight: return "figure_eight";
    case KnotTag::Other: return "other";
  }
  return "?";
}

inline std::optional<KnotTag> parse_tag(std::string_view name) {
  for (auto t : kAllTags)
    if (tag_name(t) == name) return t;
  return std::nullopt;
}

/// Outcome of one signed diagram. "SplitLink" covers every multi-component
/// result; such results are not knot-classified further.
struct KnotClass {
  KnotTag tag = KnotTag::Unknot;
  int components = 1;
  std::optional<JonesPolynomial> jones;  // set for single-component results

  friend bool operator==(const KnotClass&, const KnotClass&) = default;
};

inline KnotClass classify_knot(const JonesPolynomial& v) {
  KnotClass k;
  k.jones = v;
  long expected_det = -1;
  if (v == reference_knot(ReferenceKnot::Unknot)) {
    k.tag = KnotTag::Unknot;
    expected_det = 1;
  } else if (v == reference_knot(ReferenceKnot::TrefoilLeft)) {
    k.tag = KnotTag::TrefoilLeft;
    expected_det = 3;
  } else if (v == reference_knot(ReferenceKnot::TrefoilRight)) {
    k.tag = KnotTag::TrefoilRight;
    expected_det = 3;
  } else if (v == reference_knot(ReferenceKnot::FigureEight)) {
    k.tag = KnotTag::FigureEight;
    expected_det = 5;
  } else {
    k.tag = KnotTag::Other;
  }
  if (expected_det > 0 && determinant(v) != expected_det)
    throw InconsistencyError("determinant " + determinant(v).str() + " disagrees with class " +
                             std::string(tag_name(k.tag)));
  return k;
}

inline KnotClass classify(const SignedDiagram& sd) {
  const int comps = sd.diagram().component_count();
  if (comps > 1) return KnotClass{KnotTag::SplitLink, comps, std::nullopt};
  return classify_knot(jones(sd));
}

}  // namespace grassknot
