#pragma once

// Perfect matchings of the 2n strand endpoints on one side of a bundle of
// blades, and the combinatorics of tying a top matching to a bottom one.

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace grassknot {

/// An unordered endpoint pair {lo, hi} with lo < hi.
struct Chord {
  int lo = 0;
  int hi = 0;

  auto operator<=>(const Chord&) const = default;

  /// True iff exactly one endpoint of `other` lies strictly inside this chord.
  [[nodiscard]] constexpr bool interleaves(const Chord& other) const noexcept {
    return (lo < other.lo && other.lo < hi && hi < other.hi) ||
           (other.lo < lo && lo < other.hi && other.hi < hi);
  }
  [[nodiscard]] constexpr bool contains(int endpoint) const noexcept {
    return endpoint == lo || endpoint == hi;
  }
  [[nodiscard]] constexpr int other(int endpoint) const noexcept {
    return endpoint == lo ? hi : lo;
  }
};

class MatchingError : public std::invalid_argument {
 public:
  MatchingError(const std::string& what, std::string token)
      : std::invalid_argument(what), token_(std::move(token)) {}
  [[nodiscard]] const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// A fixed-point-free involution on {1..2n}, kept in normal form: chords
/// sorted by their smaller endpoint.
class Matching {
 public:
  Matching() = default;

  /// Validates and normalizes. Throws MatchingError on any defect.
  static Matching from_chords(int n, std::vector<Chord> chords) {
    if (n < 0) throw MatchingError("negative pair count", std::to_string(n));
    const int size = 2 * n;
    std::vector<int> partner(static_cast<std::size_t>(size) + 1, 0);
    for (auto& c : chords) {
      if (c.lo > c.hi) std::swap(c.lo, c.hi);
      const std::string tok = std::to_string(c.lo) + "-" + std::to_string(c.hi);
      if (c.lo == c.hi) throw MatchingError("self-pair " + tok, tok);
      if (c.lo < 1 || c.hi > size)
        throw MatchingError("endpoint out of range 1.." + std::to_string(size) + " in " + tok, tok);
      for (int e : {c.lo, c.hi}) {
        if (partner[e] != 0) throw MatchingError("duplicate endpoint " + std::to_string(e) + " in " + tok, tok);
      }
      partner[c.lo] = c.hi;
      partner[c.hi] = c.lo;
    }
    for (int e = 1; e <= size; ++e) {
      if (partner[e] == 0) throw MatchingError("endpoint " + std::to_string(e) + " missing", std::to_string(e));
    }
    std::sort(chords.begin(), chords.end());
    Matching m;
    m.n_ = n;
    m.chords_ = std::move(chords);
    m.partner_ = std::move(partner);
    return m;
  }

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int endpoint_count() const noexcept { return 2 * n_; }
  [[nodiscard]] std::span<const Chord> chords() const noexcept { return chords_; }
  [[nodiscard]] int partner(int endpoint) const { return partner_.at(static_cast<std::size_t>(endpoint)); }

  [[nodiscard]] const Chord& chord_of(int endpoint) const {
    const int p = partner(endpoint);
    const Chord key{std::min(endpoint, p), std::max(endpoint, p)};
    return *std::lower_bound(chords_.begin(), chords_.end(), key);
  }

  /// Pair-list form, e.g. "12,34,56"; uses "a-b" tokens once 2n > 9.
  [[nodiscard]] std::string to_string() const {
    std::string out;
    const bool dashed = endpoint_count() > 9;
    for (const auto& c : chords_) {
      if (!out.empty()) out += ',';
      out += std::to_string(c.lo);
      if (dashed) out += '-';
      out += std::to_string(c.hi);
    }
    return out;
  }

  friend bool operator==(const Matching& a, const Matching& b) noexcept {
    return a.n_ == b.n_ && a.chords_ == b.chords_;
  }
  friend auto operator<=>(const Matching& a, const Matching& b) noexcept {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.chords_.begin(), a.chords_.end(), b.chords_.begin(),
                                                  b.chords_.end());
  }

 private:
  int n_ = 0;
  std::vector<Chord> chords_;
  std::vector<int> partner_{0};
};

/// A top matching tied against a bottom matching of the same size.
struct TiedConfiguration {
  Matching top;
  Matching bottom;

  TiedConfiguration() = default;
  TiedConfiguration(Matching t, Matching b) : top(std::move(t)), bottom(std::move(b)) {
    if (top.n() != bottom.n()) throw std::invalid_argument("top and bottom matchings differ in size");
  }
  [[nodiscard]] int n() const noexcept { return top.n(); }
  friend bool operator==(const TiedConfiguration&, const TiedConfiguration&) = default;
};

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline int parse_endpoint(const std::string& digits, const std::string& token) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw MatchingError("malformed token '" + token + "'", token);
  if (digits.size() > 6) throw MatchingError("endpoint out of range in '" + token + "'", token);
  return std::stoi(digits);
}

inline void require_same_n(const Matching& a, const Matching& b) {
  if (a.n() != b.n()) throw std::invalid_argument("matchings differ in size");
}

}  // namespace detail

/// Accepts pair-list form ("12,34,56" or "1-2,3-4,5-6") or two-row matrix
/// form ("1 3 5 / 2 4 6", columns are pairs).
inline Matching parse_matching(std::string_view text, int n) {
  const int size = 2 * n;
  std::vector<Chord> chords;
  std::vector<std::string> unpaired;

  if (text.find('/') != std::string_view::npos) {
    auto rows = detail::split(text, '/');
    if (rows.size() != 2) throw MatchingError("matrix form needs exactly two rows", std::string(text));
    std::array<std::vector<int>, 2> cells;
    for (std::size_t r = 0; r < 2; ++r) {
      std::istringstream in(rows[r]);
      std::string word;
      while (in >> word) cells[r].push_back(detail::parse_endpoint(word, word));
    }
    if (cells[0].size() != cells[1].size())
      throw MatchingError("matrix rows differ in length", detail::trim(rows[1]));
    for (std::size_t i = 0; i < cells[0].size(); ++i) chords.push_back({cells[0][i], cells[1][i]});
  } else {
    for (const auto& raw : detail::split(text, ',')) {
      const std::string token = detail::trim(raw);
      if (token.empty()) {
        if (text.find_first_not_of(" \t") == std::string_view::npos) continue;
        throw MatchingError("empty token", token);
      }
      std::vector<int> ends;
      if (token.find('-') != std::string::npos) {
        for (const auto& part : detail::split(token, '-')) ends.push_back(detail::parse_endpoint(detail::trim(part), token));
      } else {
        if (size > 9 && token.size() > 1)
          throw MatchingError("token '" + token + "' is ambiguous with more than 9 endpoints; use 'a-b'", token);
        for (char ch : token) ends.push_back(detail::parse_endpoint(std::string(1, ch), token));
      }
      if (ends.size() == 1) {
        unpaired.push_back(token);
        continue;
      }
      if (ends.size() != 2) throw MatchingError("token '" + token + "' must name exactly two endpoints", token);
      chords.push_back({ends[0], ends[1]});
    }
  }

  if (!unpaired.empty()) {
    // Report the defect as the endpoint left uncovered, naming the dangling token.
    std::vector<bool> seen(static_cast<std::size_t>(std::max(size, 0)) + 1, false);
    for (const auto& c : chords)
      for (int e : {c.lo, c.hi})
        if (e >= 1 && e <= size) seen[e] = true;
    for (const auto& t : unpaired) {
      int e = std::stoi(t);
      if (e >= 1 && e <= size) seen[e] = true;
    }
    for (int e = 1; e <= size; ++e)
      if (!seen[e])
        throw MatchingError("endpoint " + std::to_string(e) + " missing (unpaired token '" + unpaired.front() + "')",
                            unpaired.front());
    throw MatchingError("unpaired token '" + unpaired.front() + "'", unpaired.front());
  }
  return Matching::from_chords(n, std::move(chords));
}

/// All (2n-1)!! matchings in lexicographic normal-form order.
inline std::vector<Matching> enumerate_matchings(int n) {
  if (n < 0) throw std::invalid_argument("negative pair count");
  std::vector<Matching> out;
  const int size = 2 * n;
  if (n == 0) {
    out.push_back(Matching::from_chords(0, {}));
    return out;
  }
  // Odometer over "partner of the smallest free endpoint" choices.
  std::vector<bool> used(static_cast<std::size_t>(size) + 1, false);
  std::vector<Chord> stack;
  std::vector<int> next_candidate;  // per depth: next partner to try
  auto smallest_free = [&] {
    for (int e = 1; e <= size; ++e)
      if (!used[e]) return e;
    return 0;
  };
  next_candidate.push_back(0);
  while (!next_candidate.empty()) {
    const std::size_t depth = next_candidate.size() - 1;
    if (depth == static_cast<std::size_t>(n)) {
      out.push_back(Matching::from_chords(n, stack));
      next_candidate.pop_back();
      if (!stack.empty()) {
        used[stack.back().lo] = used[stack.back().hi] = false;
        stack.pop_back();
      }
      continue;
    }
    const int lo = smallest_free();
    int cand = std::max(next_candidate.back(), lo + 1);
    while (cand <= size && used[cand]) ++cand;
    if (cand > size) {
      next_candidate.pop_back();
      if (!stack.empty()) {
        used[stack.back().lo] = used[stack.back().hi] = false;
        stack.pop_back();
      }
      continue;
    }
    next_candidate.back() = cand + 1;
    used[lo] = used[cand] = true;
    stack.push_back({lo, cand});
    next_candidate.push_back(0);
  }
  return out;
}

inline bool shares_pair(const Matching& a, const Matching& b) {
  detail::require_same_n(a, b);
  for (const auto& c : a.chords())
    if (b.partner(c.lo) == c.hi) return true;
  return false;
}

/// Alternating cycles of the union of the two involutions. Each cycle starts
/// at its smallest endpoint and leaves it along the top chord; cycles are
/// sorted by starting endpoint.
inline std::vector<std::vector<int>> union_cycles(const Matching& top, const Matching& bottom) {
  detail::require_same_n(top, bottom);
  const int size = top.endpoint_count();
  std::vector<bool> seen(static_cast<std::size_t>(size) + 1, false);
  std::vector<std::vector<int>> cycles;
  for (int start = 1; start <= size; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    int v = start;
    bool use_top = true;
    do {
      cycle.push_back(v);
      seen[v] = true;
      v = use_top ? top.partner(v) : bottom.partner(v);
      use_top = !use_top;
    } while (v != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

/// Endpoint reflection i -> 2n+1-i.
inline Matching mirror(const Matching& m) {
  const int flip = m.endpoint_count() + 1;
  std::vector<Chord> chords;
  chords.reserve(m.chords().size());
  for (const auto& c : m.chords()) chords.push_back({flip - c.hi, flip - c.lo});
  return Matching::from_chords(m.n(), std::move(chords));
}

/// Number of interleaving chord pairs.
inline int crossing_count(const Matching& m) {
  int count = 0;
  auto cs = m.chords();
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (cs[i].interleaves(cs[j])) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Six-endpoint naming. E1 and E2 are two drawings of one matrix; they share
// the single label E here.

enum class Label { A1, A2, B1, B2, B3, C1, C2, C3, C4, C5, C6, D1, D2, D3, E };

inline constexpr std::size_t kLabelCount = 15;

namespace detail {
struct LabelRow {
  Label label;
  std::string_view name;
  std::string_view matrix;  // top row / bottom row, columns are pairs
};
inline constexpr std::array<LabelRow, kLabelCount> kTaxonomy{{
    {Label::A1, "A1", "1 3 5 / 2 4 6"}, {Label::A2, "A2", "1 2 4 / 6 3 5"}, {Label::B1, "B1", "1 3 4 / 2 6 5"},
    {Label::B2, "B2", "1 2 5 / 4 3 6"}, {Label::B3, "B3", "1 2 3 / 6 5 4"}, {Label::C1, "C1", "1 3 4 / 2 5 6"},
    {Label::C2, "C2", "1 2 4 / 5 3 6"}, {Label::C3, "C3", "1 2 3 / 5 6 4"}, {Label::C4, "C4", "1 2 4 / 3 6 5"},
    {Label::C5, "C5", "1 2 5 / 3 4 6"}, {Label::C6, "C6", "1 2 3 / 6 4 5"}, {Label::D1, "D1", "1 2 3 / 4 6 5"},
    {Label::D2, "D2", "1 2 4 / 3 5 6"}, {Label::D3, "D3", "1 2 3 / 5 4 6"}, {Label::E, "E", "1 2 3 / 4 5 6"},
}};
}  // namespace detail

inline std::string_view label_name(Label l) { return detail::kTaxonomy[static_cast<std::size_t>(l)].name; }

inline std::optional<Label> parse_label(std::string_view name) {
  for (const auto& row : detail::kTaxonomy)
    if (row.name == name) return row.label;
  return std::nullopt;
}

inline std::array<Label, kLabelCount> all_labels() {
  std::array<Label, kLabelCount> out{};
  for (std::size_t i = 0; i < kLabelCount; ++i) out[i] = detail::kTaxonomy[i].label;
  return out;
}

inline Matching taxonomy_matching(Label l) {
  return parse_matching(detail::kTaxonomy[static_cast<std::size_t>(l)].matrix, 3);
}

inline Label taxonomy_label(const Matching& m) {
  if (m.n() != 3) throw std::invalid_argument("taxonomy labels exist only for six endpoints");
  for (const auto& row : detail::kTaxonomy)
    if (parse_matching(row.matrix, 3) == m) return row.label;
  throw std::logic_error("taxonomy table is incomplete for " + m.to_string());
}

}  // namespace grassknot
