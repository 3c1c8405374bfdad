#pragma once

// Exhaustive census of tied configurations and their exact outcome
// probabilities, plus a seeded Monte Carlo cross-check.
//
// Probability model: top and bottom matchings are uniform and independent;
// every crossing of the canonical projection is an independent fair coin.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "grassknot/diagram.hpp"
#include "grassknot/invariants.hpp"
#include "grassknot/matching.hpp"
#include "grassknot/numeric.hpp"

namespace grassknot {

inline constexpr std::string_view kProbabilityModel =
    "top and bottom matchings uniform and independent; over/under at each crossing of the canonical "
    "projection an independent fair coin";

inline constexpr int kDefaultCrossingCap = 20;
inline constexpr int kMaxExactPairs = 4;

class CrossingCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ClassCounts = std::array<std::uint64_t, kAllTags.size()>;

inline std::uint64_t& count_of(ClassCounts& counts, KnotTag t) { return counts[static_cast<std::size_t>(t)]; }
inline std::uint64_t count_of(const ClassCounts& counts, KnotTag t) { return counts[static_cast<std::size_t>(t)]; }

struct PairReport {
  Matching top;
  Matching bottom;
  std::optional<std::array<Label, 2>> labels;  // six endpoints only
  bool connected = false;
  int component_count = 0;
  int total_crossings = 0;
  ClassCounts class_counts{};
  Rational unknot_fraction;

  [[nodiscard]] std::uint64_t assignments() const { return std::uint64_t{1} << total_crossings; }
  [[nodiscard]] Rational fraction(KnotTag t) const {
    return make_rational(BigInt(count_of(class_counts, t)), BigInt(assignments()));
  }
  friend bool operator==(const PairReport&, const PairReport&) = default;
};

struct Probabilities {
  Rational split;
  Rational ring;
  Rational trefoil;
  Rational figure_eight;
  Rational other;
  Rational trefoil_left;
  Rational trefoil_right;

  [[nodiscard]] Rational total() const { return split + ring + trefoil + figure_eight + other; }
  friend bool operator==(const Probabilities&, const Probabilities&) = default;
};

struct CensusReport {
  int n = 0;
  std::uint64_t total_pairs = 0;
  std::uint64_t connected_pairs = 0;
  std::uint64_t split_pairs = 0;
  std::string model{kProbabilityModel};
  Probabilities probabilities;
  Rational p_connected;
  std::optional<Rational> book_answer;  // 8/15 for six blades
  std::vector<PairReport> pairs;

  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

/// Classification of every sign assignment of one diagram, with the diagram
/// and bracket tables built once.
class PairClassifier {
 public:
  explicit PairClassifier(const TiedConfiguration& config, int crossing_cap = kDefaultCrossingCap)
      : diagram_(std::make_shared<const LinkDiagram>(build_diagram(config))) {
    if (diagram_->total_crossings() > crossing_cap)
      throw CrossingCapExceeded("configuration has " + std::to_string(diagram_->total_crossings()) +
                                " crossings, above the exact-mode cap of " + std::to_string(crossing_cap) +
                                "; use Monte Carlo mode");
    if (diagram_->component_count() == 1) engine_.emplace(*diagram_, crossing_cap);
  }

  [[nodiscard]] const LinkDiagram& diagram() const noexcept { return *diagram_; }

  [[nodiscard]] KnotClass classify(std::uint64_t mask) const {
    if (!engine_) return KnotClass{KnotTag::SplitLink, diagram_->component_count(), std::nullopt};
    return classify_knot(jones_from_bracket(engine_->bracket(mask), writhe_for_mask(*diagram_, mask)));
  }

 private:
  std::shared_ptr<const LinkDiagram> diagram_;
  std::optional<BracketEngine> engine_;
};

inline PairReport classify_pair(const Matching& top, const Matching& bottom, int crossing_cap = kDefaultCrossingCap) {
  const PairClassifier classifier(TiedConfiguration(top, bottom), crossing_cap);
  const auto& d = classifier.diagram();
  PairReport r;
  r.top = top;
  r.bottom = bottom;
  if (top.n() == 3) r.labels = std::array<Label, 2>{taxonomy_label(top), taxonomy_label(bottom)};
  r.component_count = d.component_count();
  r.connected = r.component_count == 1;
  r.total_crossings = d.total_crossings();
  for (std::uint64_t mask = 0; mask < r.assignments(); ++mask) ++count_of(r.class_counts, classifier.classify(mask).tag);
  r.unknot_fraction = r.fraction(KnotTag::Unknot);
  return r;
}

namespace detail {

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

struct CensusOptions {
  int threads = 1;
  int crossing_cap = kDefaultCrossingCap;
};

/// All ordered (top, bottom) pairs, top-major in enumeration order.
inline CensusReport full_census(int n, const CensusOptions& opts = {}) {
  if (n < 1) throw std::invalid_argument("census needs at least one pair of endpoints");
  if (n > kMaxExactPairs)
    throw std::invalid_argument("exact census supports at most " + std::to_string(2 * kMaxExactPairs) +
                                " blades; use Monte Carlo mode");
  const auto matchings = enumerate_matchings(n);
  const std::size_t m = matchings.size();
  CensusReport r;
  r.n = n;
  r.total_pairs = m * m;
  r.pairs.resize(m * m);
  detail::parallel_for(m * m, opts.threads, [&](std::size_t i) {
    r.pairs[i] = classify_pair(matchings[i / m], matchings[i % m], opts.crossing_cap);
  });

  Probabilities& p = r.probabilities;
  p = Probabilities{};
  for (const auto& pr : r.pairs) {
    if (pr.connected)
      ++r.connected_pairs;
    else
      ++r.split_pairs;
    p.split += pr.fraction(KnotTag::SplitLink);
    p.ring += pr.fraction(KnotTag::Unknot);
    p.trefoil_left += pr.fraction(KnotTag::TrefoilLeft);
    p.trefoil_right += pr.fraction(KnotTag::TrefoilRight);
    p.figure_eight += pr.fraction(KnotTag::FigureEight);
    p.other += pr.fraction(KnotTag::Other);
  }
  const Rational scale = make_rational(BigInt(1), BigInt(r.total_pairs));
  for (Rational* v : {&p.split, &p.ring, &p.trefoil_left, &p.trefoil_right, &p.figure_eight, &p.other}) *v *= scale;
  p.trefoil = p.trefoil_left + p.trefoil_right;
  r.p_connected = make_rational(BigInt(r.connected_pairs), BigInt(r.total_pairs));
  if (n == 3) r.book_answer = make_rational(8, 15);
  return r;
}

/// Probability that the tied bundle is a single unknotted loop.
inline Rational ring_probability(const CensusReport& r) {
  if (r.probabilities.total() != 1)
    throw InconsistencyError("census probabilities sum to " + to_string(r.probabilities.total()));
  return r.probabilities.ring;
}

// ---------------------------------------------------------------------------
// Six-endpoint tables, rows = top matching, columns = bottom matching.

inline const PairReport& find_pair(const CensusReport& r, Label top, Label bottom) {
  for (const auto& pr : r.pairs)
    if (pr.labels && (*pr.labels)[0] == top && (*pr.labels)[1] == bottom) return pr;
  throw std::invalid_argument("pair not present in census");
}

inline std::string connectivity_table(const CensusReport& r) {
  if (r.n != 3) throw std::invalid_argument("the labelled table exists only for six blades");
  const auto labels = all_labels();
  std::ostringstream out;
  auto pad = [](std::string_view s, std::size_t w) {
    std::string t(s);
    if (t.size() < w) t.insert(0, w - t.size(), ' ');
    return t;
  };
  out << "N = not connected, C = connected (rows: top, columns: bottom)\n";
  out << "    ";
  for (auto c : labels) out << pad(label_name(c), 3);
  out << '\n';
  for (auto row : labels) {
    out << pad(label_name(row), 3) << ' ';
    for (auto col : labels) out << pad(find_pair(r, row, col).connected ? "C" : "N", 3);
    out << '\n';
  }
  out << "\nConnected cells: unknot/trefoil/figure-eight assignment counts (u,k3,k4)\n";
  out << "    ";
  for (auto c : labels) out << pad(label_name(c), 8);
  out << '\n';
  for (auto row : labels) {
    out << pad(label_name(row), 3) << ' ';
    for (auto col : labels) {
      const auto& pr = find_pair(r, row, col);
      std::string cell = "-";
      if (pr.connected) {
        cell = std::to_string(count_of(pr.class_counts, KnotTag::Unknot)) + "," +
               std::to_string(count_of(pr.class_counts, KnotTag::TrefoilLeft) +
                              count_of(pr.class_counts, KnotTag::TrefoilRight)) +
               "," + std::to_string(count_of(pr.class_counts, KnotTag::FigureEight));
      }
      out << pad(cell, 8);
    }
    out << '\n';
  }
  return out.str();
}

/// One row per cell: top,bottom,cell,unknot,trefoil,figure_eight.
inline std::string connectivity_table_csv(const CensusReport& r) {
  if (r.n != 3) throw std::invalid_argument("the labelled table exists only for six blades");
  std::ostringstream out;
  out << "top,bottom,cell,unknot,trefoil,figure_eight\n";
  for (auto row : all_labels())
    for (auto col : all_labels()) {
      const auto& pr = find_pair(r, row, col);
      out << label_name(row) << ',' << label_name(col) << ',' << (pr.connected ? 'C' : 'N') << ','
          << count_of(pr.class_counts, KnotTag::Unknot) << ','
          << count_of(pr.class_counts, KnotTag::TrefoilLeft) + count_of(pr.class_counts, KnotTag::TrefoilRight)
          << ',' << count_of(pr.class_counts, KnotTag::FigureEight) << '\n';
    }
  return out.str();
}

// ---------------------------------------------------------------------------
// Monte Carlo.
//
// Samples are split into blocks of kMcBlock. Block b draws from a
// std::mt19937_64 seeded with splitmix64(seed + b). Each sample draws the
// top index, then the bottom index (unbiased rejection: reject x < 2^64 mod m,
// return x mod m), then one 64-bit word whose low bits are the sign mask.
// Results do not depend on the thread count.

inline constexpr std::uint64_t kMcBlock = 1U << 16;

inline std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <typename Engine>
std::uint64_t uniform_index(Engine& rng, std::uint64_t m) {
  const std::uint64_t threshold = (0 - m) % m;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % m;
  }
}

struct McEstimate {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  ClassCounts hits{};

  [[nodiscard]] double estimate(KnotTag t) const {
    return static_cast<double>(count_of(hits, t)) / static_cast<double>(samples);
  }
  [[nodiscard]] double standard_error(KnotTag t) const {
    const double p = estimate(t);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  }
  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

inline McEstimate monte_carlo(int n, std::uint64_t samples, std::uint64_t seed, int threads = 1) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  if (n < 1) throw std::invalid_argument("need at least one pair of endpoints");
  const auto matchings = enumerate_matchings(n);
  const std::uint64_t m = matchings.size();
  const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<ClassCounts> block_hits(blocks);

  const int workers = std::max(1, threads);
  std::vector<std::unordered_map<std::uint64_t, std::unique_ptr<PairClassifier>>> caches(
      static_cast<std::size_t>(workers));
  std::atomic<std::uint64_t> next{0};
  auto work = [&](std::size_t worker) {
    auto& cache = caches[worker];
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      std::mt19937_64 rng(splitmix64(seed + b));
      const std::uint64_t count = std::min(kMcBlock, samples - b * kMcBlock);
      ClassCounts& hits = block_hits[b];
      for (std::uint64_t s = 0; s < count; ++s) {
        const std::uint64_t top = uniform_index(rng, m);
        const std::uint64_t bottom = uniform_index(rng, m);
        const std::uint64_t bits = rng();
        auto& slot = cache[top * m + bottom];
        if (!slot)
          slot = std::make_unique<PairClassifier>(TiedConfiguration(matchings[top], matchings[bottom]), 24);
        const int c = slot->diagram().total_crossings();
        const std::uint64_t mask = c >= 64 ? bits : bits & ((std::uint64_t{1} << c) - 1);
        ++count_of(hits, slot->classify(mask).tag);
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        try {
          work(static_cast<std::size_t>(t));
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
          next = blocks;
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  McEstimate est;
  est.n = n;
  est.samples = samples;
  est.seed = seed;
  for (const auto& h : block_hits)
    for (std::size_t k = 0; k < h.size(); ++k) est.hits[k] += h[k];
  return est;
}

}  // namespace grassknot
