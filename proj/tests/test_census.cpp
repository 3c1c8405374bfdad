#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "grassknot/census.hpp"
#include "grassknot/serialize.hpp"

using namespace grassknot;

namespace {

const CensusReport& census3() {
  static const CensusReport r = full_census(3);
  return r;
}

Matching m3(const char* text) { return parse_matching(text, 3); }

}  // namespace

TEST(ClassifyPair, SplitPair) {
  const auto r = classify_pair(m3("12,34,56"), m3("12,35,46"));
  EXPECT_FALSE(r.connected);
  EXPECT_EQ(r.component_count, 2);
  EXPECT_EQ(count_of(r.class_counts, KnotTag::SplitLink), r.assignments());
  EXPECT_EQ(r.unknot_fraction, 0);
}

TEST(ClassifyPair, TrefoilPair) {
  const auto r = classify_pair(m3("12,34,56"), m3("14,25,36"));
  EXPECT_TRUE(r.connected);
  EXPECT_EQ(r.total_crossings, 3);
  EXPECT_EQ(count_of(r.class_counts, KnotTag::Unknot), 6U);
  EXPECT_EQ(count_of(r.class_counts, KnotTag::TrefoilLeft), 1U);
  EXPECT_EQ(count_of(r.class_counts, KnotTag::TrefoilRight), 1U);
  EXPECT_EQ(r.unknot_fraction, make_rational(3, 4));
  ASSERT_TRUE(r.labels.has_value());
  EXPECT_EQ((*r.labels)[0], Label::A1);
  EXPECT_EQ((*r.labels)[1], Label::E);
}

TEST(ClassifyPair, FigureEightShadow) {
  // Every four-crossing figure-eight shadow also carries one trefoil of each
  // handedness (all-equal signs close the braid (s1 s2)^2).
  const auto r = classify_pair(m3("13,25,46"), m3("14,26,35"));
  EXPECT_EQ(r.total_crossings, 4);
  EXPECT_EQ(count_of(r.class_counts, KnotTag::FigureEight), 2U);
  EXPECT_EQ(count_of(r.class_counts, KnotTag::TrefoilLeft), 1U);
  EXPECT_EQ(count_of(r.class_counts, KnotTag::TrefoilRight), 1U);
  EXPECT_EQ(count_of(r.class_counts, KnotTag::Unknot), 12U);
}

TEST(ClassifyPair, CrossingCap) {
  EXPECT_THROW((void)classify_pair(m3("14,25,36"), m3("14,25,36"), 5), CrossingCapExceeded);
  EXPECT_NO_THROW((void)classify_pair(m3("14,25,36"), m3("14,25,36"), 6));
}

TEST(FullCensus, Counts) {
  const auto& r = census3();
  EXPECT_EQ(r.total_pairs, 225U);
  EXPECT_EQ(r.connected_pairs, 120U);
  EXPECT_EQ(r.split_pairs, 105U);
  EXPECT_EQ(r.p_connected, make_rational(8, 15));
  ASSERT_TRUE(r.book_answer.has_value());
  EXPECT_EQ(*r.book_answer, make_rational(8, 15));
  EXPECT_EQ(r.model, kProbabilityModel);
}

TEST(FullCensus, PerPairInvariants) {
  for (const auto& p : census3().pairs) {
    std::uint64_t total = 0;
    for (auto c : p.class_counts) total += c;
    EXPECT_EQ(total, p.assignments());
    if (!p.connected) EXPECT_EQ(count_of(p.class_counts, KnotTag::SplitLink), p.assignments());
    EXPECT_EQ(count_of(p.class_counts, KnotTag::TrefoilLeft), count_of(p.class_counts, KnotTag::TrefoilRight));
    EXPECT_EQ(count_of(p.class_counts, KnotTag::Other), 0U);
    if (p.connected) EXPECT_LE(p.total_crossings, 4);
    if (count_of(p.class_counts, KnotTag::TrefoilLeft) > 0) EXPECT_GE(p.total_crossings, 3);
    if (count_of(p.class_counts, KnotTag::FigureEight) > 0) EXPECT_EQ(p.total_crossings, 4);
    EXPECT_EQ(p.unknot_fraction, p.fraction(KnotTag::Unknot));
  }
}

TEST(FullCensus, TransposeSymmetry) {
  const auto& r = census3();
  std::map<std::pair<std::string, std::string>, const PairReport*> index;
  for (const auto& p : r.pairs) index[{p.top.to_string(), p.bottom.to_string()}] = &p;
  for (const auto& p : r.pairs) {
    const PairReport* q = index.at({p.bottom.to_string(), p.top.to_string()});
    EXPECT_EQ(q->class_counts, p.class_counts);
    EXPECT_EQ(q->total_crossings, p.total_crossings);
  }
}

TEST(FullCensus, ExactProbabilities) {
  const auto& r = census3();
  const auto& p = r.probabilities;
  EXPECT_EQ(p.total(), 1);
  EXPECT_EQ(p.split, make_rational(7, 15));
  EXPECT_LT(p.ring, make_rational(8, 15));
  EXPECT_EQ(p.trefoil_left, p.trefoil_right);
  EXPECT_EQ(p.trefoil, p.trefoil_left + p.trefoil_right);
  EXPECT_EQ(p.other, 0);
  EXPECT_EQ(ring_probability(r), p.ring);
  EXPECT_EQ(3600 % denominator_of(p.ring), 0);
  EXPECT_EQ((225 * 64) % denominator_of(p.figure_eight), 0);
}

TEST(FullCensus, RingProbabilityDetectsBadTotals) {
  CensusReport r = census3();
  r.probabilities.ring += make_rational(1, 3600);
  EXPECT_THROW((void)ring_probability(r), InconsistencyError);
}

TEST(FullCensus, TwoBladesAlwaysRing) {
  const auto r = full_census(1);
  EXPECT_EQ(r.total_pairs, 1U);
  EXPECT_EQ(ring_probability(r), 1);
  EXPECT_FALSE(r.book_answer.has_value());
}

TEST(FullCensus, FourBladesHandCount) {
  // Three matchings; a pair is connected iff the matchings differ.
  const auto r = full_census(2);
  EXPECT_EQ(r.total_pairs, 9U);
  EXPECT_EQ(r.connected_pairs, 6U);
  EXPECT_EQ(ring_probability(r), make_rational(2, 3));
}

TEST(FullCensus, RejectsTooManyBlades) {
  EXPECT_THROW((void)full_census(5), std::invalid_argument);
  EXPECT_THROW((void)full_census(0), std::invalid_argument);
}

TEST(FullCensus, ParallelMatchesSerial) {
  EXPECT_EQ(full_census(3, {4, kDefaultCrossingCap}), census3());
  EXPECT_EQ(full_census(3), census3());
}

TEST(FullCensus, EightBlades) {
  const auto r = full_census(4, {2, kDefaultCrossingCap});
  EXPECT_EQ(r.total_pairs, 105U * 105U);
  EXPECT_EQ(r.probabilities.total(), 1);
  for (const auto& p : r.pairs)
    EXPECT_EQ(count_of(p.class_counts, KnotTag::TrefoilLeft), count_of(p.class_counts, KnotTag::TrefoilRight));
}

TEST(Table, Cells) {
  const auto& r = census3();
  EXPECT_FALSE(find_pair(r, Label::A1, Label::C1).connected);
  EXPECT_TRUE(find_pair(r, Label::A1, Label::A2).connected);
  EXPECT_FALSE(find_pair(r, Label::E, Label::E).connected);
  const auto text = connectivity_table(r);
  EXPECT_NE(text.find(" A1   N  C"), std::string::npos) << text;
  const auto csv = connectivity_table_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 226);
  EXPECT_NE(csv.find("A1,C1,N,0,0,0\n"), std::string::npos);
  EXPECT_NE(csv.find("A1,E,C,6,2,0\n"), std::string::npos);
  EXPECT_THROW((void)connectivity_table(full_census(2)), std::invalid_argument);
}

TEST(Serialize, JsonRoundTrip) {
  const auto text = census_json(census3());
  EXPECT_NE(text.find("\"connected_pairs\":120"), std::string::npos);
  EXPECT_EQ(parse_census_json(text), census3());
  const auto r4 = full_census(2);
  EXPECT_EQ(parse_census_json(census_json(r4)), r4);
}

TEST(Serialize, JsonKeyOrder) {
  const auto text = census_json(census3());
  const std::vector<std::string> keys{"\"n\"", "\"total_pairs\"", "\"connected_pairs\"", "\"split_pairs\"",
                                      "\"model\"", "\"probabilities\"", "\"comparison\"", "\"pairs\""};
  std::size_t last = 0;
  for (const auto& k : keys) {
    const auto pos = text.find(k);
    ASSERT_NE(pos, std::string::npos) << k;
    EXPECT_GE(pos, last) << k;
    last = pos;
  }
  EXPECT_NE(text.find("\"ring\":{\"num\":"), std::string::npos);
}

TEST(Serialize, Csv) {
  const auto csv = census_csv(census3());
  EXPECT_EQ(csv.rfind(std::string(kCensusCsvHeader) + "\n", 0), 0U);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 226);
  EXPECT_NE(csv.find("A1,E,\"12,34,56\",\"14,25,36\",true,1,3,0,6,1,1,0,0,3/4\n"), std::string::npos);
}

TEST(Serialize, MatchingListings) {
  const auto csv = matchings_listing(3, ListFormat::Csv);
  EXPECT_EQ(csv.rfind("label,pairs\n", 0), 0U);
  EXPECT_NE(csv.find("A1,\"12,34,56\"\n"), std::string::npos);
  const auto json = Json::parse(matchings_listing(3, ListFormat::Json));
  EXPECT_EQ(json.size(), 15U);
  EXPECT_EQ(json[0]["pairs"], "12,34,56");
  EXPECT_EQ(Json::parse(matchings_listing(4, ListFormat::Json)).size(), 105U);
  EXPECT_NE(matchings_listing(3, ListFormat::Text).find("15 matchings"), std::string::npos);
  EXPECT_THROW((void)parse_list_format("xml"), std::invalid_argument);
}

TEST(MonteCarlo, Deterministic) {
  const auto a = monte_carlo(3, 100000, 42, 1);
  EXPECT_EQ(a, monte_carlo(3, 100000, 42, 1));
  EXPECT_EQ(a, monte_carlo(3, 100000, 42, 3));
  EXPECT_NE(a, monte_carlo(3, 100000, 43, 1));
  std::uint64_t total = 0;
  for (auto h : a.hits) total += h;
  EXPECT_EQ(total, a.samples);
}

TEST(MonteCarlo, OneSample) {
  const auto e = monte_carlo(3, 1, 9);
  for (KnotTag t : kAllTags) {
    const double p = e.estimate(t);
    EXPECT_TRUE(p == 0.0 || p == 1.0);
  }
  EXPECT_THROW((void)monte_carlo(3, 0, 9), std::invalid_argument);
}

TEST(MonteCarlo, AgreesWithExactCensus) {
  const auto e = monte_carlo(3, 400000, 2024, 2);
  const auto& p = census3().probabilities;
  for (auto [tag, exact] : {std::pair{KnotTag::SplitLink, p.split}, std::pair{KnotTag::Unknot, p.ring},
                            std::pair{KnotTag::FigureEight, p.figure_eight}}) {
    const double x = exact.convert_to<double>();
    const double se = std::sqrt(x * (1 - x) / static_cast<double>(e.samples));
    EXPECT_LT(std::abs(e.estimate(tag) - x), 4 * se) << tag_name(tag);
  }
}

TEST(MonteCarlo, UniformIndexIsUnbiasedOnSmallRange) {
  std::mt19937_64 rng(1);
  std::array<int, 15> hist{};
  for (int i = 0; i < 150000; ++i) ++hist[uniform_index(rng, 15)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}
