#include <gtest/gtest.h>

#include <random>

#include "grassknot/invariants.hpp"
#include "oracles.hpp"

using namespace grassknot;

namespace {

JonesPolynomial t(int e, long c = 1) { return JonesPolynomial::monomial(e, BigInt(c)); }
BracketPolynomial A(int e, long c = 1) { return BracketPolynomial::monomial(e, BigInt(c)); }

std::map<int, long long> as_map(const JonesPolynomial& p) {
  std::map<int, long long> m;
  for (const auto& [e, c] : p.terms()) m[e] = c.convert_to<long long>();
  return m;
}

std::map<int, long long> as_map(const BracketPolynomial& p) {
  std::map<int, long long> m;
  for (const auto& [e, c] : p.terms()) m[e] = c.convert_to<long long>();
  return m;
}

PlanarCode code_of(std::initializer_list<std::pair<std::array<int, 4>, bool>> xs) {
  PlanarCode code;
  for (const auto& [ends, positive] : xs) code.crossings.push_back({ends, positive});
  return code;
}

template <typename F>
void for_each_signed_knot(int n, F f) {
  const auto all = enumerate_matchings(n);
  for (const auto& a : all)
    for (const auto& b : all) {
      auto d = std::make_shared<const LinkDiagram>(build_diagram(TiedConfiguration(a, b)));
      if (d->component_count() != 1) continue;
      const int c = d->total_crossings();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask)
        f(SignedDiagram(d, SignAssignment::from_mask(c, mask)));
    }
}

}  // namespace

TEST(Reference, TabulatedJonesValues) {
  EXPECT_EQ(reference_knot(ReferenceKnot::Unknot), t(0));
  EXPECT_EQ(reference_knot(ReferenceKnot::TrefoilRight), t(1) + t(3) - t(4));
  EXPECT_EQ(reference_knot(ReferenceKnot::TrefoilLeft), t(-1) + t(-3) - t(-4));
  EXPECT_EQ(reference_knot(ReferenceKnot::FigureEight), t(2) - t(1) + t(0) - t(-1) + t(-2));
  EXPECT_EQ(reference_knot("figure_eight"), reference_knot(ReferenceKnot::FigureEight));
  EXPECT_THROW((void)reference_knot("granny"), std::invalid_argument);
}

TEST(Reference, MirrorRule) {
  EXPECT_EQ(reference_knot(ReferenceKnot::TrefoilLeft).inverted(), reference_knot(ReferenceKnot::TrefoilRight));
  EXPECT_EQ(reference_knot(ReferenceKnot::FigureEight).inverted(), reference_knot(ReferenceKnot::FigureEight));
  EXPECT_EQ(jones(reflect(reference_diagram(ReferenceKnot::FigureEight))), reference_knot(ReferenceKnot::FigureEight));
}

TEST(Reference, Determinants) {
  EXPECT_EQ(determinant(reference_knot(ReferenceKnot::Unknot)), 1);
  EXPECT_EQ(determinant(reference_knot(ReferenceKnot::TrefoilLeft)), 3);
  EXPECT_EQ(determinant(reference_knot(ReferenceKnot::TrefoilRight)), 3);
  EXPECT_EQ(determinant(reference_knot(ReferenceKnot::FigureEight)), 5);
}

TEST(Reference, AgreesWithSkeinOracle) {
  for (auto k : {ReferenceKnot::TrefoilLeft, ReferenceKnot::TrefoilRight, ReferenceKnot::FigureEight})
    EXPECT_EQ(as_map(reference_knot(k)), oracle::jones(reference_diagram(k)));
}

TEST(Bracket, Kinks) {
  const auto positive = code_of({{{1, 1, 2, 2}, true}});
  const auto negative = code_of({{{1, 2, 2, 1}, false}});
  EXPECT_EQ(kauffman_bracket(positive), A(3, -1));
  EXPECT_EQ(kauffman_bracket(negative), A(-3, -1));
  EXPECT_EQ(positive.writhe(), 1);
  EXPECT_EQ(jones(positive), t(0));
  EXPECT_EQ(jones(negative), t(0));
}

TEST(Bracket, FreeLoops) {
  const auto delta = A(2, -1) + A(-2, -1);
  PlanarCode three;
  three.free_loops = 3;
  EXPECT_EQ(kauffman_bracket(three), delta * delta);
  auto code = reference_diagram(ReferenceKnot::TrefoilRight);
  const auto base = kauffman_bracket(code);
  code.free_loops += 1;
  EXPECT_EQ(kauffman_bracket(code), base * delta);
}

TEST(Bracket, NonMultipleOfFourIsAnInconsistency) {
  EXPECT_THROW((void)jones_from_bracket(A(1), 0), InconsistencyError);
}

TEST(Bracket, CrossingOrderAndEdgeLabelsDoNotMatter) {
  std::mt19937 rng(3);
  for (auto k : {ReferenceKnot::TrefoilLeft, ReferenceKnot::FigureEight}) {
    auto code = reference_diagram(k);
    const auto expected = jones(code);
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(code.crossings.begin(), code.crossings.end(), rng);
      EXPECT_EQ(jones(code), expected);
      auto shifted = code;
      for (auto& c : shifted.crossings)
        for (int& e : c.ends) e += 100;
      EXPECT_EQ(jones(shifted), expected);
    }
  }
}

TEST(Census, EngineAgreesWithGenericStateSumAndSkeinOracle) {
  int checked = 0;
  for_each_signed_knot(3, [&](const SignedDiagram& sd) {
    const auto code = sd.planar_code();
    const auto fast = kauffman_bracket(sd.diagram(), sd.signs());
    EXPECT_EQ(fast, kauffman_bracket(code));
    EXPECT_EQ(as_map(fast), oracle::bracket(code));
    EXPECT_EQ(as_map(jones(sd)), oracle::jones(code));
    ++checked;
  });
  EXPECT_GT(checked, 120);
}

TEST(Census, DeterminantAgreesWithColoringMatrix) {
  for_each_signed_knot(3, [](const SignedDiagram& sd) {
    EXPECT_EQ(determinant(sd), oracle::coloring_determinant(sd)) << sd.diagram().config().top.to_string() << " "
                                                                  << sd.diagram().config().bottom.to_string() << " "
                                                                  << sd.signs().to_string();
  });
}

TEST(Census, LargerDiagramsAgreeWithOracles) {
  const auto all = enumerate_matchings(4);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const auto& a = all[rng() % all.size()];
    const auto& b = all[rng() % all.size()];
    auto d = std::make_shared<const LinkDiagram>(build_diagram(TiedConfiguration(a, b)));
    if (d->component_count() != 1) continue;
    const int c = d->total_crossings();
    const SignedDiagram sd(d, SignAssignment::from_mask(c, rng() & ((std::uint64_t{1} << c) - 1)));
    EXPECT_EQ(as_map(jones(sd)), oracle::jones(sd.planar_code()));
    EXPECT_EQ(determinant(sd), oracle::coloring_determinant(sd));
  }
}

TEST(Classify, TagsAndNames) {
  for (KnotTag tag : kAllTags) EXPECT_EQ(parse_tag(tag_name(tag)), tag);
  EXPECT_FALSE(parse_tag("granny").has_value());
  EXPECT_EQ(classify_knot(t(0)).tag, KnotTag::Unknot);
  EXPECT_EQ(classify_knot(t(1) + t(3) - t(4)).tag, KnotTag::TrefoilRight);
  EXPECT_EQ(classify_knot(t(2) - t(1) + t(0) - t(-1) + t(-2)).tag, KnotTag::FigureEight);
  EXPECT_EQ(classify_knot(t(2) + t(4) - t(5) + t(6) - t(7)).tag, KnotTag::Other);
}

TEST(Classify, SplitDiagramsAreNotKnotClassified) {
  auto d = std::make_shared<const LinkDiagram>(
      build_diagram(TiedConfiguration(parse_matching("12,34,56", 3), parse_matching("12,35,46", 3))));
  for (const char* bits : {"0", "1"}) {
    const auto k = classify(SignedDiagram(d, SignAssignment::parse(bits)));
    EXPECT_EQ(k.tag, KnotTag::SplitLink);
    EXPECT_EQ(k.components, 2);
    EXPECT_FALSE(k.jones.has_value());
  }
}

TEST(Classify, TrefoilPair) {
  auto d = std::make_shared<const LinkDiagram>(
      build_diagram(TiedConfiguration(parse_matching("12,34,56", 3), parse_matching("14,25,36", 3))));
  EXPECT_EQ(classify(SignedDiagram(d, SignAssignment::parse("010"))).tag, KnotTag::TrefoilLeft);
  EXPECT_EQ(classify(SignedDiagram(d, SignAssignment::parse("101"))).tag, KnotTag::TrefoilRight);
  for (const char* bits : {"000", "001", "011", "100", "110", "111"})
    EXPECT_EQ(classify(SignedDiagram(d, SignAssignment::parse(bits))).tag, KnotTag::Unknot) << bits;
}

TEST(Classify, MirrorSwapsChirality) {
  for_each_signed_knot(3, [](const SignedDiagram& sd) {
    const auto tag = classify(sd).tag;
    const auto mirrored = classify(mirror_signed(sd)).tag;
    const KnotTag expected = tag == KnotTag::TrefoilLeft    ? KnotTag::TrefoilRight
                             : tag == KnotTag::TrefoilRight ? KnotTag::TrefoilLeft
                                                            : tag;
    EXPECT_EQ(mirrored, expected);
  });
}

TEST(Classify, HalfTurnRotationPreservesKnotType) {
  for_each_signed_knot(3, [](const SignedDiagram& sd) {
    const auto [config, bits] = rotate_half_turn(sd.diagram(), sd.signs());
    const SignedDiagram rotated(std::make_shared<const LinkDiagram>(build_diagram(config)), bits);
    EXPECT_EQ(classify(rotated).tag, classify(sd).tag);
    EXPECT_EQ(*rotated.writhe(), *sd.writhe());
  });
}
