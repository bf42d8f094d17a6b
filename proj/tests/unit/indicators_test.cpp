#include <cmath>

#include <gtest/gtest.h>

#include "bibliorank/error.hpp"
#include "bibliorank/exact_sum.hpp"
#include "bibliorank/indicators.hpp"
#include "fixtures.hpp"

using namespace bibliorank;
using test::pub;
using test::researcher;

TEST(Weights, UniformReciprocal) {
  EXPECT_EQ(contribution(pub("W", 0, {"R1", "", "", ""}), "R1", FractionalScheme::uniform()), 0.25);
}

TEST(Weights, SingleAuthorGetsEverything) {
  const auto p = pub("W", 0, {"R1"});
  EXPECT_EQ(contribution(p, "R1", FractionalScheme::uniform()), 1.0);
  EXPECT_EQ(contribution(p, "R1", FractionalScheme::position_weighted()), 1.0);
}

TEST(Weights, FiveAuthorsPositional) {
  const auto w = author_weights(5, FractionalScheme::position_weighted());
  // 0.30 + 0.15 + 0.10 + 0.15 + 0.30 by enumeration
  const std::vector<double> expected = {0.30, 0.15, 0.10, 0.15, 0.30};
  ASSERT_EQ(w.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(w[i], expected[i], 1e-15);
  EXPECT_NEAR(exact_sum(w), 1.0, 1e-15);
  EXPECT_EQ(contribution(pub("W", 0, {"R1", "", "", "", ""}), "R1", FractionalScheme::position_weighted()), 0.30);
}

TEST(Weights, ShortListsRenormalize) {
  const auto scheme = FractionalScheme::position_weighted();
  // two authors: first + last
  EXPECT_EQ(author_weights(2, scheme), (std::vector<double>{0.5, 0.5}));
  // three: first 0.30, second 0.15, last 0.30 over 0.75
  const auto three = author_weights(3, scheme);
  EXPECT_DOUBLE_EQ(three[0], 0.4);
  EXPECT_DOUBLE_EQ(three[1], 0.2);
  EXPECT_DOUBLE_EQ(three[2], 0.4);
  const auto four = author_weights(4, scheme);
  EXPECT_DOUBLE_EQ(four[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(four[1], 1.0 / 6.0);
  for (std::size_t n = 1; n <= 30; ++n) EXPECT_NEAR(exact_sum(author_weights(n, scheme)), 1.0, 1e-12) << n;
}

TEST(Weights, InvalidSchemesRejected) {
  EXPECT_THROW(FractionalScheme::position_weighted({0.5, 0.5, 0.1, 0.1}).validate(), Error);
  EXPECT_THROW(FractionalScheme::position_weighted({0.3, 0.3, 0.0, 0.15}).validate(), Error);
  EXPECT_NO_THROW(FractionalScheme::position_weighted({0.4, 0.3, 0.1, 0.1}).validate());
}

TEST(Weights, NonAuthorIsDomainError) {
  try {
    contribution(pub("W", 0, {"R1"}), "R2", FractionalScheme::uniform());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
  }
}

TEST(Indicators, QiIsSsOverP) {
  // Top producer of the reference table: P = 43, SS^PII = 55.47, SS^PIR = 2859.63
  EXPECT_NEAR(std::round(55.47 / 43 * 100) / 100, 1.29, 1e-12);
  EXPECT_NEAR(std::round(2859.63 / 43 * 100) / 100, 66.50, 1e-12);

  const auto s = test::snapshot({pub("W1", 10, {"R1"}), pub("W2", 2, {"R1", "R2"}), pub("W3", 0, {"R2"})},
                                {researcher("R1"), researcher("R2")});
  const auto scores = score_publications(s, build_baselines(s));
  const auto ind = compute_indicators(s, scores, FractionalScheme::uniform());
  for (const auto& [id, v] : ind) {
    ASSERT_TRUE(v.qi_pii && v.qi_pir);
    EXPECT_NEAR(*v.qi_pii, v.ss_pii / static_cast<double>(v.p), 1e-9);
    EXPECT_NEAR(*v.qi_pir, v.ss_pir / static_cast<double>(v.p), 1e-9);
    EXPECT_LE(v.fp, static_cast<double>(v.p));
    EXPECT_LE(v.fss_pii, v.ss_pii);
    EXPECT_LE(v.fss_pir, v.ss_pir);
  }
}

TEST(Indicators, SingleUncitedPaperShape) {
  // Single uncited seven-author paper: P = 1, FP = 1/7, everything else 0
  std::vector<std::string> authors = {"R11", "", "", "", "", "", ""};
  const auto s = test::snapshot({pub("W1", 0, authors), pub("W2", 5, {""})}, {researcher("R11")});
  const auto ind = compute_indicators(s, score_publications(s, build_baselines(s)), FractionalScheme::uniform());
  const auto& v = ind.at("R11");
  EXPECT_EQ(v.p, 1);
  EXPECT_NEAR(v.fp, 0.14, 0.005);
  EXPECT_EQ(v.ss_pii, 0.0);
  EXPECT_EQ(v.fss_pii, 0.0);
  EXPECT_EQ(v.ss_pir, 0.0);
  EXPECT_EQ(v.fss_pir, 0.0);
  EXPECT_EQ(v.qi_pii, 0.0);
  EXPECT_EQ(v.qi_pir, 0.0);
}

TEST(Indicators, NoPublicationsLeavesQiUndefined) {
  const auto s = test::snapshot({pub("W1", 3, {"R1"})}, {researcher("R1"), researcher("R2")});
  const auto ind = compute_indicators(s, score_publications(s, build_baselines(s)), FractionalScheme::uniform());
  const auto& v = ind.at("R2");
  EXPECT_EQ(v.p, 0);
  EXPECT_EQ(v.fp, 0.0);
  EXPECT_EQ(v.ss_pii, 0.0);
  EXPECT_FALSE(v.qi_pii.has_value());
  EXPECT_FALSE(v.qi_pir.has_value());
}

TEST(Indicators, MissingScoreIsInternalError) {
  const auto s = test::snapshot({pub("W1", 3, {"R1"})}, {researcher("R1")});
  try {
    compute_indicators(s, {}, FractionalScheme::uniform());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::internal_consistency);
  }
}

TEST(Indicators, FilterRestrictsPublications) {
  const auto s = test::snapshot({pub("W1", 3, {"R1"}), pub("W2", 8, {"R1"})}, {researcher("R1")});
  const auto scores = score_publications(s, build_baselines(s));
  const auto only_w2 = compute_indicators(s, scores, FractionalScheme::uniform(),
                                          [](const Publication& p) { return p.pub_id == "W2"; });
  EXPECT_EQ(only_w2.at("R1").p, 1);
  EXPECT_EQ(only_w2.at("R1").ss_pii, scores.at("W2").pii);
}

TEST(Indicators, ParseAndDisplayNames) {
  for (Indicator i : kAllIndicators) EXPECT_EQ(parse_indicator(to_string(i)), i);
  EXPECT_EQ(display_name(Indicator::fss_pir), "FSS^PIR");
  EXPECT_FALSE(parse_indicator("h_index").has_value());
}
