#include <sstream>

#include <gtest/gtest.h>

#include "bibliorank/config.hpp"
#include "bibliorank/error.hpp"
#include "fixtures.hpp"
#include "overrides.hpp"

using namespace bibliorank;

TEST(RunConfig, Defaults) {
  const RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.window.start, 2004);
  EXPECT_EQ(c.window.end, 2006);
  EXPECT_EQ(c.census_date.iso(), "2008-03-31");
  EXPECT_FALSE(c.has_composite());
}

TEST(RunConfig, ParsesFixture) {
  const auto c = load_run_config(test::data_path("run.ini"));
  EXPECT_EQ(c.scheme.mode, FractionalScheme::Mode::position_weighted);
  EXPECT_EQ(c.ranking_mode, RankingMode::by_sds);
  EXPECT_EQ(c.report_weights[0], 1.0);
  EXPECT_TRUE(c.has_composite());
  EXPECT_EQ(c.top_publications, 0.05);
}

TEST(RunConfig, CanonicalTextRoundTrips) {
  const auto c = load_run_config(test::data_path("run.ini"));
  std::istringstream again(c.canonical_text());
  EXPECT_EQ(parse_run_config(again).canonical_text(), c.canonical_text());
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  std::istringstream unknown("[ranking]\nmode = by_sds\nstyle = fancy\n");
  EXPECT_THROW(parse_run_config(unknown), Error);
  std::istringstream section("[extras]\nx = 1\n");
  EXPECT_THROW(parse_run_config(section), Error);
  std::istringstream bad("[window]\nstart = soon\n");
  EXPECT_THROW(parse_run_config(bad), Error);
}

TEST(RunConfig, ValidationRules) {
  RunConfig c;
  c.window = {2007, 2004};
  EXPECT_THROW(c.validate(), Error);
  c = RunConfig{};
  c.report_weights[2] = -1;
  EXPECT_THROW(c.validate(), Error);
  c = RunConfig{};
  c.top_performers = 1.0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Overrides, FlagsBeatFile) {
  cli::ConfigOverrides o;
  o.config_file = test::data_path("run.ini");
  o.ranking_mode = "by_sds_and_rank";
  o.report_weights = {"qi_pir=2.5"};
  o.window_end = 2007;
  const auto c = cli::resolve_config(o);
  EXPECT_EQ(c.ranking_mode, RankingMode::by_sds_and_rank);
  EXPECT_EQ(c.report_weights[static_cast<std::size_t>(Indicator::qi_pir)], 2.5);
  EXPECT_EQ(c.report_weights[0], 1.0);
  EXPECT_EQ(c.window.end, 2007);
  EXPECT_EQ(c.scheme.mode, FractionalScheme::Mode::position_weighted);
}

TEST(Overrides, BadValuesRejected) {
  cli::ConfigOverrides o;
  o.report_weights = {"impact=1"};
  EXPECT_THROW(cli::resolve_config(o), Error);
  o.report_weights = {"p=lots"};
  EXPECT_THROW(cli::resolve_config(o), Error);
  cli::ConfigOverrides mode;
  mode.fractional_mode = "harmonic";
  EXPECT_THROW(cli::resolve_config(mode), Error);
}
