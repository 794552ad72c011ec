#include <gtest/gtest.h>

#include <sstream>

#include "run_config.hpp"

using namespace envoff::cli;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

TEST(RunConfig, Defaults) {
  const RunConfig cfg = parse("");
  EXPECT_EQ(cfg.curve, "kiss");
  EXPECT_EQ(cfg.samples, 2048);
  EXPECT_EQ(cfg.side, "both");
  EXPECT_FALSE(cfg.tol.has_value());
}

TEST(RunConfig, FullFile) {
  const RunConfig cfg = parse(
      "[curve]\nname = ellipse\nparams = 5 4\n"
      "[run]\noperation = cusps\nd = 1/3, 0.5 1\nsamples = 512\nside = external\nmethod = derivative\n"
      "format = json\n"
      "[solver]\ntol = 1e-10\nseeds = 4096\nmin_crossing_sine = 0.01\n");
  EXPECT_EQ(cfg.curve, "ellipse");
  EXPECT_EQ(cfg.curve_params, (std::vector<double>{5, 4}));
  EXPECT_EQ(cfg.operation, "cusps");
  ASSERT_EQ(cfg.distances.size(), 3u);
  EXPECT_DOUBLE_EQ(cfg.distances[0], 1.0 / 3);
  EXPECT_EQ(cfg.samples, 512);
  EXPECT_EQ(cfg.side, "external");
  EXPECT_EQ(*cfg.tol, 1e-10);
  EXPECT_EQ(*cfg.seeds, 4096);
  EXPECT_EQ(*cfg.min_crossing_sine, 0.01);
  EXPECT_NO_THROW(validate(cfg));
}

TEST(RunConfig, UnknownKeysRejected) {
  EXPECT_THROW(parse("[curve]\nradius = 2\n"), ConfigError);
  EXPECT_THROW(parse("[plot]\nwidth = 2\n"), ConfigError);
  EXPECT_THROW(parse("stray = 1\n"), ConfigError);
}

TEST(RunConfig, BadNumbers) {
  EXPECT_THROW(parse("[run]\nd = one\n"), ConfigError);
  EXPECT_THROW(parse("[run]\nd = 1/0\n"), ConfigError);
  EXPECT_THROW(parse("[run]\nsamples = 12.5\n"), ConfigError);
  EXPECT_THROW(parse_number("1.5x"), ConfigError);
  EXPECT_THROW(parse_number(""), ConfigError);
}

TEST(RunConfig, NumberParsing) {
  EXPECT_DOUBLE_EQ(parse_number("2/3"), 2.0 / 3);
  EXPECT_DOUBLE_EQ(parse_number("-1e-3"), -1e-3);
  EXPECT_EQ(parse_number_list(" 0.5,1 ,, 5\t10 "), (std::vector<double>{0.5, 1, 5, 10}));
  EXPECT_TRUE(parse_number_list("").empty());
}

TEST(RunConfig, Validation) {
  RunConfig cfg;
  cfg.operation = "offset";
  EXPECT_THROW(validate(cfg), ConfigError);  // no distance
  cfg.distances = {0.5, -1.0};
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg.distances = {0.5};
  EXPECT_NO_THROW(validate(cfg));
  cfg.side = "left";
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg.side = "both";
  cfg.samples = 4;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg.samples = 64;
  cfg.tol = 0.0;
  EXPECT_THROW(validate(cfg), ConfigError);

  RunConfig env;
  env.operation = "envelope";
  EXPECT_THROW(validate(env), ConfigError);  // constant family needs R
  env.family = "nephroid";
  EXPECT_NO_THROW(validate(env));
  env.operation = "plot";
  EXPECT_THROW(validate(env), ConfigError);

  RunConfig verify;
  verify.operation = "verify";
  EXPECT_NO_THROW(validate(verify));
}

TEST(RunConfig, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/envoff.ini"), ConfigError);
}
