#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "cbfl/config.hpp"

namespace cbfl {
namespace {

TEST(ParseParams, EmptyTextGivesDefaults) { EXPECT_EQ(parse_params(""), SystemParams{}); }

TEST(ParseParams, ReadsKeysCommentsAndBlanks) {
  const auto p = parse_params("# header\n\nlambda = 150\n  mu=400 \nf=2\nn_peers=7\ntau=inf\n");
  EXPECT_EQ(p.lambda, 150.0);
  EXPECT_EQ(p.mu, 400.0);
  EXPECT_EQ(p.f, 2);
  EXPECT_EQ(p.n_peers, 7);
  EXPECT_TRUE(std::isinf(p.tau));
}

TEST(ParseParams, DuplicateKeyNamesLine) {
  try {
    parse_params("lambda=100\nmu=300\nlambda=120\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("duplicate key 'lambda'"), std::string::npos);
  }
}

TEST(ParseParams, BadValueNamesLine) {
  try {
    parse_params("mu=300\nlambda=abc\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("lambda"), std::string::npos);
  }
}

TEST(ParseParams, UnknownKeyAndMissingEquals) {
  EXPECT_THROW(parse_params("gamma=1\n"), ParseError);
  EXPECT_THROW(parse_params("lambda 100\n"), ParseError);
  EXPECT_THROW(parse_params("f=1.5\n"), ParseError);
}

TEST(ParseParams, ValidatesTheResult) {
  try {
    parse_params("lambda=300\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "lambda must be < mu");
  }
  EXPECT_THROW(parse_params("f=2\n"), ValidationError);
}

TEST(FormatParams, RoundTrips) {
  SystemParams p;
  p.lambda = 123.456789012345;
  p.epsilon = 1e-7;
  p.tau = INFINITY;
  p.f = 3;
  p.n_peers = 10;
  EXPECT_EQ(parse_params(format_params(p)), p);
}

TEST(FormatParams, ListsEveryKey) {
  const auto text = format_params(SystemParams{});
  for (auto key : param_keys()) {
    EXPECT_NE(text.find(std::string(key) + "="), std::string::npos) << key;
  }
  EXPECT_EQ(param_keys().size(), 18u);
}

TEST(SetParam, SetsAndRejects) {
  SystemParams p;
  set_param(p, "lambda", "42");
  EXPECT_EQ(p.lambda, 42.0);
  EXPECT_THROW(set_param(p, "nope", "1"), ValidationError);
  EXPECT_THROW(set_param(p, "f", "x"), ValidationError);
}

TEST(ParseConfig, ReadsFileAndReportsMissing) {
  const auto path = std::filesystem::temp_directory_path() / "cbfl_config_test.cfg";
  {
    std::ofstream out(path);
    out << "lambda=200\n";
  }
  EXPECT_EQ(parse_config(path).lambda, 200.0);
  std::filesystem::remove(path);
  EXPECT_THROW(parse_config(path), Error);
}

}  // namespace
}  // namespace cbfl
