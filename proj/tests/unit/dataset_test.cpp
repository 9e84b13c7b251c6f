#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cbfl/dataset.hpp"

namespace cbfl {
namespace {

TEST(Synthetic, BalancedSeparableWithMargin) {
  RandomStream r(51);
  const SynthSpec spec{10, 3.0, 0.5};
  const auto d = generate_gaussian_classes(spec, 1001, r, 7);
  ASSERT_EQ(d.size(), 1001u);
  EXPECT_EQ(d.dim(), 10u);
  EXPECT_EQ(d.owner, 7u);
  int pos = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& s = d.samples[i];
    EXPECT_EQ(s.y, i % 2 == 0 ? 1 : -1);
    EXPECT_GE(s.y * s.x[0], spec.margin);
    pos += s.y == 1;
  }
  EXPECT_EQ(pos, 501);
  // The separating direction -e_1 classifies everything correctly.
  Vector w(10, 0.0);
  w[0] = -1.0;
  EXPECT_EQ(accuracy(w, d), 1.0);
}

TEST(Synthetic, Deterministic) {
  RandomStream a(52), b(52);
  EXPECT_EQ(generate_gaussian_classes({}, 20, a).samples, generate_gaussian_classes({}, 20, b).samples);
}

TEST(SamplesFile, RoundTrip) {
  RandomStream r(53);
  const auto d = generate_gaussian_classes(SynthSpec{4, 3.0, 0.5}, 30, r);
  std::stringstream ss;
  write_samples(ss, d);
  const auto back = read_samples(ss);
  EXPECT_EQ(back.samples, d.samples);

  const auto path = std::filesystem::temp_directory_path() / "cbfl_samples_test.txt";
  save_samples(path, d);
  EXPECT_EQ(load_samples(path).samples, d.samples);
  std::filesystem::remove(path);
}

TEST(SamplesFile, SkipsCommentsAndRejectsBadLines) {
  std::stringstream ok("# comment\n\n1 0.5 2\n-1 1 1\n");
  EXPECT_EQ(read_samples(ok).size(), 2u);
  std::stringstream bad_label("2 0.5 2\n");
  EXPECT_THROW(read_samples(bad_label), ParseError);
  std::stringstream ragged("1 0.5 2\n-1 1\n");
  EXPECT_THROW(read_samples(ragged), ParseError);
  std::stringstream bad_value("1 x 2\n");
  EXPECT_THROW(read_samples(bad_value), ParseError);
  std::stringstream empty("# nothing\n");
  EXPECT_THROW(read_samples(empty), Error);
}

}  // namespace
}  // namespace cbfl
