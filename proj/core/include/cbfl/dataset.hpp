#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "cbfl/fl_core.hpp"
#include "cbfl/random.hpp"

namespace cbfl {

// Two Gaussian classes in `dim` dimensions. The class signal lies along the
// first coordinate: y * x_1 = separation/2 + N(0,1), redrawn until it is at
// least `margin`, so the classes are linearly separable with that margin
// whenever margin > 0. The remaining coordinates are N(0,1) noise.
struct SynthSpec {
  std::size_t dim = 400;
  double separation = 3.0;
  double margin = 0.5;
};

// Exactly balanced: labels alternate +1, -1, +1, ...
Dataset generate_gaussian_classes(const SynthSpec& spec, std::size_t count,
                                  RandomStream& rng, std::uint32_t owner = 0);

// Plain-text samples, one per line: "y x_1 x_2 ... x_n". Blank lines and
// lines starting with '#' are skipped.
void write_samples(std::ostream& out, const Dataset& d);
Dataset read_samples(std::istream& in, std::uint32_t owner = 0);
Dataset load_samples(const std::filesystem::path& path, std::uint32_t owner = 0);
void save_samples(const std::filesystem::path& path, const Dataset& d);

}  // namespace cbfl
