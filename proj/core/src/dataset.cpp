#include "cbfl/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "cbfl/text.hpp"

namespace cbfl {

Dataset generate_gaussian_classes(const SynthSpec& spec, std::size_t count,
                                  RandomStream& rng, std::uint32_t owner) {
  if (spec.dim == 0) throw Error("synthetic dimension must be >= 1");
  if (spec.margin > spec.separation / 2.0 + 5.0) {
    throw Error("synthetic margin is unreachable for this separation");
  }
  Dataset d;
  d.owner = owner;
  d.samples.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Sample s;
    s.y = (k % 2 == 0) ? 1 : -1;
    s.x.resize(spec.dim);
    double projection = 0.0;
    do {
      projection = spec.separation / 2.0 + rng.normal();
    } while (projection < spec.margin);
    s.x[0] = s.y * projection;
    for (std::size_t i = 1; i < spec.dim; ++i) s.x[i] = rng.normal();
    d.samples.push_back(std::move(s));
  }
  return d;
}

void write_samples(std::ostream& out, const Dataset& d) {
  std::string line;
  for (const auto& s : d.samples) {
    line = s.y > 0 ? "1" : "-1";
    for (double v : s.x) {
      line += ' ';
      line += text::shortest(v);
    }
    line += '\n';
    out << line;
  }
}

Dataset read_samples(std::istream& in, std::uint32_t owner) {
  Dataset d;
  d.owner = owner;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tok = text::split_ws(trimmed);
    if (tok.size() < 2) throw ParseError(line_no, "sample needs a label and features");
    Sample s;
    const auto y = text::parse_int(tok[0]);
    if (!y || (*y != 1 && *y != -1)) throw ParseError(line_no, "label must be -1 or 1");
    s.y = static_cast<int>(*y);
    s.x.reserve(tok.size() - 1);
    for (std::size_t i = 1; i < tok.size(); ++i) {
      const auto v = text::parse_double(tok[i]);
      if (!v || !std::isfinite(*v)) {
        throw ParseError(line_no, "bad feature '" + std::string(tok[i]) + "'");
      }
      s.x.push_back(*v);
    }
    if (!d.samples.empty() && s.x.size() != d.dim()) {
      throw ParseError(line_no, "feature count differs from earlier samples");
    }
    d.samples.push_back(std::move(s));
  }
  if (d.empty()) throw Error("samples file holds no samples");
  return d;
}

Dataset load_samples(const std::filesystem::path& path, std::uint32_t owner) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open samples file '" + path.string() + "'");
  return read_samples(in, owner);
}

void save_samples(const std::filesystem::path& path, const Dataset& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write samples file '" + path.string() + "'");
  write_samples(out, d);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace cbfl
