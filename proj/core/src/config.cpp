#include "cbfl/config.hpp"

#include <array>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <variant>

#include "cbfl/text.hpp"

namespace cbfl {

namespace {

using Field = std::variant<double SystemParams::*, int SystemParams::*>;

struct KeySpec {
  std::string_view name;
  Field field;
};

constexpr std::array<KeySpec, 18> kKeys = {{
    {"lambda", &SystemParams::lambda},
    {"mu", &SystemParams::mu},
    {"n_peers", &SystemParams::n_peers},
    {"f", &SystemParams::f},
    {"n_block", &SystemParams::n_block},
    {"tau", &SystemParams::tau},
    {"delta_m", &SystemParams::delta_m},
    {"delta_d", &SystemParams::delta_d},
    {"h", &SystemParams::h},
    {"f_c", &SystemParams::f_c},
    {"w_up", &SystemParams::w_up},
    {"w_dn", &SystemParams::w_dn},
    {"gamma_up", &SystemParams::gamma_up},
    {"gamma_dn", &SystemParams::gamma_dn},
    {"beta", &SystemParams::beta},
    {"epsilon", &SystemParams::epsilon},
    {"e0", &SystemParams::e0},
    {"t_max", &SystemParams::t_max},
}};

constexpr std::array<std::string_view, kKeys.size()> kKeyNames = [] {
  std::array<std::string_view, kKeys.size()> names{};
  for (std::size_t i = 0; i < kKeys.size(); ++i) names[i] = kKeys[i].name;
  return names;
}();

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

// Returns an error message, empty on success.
std::string assign(SystemParams& p, const KeySpec& key, std::string_view value) {
  if (auto* d = std::get_if<double SystemParams::*>(&key.field)) {
    auto v = text::parse_double(value);
    if (!v) return "invalid value for " + std::string(key.name) + ": '" +
                    std::string(value) + "'";
    p.*(*d) = *v;
  } else {
    auto* i = std::get_if<int SystemParams::*>(&key.field);
    auto v = text::parse_int(value);
    if (!v || *v < std::numeric_limits<int>::min() ||
        *v > std::numeric_limits<int>::max()) {
      return "invalid integer for " + std::string(key.name) + ": '" +
             std::string(value) + "'";
    }
    p.*(*i) = static_cast<int>(*v);
  }
  return {};
}

}  // namespace

std::span<const std::string_view> param_keys() { return kKeyNames; }

void set_param(SystemParams& p, std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ValidationError(std::string(key), "unknown key '" + std::string(key) + "'");
  if (auto msg = assign(p, *spec, value); !msg.empty()) throw ValidationError(std::string(key), msg);
}

SystemParams parse_params(std::string_view text) {
  SystemParams p;
  std::set<std::string_view> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected key=value");
    }
    const auto key = text::trim(line.substr(0, eq));
    const auto value = text::trim(line.substr(eq + 1));
    const KeySpec* spec = find_key(key);
    if (spec == nullptr) {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(spec->name).second) {
      throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    if (auto msg = assign(p, *spec, value); !msg.empty()) {
      throw ParseError(line_no, msg);
    }
  }
  return validate_params(p);
}

SystemParams parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("cannot read config '" + path.string() + "'");
  return parse_params(buf.str());
}

std::string format_params(const SystemParams& p) {
  std::string out;
  for (const auto& k : kKeys) {
    out += k.name;
    out += '=';
    if (auto* d = std::get_if<double SystemParams::*>(&k.field)) {
      out += text::shortest(p.*(*d));
    } else {
      out += std::to_string(p.*std::get<int SystemParams::*>(k.field));
    }
    out += '\n';
  }
  return out;
}

}  // namespace cbfl
