#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "cbfl/domain.hpp"

namespace cbfl {

// Flat key=value configuration: one key per line, keys named exactly like the
// SystemParams fields, '#' starts a comment line, blank lines ignored.
// Missing keys keep their SystemParams defaults; unknown and duplicate keys are
// errors. The result is validated.
SystemParams parse_params(std::string_view text);
SystemParams parse_config(const std::filesystem::path& path);

// Writes every key in declaration order; parse_params(format_params(p)) == p.
std::string format_params(const SystemParams& p);

std::span<const std::string_view> param_keys();

// Sets one field from its textual value without validating the whole record.
// Throws Error for an unknown key or an unparsable value.
void set_param(SystemParams& p, std::string_view key, std::string_view value);

}  // namespace cbfl
