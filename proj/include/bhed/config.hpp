#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "bhed/experiment.hpp"

namespace bhed {

/// Sets one key of a SweepSpec from text. Keys use underscores or dashes
/// ("omega_max" == "omega-max"). Throws ConfigError for unknown keys or
/// unparsable values; does not validate cross-field constraints.
void apply_setting(SweepSpec& spec, const std::string& key, const std::string& value);

/// Parses flat "key = value" lines ('#' starts a comment) over `base`.
/// Errors carry the line number. The result is not validated.
SweepSpec parse_config(std::istream& in, SweepSpec base = {});

/// Reads and validates a config file.
SweepSpec load_config(const std::filesystem::path& path);

}  // namespace bhed
