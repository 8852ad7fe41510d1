#include "bhed/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "bhed/errors.hpp"

namespace bhed {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw ConfigError("key '" + key + "': expected " + expected + ", got '" + value + "'");
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(x)) {
    bad_value(key, v, "a finite number");
  }
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v, "a non-negative integer");
  return x;
}

using Setter = std::function<void(SweepSpec&, const std::string& key, const std::string& value)>;

template <typename Field>
Setter real(Field field) {
  return [field](SweepSpec& s, const std::string& k, const std::string& v) {
    s.*field = to_double(k, v);
  };
}

template <typename Field>
Setter count(Field field) {
  return [field](SweepSpec& s, const std::string& k, const std::string& v) {
    s.*field = static_cast<std::size_t>(to_unsigned(k, v));
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"experiment",
       [](SweepSpec& s, const std::string& k, const std::string& v) {
         auto e = parse_experiment(v);
         if (!e) bad_value(k, v, "one of occupation|parity|entropy|gap|excited|ramp|thresholds");
         s.experiment = *e;
       }},
      {"sites", count(&SweepSpec::sites)},
      {"atoms", count(&SweepSpec::atoms)},
      {"hopping", real(&SweepSpec::hopping)},
      {"hopping_e", real(&SweepSpec::hopping_e)},
      {"hopping_g", real(&SweepSpec::hopping_g)},
      {"interaction", real(&SweepSpec::interaction)},
      {"interaction_e", real(&SweepSpec::interaction_e)},
      {"interaction_g", real(&SweepSpec::interaction_g)},
      {"interaction_eg", real(&SweepSpec::interaction_eg)},
      {"detuning", real(&SweepSpec::detuning)},
      {"trap", real(&SweepSpec::trap)},
      {"boundary",
       [](SweepSpec& s, const std::string& k, const std::string& v) {
         if (v == "open") s.boundary = Boundary::open;
         else if (v == "periodic") s.boundary = Boundary::periodic;
         else bad_value(k, v, "open or periodic");
       }},
      {"omega_min", real(&SweepSpec::omega_min)},
      {"omega_max", real(&SweepSpec::omega_max)},
      {"omega_step", real(&SweepSpec::omega_step)},
      {"cut", count(&SweepSpec::cut)},
      {"distance", count(&SweepSpec::distance)},
      {"states", count(&SweepSpec::states)},
      {"ramp_rate", real(&SweepSpec::ramp_rate)},
      {"t_final", real(&SweepSpec::t_final)},
      {"dt_max", real(&SweepSpec::dt_max)},
      {"sample_interval", real(&SweepSpec::sample_interval)},
      {"tol", real(&SweepSpec::tol)},
      {"seed",
       [](SweepSpec& s, const std::string& k, const std::string& v) { s.seed = to_unsigned(k, v); }},
      {"threads", count(&SweepSpec::threads)},
      {"out", [](SweepSpec& s, const std::string&, const std::string& v) { s.out = v; }},
  };
  return table;
}

}  // namespace

void apply_setting(SweepSpec& spec, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = trim(raw_value);
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown key '" + key + "'");
  if (value.empty()) throw ConfigError("key '" + key + "' has no value");
  it->second(spec, key, value);
}

SweepSpec parse_config(std::istream& in, SweepSpec base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return base;
}

SweepSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  SweepSpec spec;
  try {
    spec = parse_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace bhed
