#include "iongate_runner/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace iongate::runner {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Accepts plain numbers and multiples of pi such as "pi", "pi/2", "0.5*pi", "-pi/4".
double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError("empty number");
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(value)) throw ConfigError("not a number: '" + s + "'");
    return value;
  }
  std::string prefix = trim(s.substr(0, pos));
  std::string suffix = trim(s.substr(pos + 2));
  double factor = 1.0;
  if (prefix == "-") {
    factor = -1.0;
  } else if (!prefix.empty()) {
    if (prefix.back() != '*') throw ConfigError("cannot parse '" + s + "'");
    prefix.pop_back();
    factor = parse_number(prefix);
  }
  double divisor = 1.0;
  if (!suffix.empty()) {
    if (suffix.front() != '/') throw ConfigError("cannot parse '" + s + "'");
    divisor = parse_number(suffix.substr(1));
    if (divisor == 0.0) throw ConfigError("division by zero in '" + s + "'");
  }
  return factor * std::numbers::pi / divisor;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  return parts;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> values;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3 && parts.size() != 4) {
      throw ConfigError("range grid must be start:stop:count[:open], got '" + spec + "'");
    }
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double count_value = parse_number(parts[2]);
    const bool open = parts.size() == 4;
    if (open && parts[3] != "open") throw ConfigError("unknown grid flag '" + parts[3] + "'");
    if (count_value < 1.0 || count_value != std::floor(count_value)) {
      throw ConfigError("grid count must be a positive integer");
    }
    const auto count = static_cast<int>(count_value);
    const int divisions = open ? count : count - 1;
    for (int k = 0; k < count; ++k) {
      values.push_back(divisions == 0 ? start : start + (stop - start) * k / divisions);
    }
  } else {
    for (const std::string& part : split(spec, ',')) {
      if (!part.empty()) values.push_back(parse_number(part));
    }
  }
  if (values.empty()) throw ConfigError("grid '" + spec + "' is empty");
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] > values[k - 1])) throw ConfigError("grid '" + spec + "' is not increasing");
  }
  return values;
}

Config Config::parse(std::istream& in, const std::string& source) {
  Config config;
  config.source_ = source;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(number) + ": empty key");
    if (config.values_.count(key) != 0) {
      throw ConfigError(source + ":" + std::to_string(number) + ": duplicate key '" + key + "'");
    }
    config.values_[key] = value;
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse(in, path.string());
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::text(const std::string& key, const std::string& fallback) const {
  used_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::number(const std::string& key, double fallback) const {
  const auto value = optional_number(key);
  return value ? *value : fallback;
}

std::optional<double> Config::optional_number(const std::string& key) const {
  used_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  try {
    return parse_number(it->second);
  } catch (const ConfigError& e) {
    throw ConfigError(source_ + ": key '" + key + "': " + e.what());
  }
}

int Config::integer(const std::string& key, int fallback) const {
  const double value = number(key, fallback);
  if (value != std::floor(value) || std::abs(value) > 1e9) {
    throw ConfigError(source_ + ": key '" + key + "' must be an integer");
  }
  return static_cast<int>(value);
}

std::vector<double> Config::grid(const std::string& key, const std::string& fallback) const {
  try {
    return parse_grid(text(key, fallback));
  } catch (const ConfigError& e) {
    throw ConfigError(source_ + ": key '" + key + "': " + e.what());
  }
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::check_unused() const {
  std::string unknown;
  for (const auto& [key, value] : values_) {
    if (used_.count(key) == 0) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty()) throw ConfigError(source_ + ": unknown keys: " + unknown);
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + "=" + value + "\n";
  return out;
}

std::uint64_t Config::hash() const {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace iongate::runner
