#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace iongate::runner {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key=value configuration with '#' comments. Every lookup marks the key
// as used so that typos can be reported by check_unused().
class Config {
 public:
  [[nodiscard]] static Config parse(std::istream& in, const std::string& source = "<config>");
  [[nodiscard]] static Config load(const std::filesystem::path& path);

  [[nodiscard]] bool has(const std::string& key) const;
  [[nodiscard]] std::string text(const std::string& key, const std::string& fallback) const;
  [[nodiscard]] double number(const std::string& key, double fallback) const;
  [[nodiscard]] std::optional<double> optional_number(const std::string& key) const;
  [[nodiscard]] int integer(const std::string& key, int fallback) const;

  // Grid syntax: "a, b, c" or "start:stop:count" (inclusive) or
  // "start:stop:count:open" (stop excluded). Grids must be non-empty and
  // strictly increasing.
  [[nodiscard]] std::vector<double> grid(const std::string& key,
                                         const std::string& fallback) const;

  void set(const std::string& key, const std::string& value);

  // Throws ConfigError naming keys that no lookup touched.
  void check_unused() const;

  // Sorted key=value lines; the basis of the config hash.
  [[nodiscard]] std::string canonical() const;
  [[nodiscard]] std::uint64_t hash() const;

 private:
  std::string source_;
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

[[nodiscard]] std::vector<double> parse_grid(const std::string& spec);

}  // namespace iongate::runner
