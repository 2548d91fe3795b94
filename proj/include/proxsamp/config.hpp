#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "proxsamp/oracles.hpp"

namespace proxsamp {

/// Flat key = value configuration with one nesting level expressed through
/// dotted keys ("body.kind = box").  '#' starts a comment, vectors are
/// whitespace-separated numbers, duplicate keys are rejected.  Readers mark
/// keys consumed so that a command can list every key it did not understand.
class KeyValueConfig {
  public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string_or(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double_or(const std::string& key, double fallback);
    std::uint64_t get_u64(const std::string& key);
    std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback);
    bool get_bool_or(const std::string& key, bool fallback);
    std::vector<double> get_vector(const std::string& key);

    std::vector<std::string> unconsumed() const;

  private:
    std::string raw(const std::string& key);
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> consumed_;
};

/// Builds the body described by "<prefix>kind" and friends; polytopes take
/// row-major A plus b, the row count is inferred from b.
std::unique_ptr<StandardBody> make_body(KeyValueConfig& cfg, const std::string& prefix);

std::unique_ptr<PotentialOracle> make_potential(KeyValueConfig& cfg,
                                                const std::string& prefix);

}  // namespace proxsamp
