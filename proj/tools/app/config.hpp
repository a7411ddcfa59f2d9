#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace syndyn::app {

using nlohmann::json;

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Schema violation; `path` is a JSON pointer to the offending value.
struct ConfigError : std::runtime_error {
    ConfigError(const std::string &path, const std::string &msg)
        : std::runtime_error((path.empty() ? "/" : path) + ": " + msg), path(path) {}
    std::string path;
};

/// Reads one JSON object, records every value it hands out (defaults included)
/// into `resolved`, and rejects keys nobody asked for.
class Section {
   public:
    Section(const json &j, std::string path);

    bool has(const std::string &key) const;
    double number(const std::string &key);
    double number(const std::string &key, double fallback);
    /// Must be > 0 (or >= 0 with allow_zero).
    double positive(const std::string &key, std::optional<double> fallback = {}, bool allow_zero = false);
    int64_t integer(const std::string &key, std::optional<int64_t> fallback = {});
    bool boolean(const std::string &key, bool fallback);
    std::string string(const std::string &key, std::optional<std::string> fallback = {});
    std::vector<double> numbers(const std::string &key, std::optional<std::vector<double>> fallback = {});
    std::vector<std::string> strings(const std::string &key);
    Section object(const std::string &key);
    const json &raw(const std::string &key) const;
    std::string child_path(const std::string &key) const {
        return path_ + "/" + key;
    }
    const std::string &path() const {
        return path_;
    }

    /// Throws ConfigError on keys that were never read.
    void finish();
    json &resolved() {
        return resolved_;
    }
    void adopt(const std::string &key, json value) {
        used_.push_back(key);
        resolved_[key] = std::move(value);
    }

   private:
    const json *find(const std::string &key) const;
    const json &j_;
    std::string path_;
    std::vector<std::string> used_;
    json resolved_ = json::object();
};

/// Parses text into a JSON object; empty or malformed input is a ConfigError.
json parse_config_text(const std::string &text);
json load_config_file(const std::string &path);

}  // namespace syndyn::app
