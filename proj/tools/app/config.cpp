#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace syndyn::app {

Section::Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
        throw ConfigError(path_, "expected an object");
    }
}

const json *Section::find(const std::string &key) const {
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
}

bool Section::has(const std::string &key) const {
    return find(key) != nullptr;
}

const json &Section::raw(const std::string &key) const {
    auto v = find(key);
    if (!v) {
        throw ConfigError(path_ + "/" + key, "required key missing");
    }
    return *v;
}

double Section::number(const std::string &key) {
    const auto &v = raw(key);
    if (!v.is_number()) {
        throw ConfigError(child_path(key), "expected a number");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ConfigError(child_path(key), "must be finite");
    }
    adopt(key, d);
    return d;
}

double Section::number(const std::string &key, double fallback) {
    if (!has(key)) {
        adopt(key, fallback);
        return fallback;
    }
    return number(key);
}

double Section::positive(const std::string &key, std::optional<double> fallback, bool allow_zero) {
    double d = fallback && !has(key) ? number(key, *fallback) : number(key);
    if (allow_zero ? d < 0 : d <= 0) {
        throw ConfigError(child_path(key), allow_zero ? "must be non-negative" : "must be positive");
    }
    return d;
}

int64_t Section::integer(const std::string &key, std::optional<int64_t> fallback) {
    if (!has(key) && fallback) {
        adopt(key, *fallback);
        return *fallback;
    }
    const auto &v = raw(key);
    if (!v.is_number_integer()) {
        throw ConfigError(child_path(key), "expected an integer");
    }
    auto i = v.get<int64_t>();
    adopt(key, i);
    return i;
}

bool Section::boolean(const std::string &key, bool fallback) {
    if (!has(key)) {
        adopt(key, fallback);
        return fallback;
    }
    const auto &v = raw(key);
    if (!v.is_boolean()) {
        throw ConfigError(child_path(key), "expected true or false");
    }
    adopt(key, v.get<bool>());
    return v.get<bool>();
}

std::string Section::string(const std::string &key, std::optional<std::string> fallback) {
    if (!has(key) && fallback) {
        adopt(key, *fallback);
        return *fallback;
    }
    const auto &v = raw(key);
    if (!v.is_string()) {
        throw ConfigError(child_path(key), "expected a string");
    }
    adopt(key, v.get<std::string>());
    return v.get<std::string>();
}

std::vector<double> Section::numbers(const std::string &key, std::optional<std::vector<double>> fallback) {
    if (!has(key) && fallback) {
        adopt(key, *fallback);
        return *fallback;
    }
    const auto &v = raw(key);
    if (!v.is_array() || v.empty()) {
        throw ConfigError(child_path(key), "expected a non-empty array of numbers");
    }
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); i++) {
        if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
            throw ConfigError(child_path(key) + "/" + std::to_string(i), "expected a finite number");
        }
        out.push_back(v[i].get<double>());
    }
    adopt(key, out);
    return out;
}

std::vector<std::string> Section::strings(const std::string &key) {
    const auto &v = raw(key);
    if (!v.is_array() || v.empty()) {
        throw ConfigError(child_path(key), "expected a non-empty array of strings");
    }
    std::vector<std::string> out;
    for (size_t i = 0; i < v.size(); i++) {
        if (!v[i].is_string()) {
            throw ConfigError(child_path(key) + "/" + std::to_string(i), "expected a string");
        }
        out.push_back(v[i].get<std::string>());
    }
    adopt(key, out);
    return out;
}

Section Section::object(const std::string &key) {
    used_.push_back(key);
    return Section(raw(key), child_path(key));
}

void Section::finish() {
    for (const auto &[key, value] : j_.items()) {
        if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
            throw ConfigError(child_path(key), "unknown key");
        }
    }
}

json parse_config_text(const std::string &text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ConfigError("", "config is empty");
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("", "top level must be an object");
    }
    return j;
}

json load_config_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace syndyn::app
