#pragma once

#include <map>
#include <string>
#include <vector>

namespace kintwin {

// Flat key=value configuration. Lines starting with '#' are comments.
// Keys are dotted, e.g. "sim.substeps" or "env.reward.w_a".
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_str(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int64_t get_int(const std::string& key, int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // Comma-separated list of integers, e.g. "0,1,2,4,8,16".
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    void set_double(const std::string& key, double value);
    void set_int(const std::string& key, int64_t value);

    // Merge other on top of this one.
    void overlay(const Config& other);

    std::string dump() const;
    void save(const std::string& path) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace kintwin
