#pragma once

#include "glsim/linalg.hpp"

#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace glsim {

struct ConfigError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// INI-style key/value file with [section] headers; keys are addressed as "section.key".
// Lists are comma separated. Every key read is recorded so typos can be reported.
class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<config>");
    static Config load(const std::string& path);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_doubles(const std::string& key) const;  // non-empty
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
    std::vector<int> get_ints(const std::string& key) const;
    std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;
    std::vector<std::string> get_strings(const std::string& key, const std::vector<std::string>& fallback) const;

    void set(const std::string& key, const std::string& value);
    // Resolves a path relative to the directory holding the config file.
    std::string resolve_path(const std::string& p) const;

    std::vector<std::pair<std::string, std::string>> entries() const;  // in file order
    std::vector<std::string> unused_keys() const;
    const std::string& origin() const { return origin_; }

private:
    std::optional<std::string> raw(const std::string& key) const;

    boost::property_tree::ptree tree_;
    std::string origin_;
    std::string base_dir_;
    mutable std::set<std::string> used_;
};

}  // namespace glsim
