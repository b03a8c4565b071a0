#include "glsim/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace glsim {

namespace pt = boost::property_tree;

Config Config::parse(const std::string& text, const std::string& origin) {
    Config c;
    c.origin_ = origin;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, c.tree_);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto& [section, sub] : c.tree_)
        if (sub.empty() && !sub.data().empty())
            throw ConfigError(origin + ": key '" + section + "' must sit inside a [section]");
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Config c = parse(ss.str(), path);
    c.base_dir_ = std::filesystem::path(path).parent_path().string();
    return c;
}

std::optional<std::string> Config::raw(const std::string& key) const {
    used_.insert(key);
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return boost::trim_copy(*v);
    return std::nullopt;
}

bool Config::has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

std::string Config::get_string(const std::string& key) const {
    auto v = raw(key);
    if (!v || v->empty()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return *v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto v = raw(key);
    return v && !v->empty() ? *v : fallback;
}

namespace {
double to_double(const std::string& origin, const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ConfigError(origin + ": key '" + key + "': '" + s + "' is not a number");
}

long long to_integer(const std::string& origin, const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ConfigError(origin + ": key '" + key + "': '" + s + "' is not an integer");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    boost::split(parts, s, boost::is_any_of(","));
    for (auto& p : parts) boost::trim(p);
    return parts;
}
}  // namespace

double Config::get_double(const std::string& key) const { return to_double(origin_, key, get_string(key)); }

double Config::get_double(const std::string& key, double fallback) const {
    auto v = raw(key);
    return v && !v->empty() ? to_double(origin_, key, *v) : fallback;
}

int Config::get_int(const std::string& key) const { return static_cast<int>(to_integer(origin_, key, get_string(key))); }

int Config::get_int(const std::string& key, int fallback) const {
    auto v = raw(key);
    return v && !v->empty() ? static_cast<int>(to_integer(origin_, key, *v)) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto v = raw(key);
    if (!v || v->empty()) return fallback;
    try {
        std::size_t used = 0;
        const auto x = std::stoull(*v, &used);
        if (used == v->size() && (*v)[0] != '-') return x;
    } catch (const std::logic_error&) {
    }
    throw ConfigError(origin_ + ": key '" + key + "': '" + *v + "' is not an unsigned integer");
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto v = raw(key);
    if (!v || v->empty()) return fallback;
    const std::string s = boost::to_lower_copy(*v);
    if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
    if (s == "false" || s == "no" || s == "0" || s == "off") return false;
    throw ConfigError(origin_ + ": key '" + key + "': '" + *v + "' is not a boolean");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& p : split_list(get_string(key))) {
        if (p.empty()) throw ConfigError(origin_ + ": key '" + key + "': empty list entry");
        out.push_back(to_double(origin_, key, p));
    }
    return out;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
    auto v = raw(key);
    return v && !v->empty() ? get_doubles(key) : fallback;
}

std::vector<int> Config::get_ints(const std::string& key) const {
    std::vector<int> out;
    for (const auto& p : split_list(get_string(key))) {
        if (p.empty()) throw ConfigError(origin_ + ": key '" + key + "': empty list entry");
        out.push_back(static_cast<int>(to_integer(origin_, key, p)));
    }
    return out;
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& fallback) const {
    auto v = raw(key);
    return v && !v->empty() ? get_ints(key) : fallback;
}

std::vector<std::string> Config::get_strings(const std::string& key, const std::vector<std::string>& fallback) const {
    auto v = raw(key);
    if (!v || v->empty()) return fallback;
    auto parts = split_list(*v);
    for (const auto& p : parts)
        if (p.empty()) throw ConfigError(origin_ + ": key '" + key + "': empty list entry");
    return parts;
}

void Config::set(const std::string& key, const std::string& value) {
    if (key.find('.') == std::string::npos) throw ConfigError("override key '" + key + "' must be section.key");
    tree_.put(pt::ptree::path_type(key, '.'), value);
}

std::string Config::resolve_path(const std::string& p) const {
    const std::filesystem::path path(p);
    if (path.is_absolute() || base_dir_.empty()) return p;
    return (std::filesystem::path(base_dir_) / path).string();
}

std::vector<std::pair<std::string, std::string>> Config::entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [section, sub] : tree_)
        for (const auto& [key, val] : sub) out.emplace_back(section + "." + key, boost::trim_copy(val.data()));
    return out;
}

std::vector<std::string> Config::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries())
        if (!used_.count(k)) out.push_back(k);
    return out;
}

}  // namespace glsim
