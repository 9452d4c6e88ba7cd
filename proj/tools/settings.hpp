#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace casimir::cli {

/// Layered lookup of a named setting:
///   command-line flag > CASIMIR_<KEY> environment variable > config file > built-in default.
///
/// Config files hold `key = value` lines; `#` starts a comment. Documented
/// keys: tolerance, n_max, h_max, units, format, route, routes, lambda,
/// lambda_grid, a_values, lambda_values, profile.
class Settings {
public:
    using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

    Settings();  // reads the real process environment
    explicit Settings(EnvLookup env);

    /// Loads a config file; throws InvalidArgument on unreadable files or
    /// malformed lines.
    void load_file(const std::string& path);
    void set_file_value(const std::string& key, const std::string& value);

    std::optional<std::string> resolve(const std::string& key,
                                       const std::optional<std::string>& flag) const;

    static std::string env_name(const std::string& key);

private:
    EnvLookup env_;
    std::map<std::string, std::string> file_;
};

double parse_double(const std::string& key, const std::string& text);
std::size_t parse_count(const std::string& key, const std::string& text);
std::vector<double> parse_double_list(const std::string& key, const std::string& text);
std::vector<std::string> parse_word_list(const std::string& text);

}  // namespace casimir::cli
