#include "settings.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir::cli {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

Settings::Settings()
    : env_([](const std::string& name) -> std::optional<std::string> {
          if (const char* v = std::getenv(name.c_str())) return std::string(v);
          return std::nullopt;
      }) {}

Settings::Settings(EnvLookup env) : env_(std::move(env)) {}

void Settings::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot read config file '" + path + "'");
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument(path + ":" + std::to_string(number) + ": expected key = value");
        }
        set_file_value(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void Settings::set_file_value(const std::string& key, const std::string& value) { file_[key] = value; }

std::optional<std::string> Settings::resolve(const std::string& key,
                                             const std::optional<std::string>& flag) const {
    if (flag) return flag;
    if (auto env = env_(env_name(key))) return env;
    if (auto it = file_.find(key); it != file_.end()) return it->second;
    return std::nullopt;
}

std::string Settings::env_name(const std::string& key) {
    std::string name = "CASIMIR_";
    for (char c : key) name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return name;
}

double parse_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || trim(text.substr(used)) != "") {
        throw InvalidArgument("setting '" + key + "': '" + text + "' is not a number");
    }
    return value;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
    const double v = parse_double(key, text);
    if (v < 1.0 || v != std::floor(v) || v > 1e12) {
        throw InvalidArgument("setting '" + key + "': '" + text + "' is not a positive integer");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
    std::vector<double> values;
    for (const auto& word : parse_word_list(text)) values.push_back(parse_double(key, word));
    if (values.empty()) {
        throw InvalidArgument("setting '" + key + "' needs at least one value");
    }
    return values;
}

std::vector<std::string> parse_word_list(const std::string& text) {
    std::vector<std::string> words;
    std::stringstream in(text);
    std::string word;
    while (std::getline(in, word, ',')) {
        word = trim(word);
        if (!word.empty()) words.push_back(word);
    }
    return words;
}

}  // namespace casimir::cli
