#include "cftkit/config.hpp"

#include "cftkit/error.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace cftkit {

namespace {

constexpr const char* kArtifactVersion = "cftkit-0.1.0";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw UsageError("config key " + key + " needs an integer, got '" + value + "'");
    return v;
}

}  // namespace

std::filesystem::path RunConfig::default_cache_dir() {
    for (const char* var : {"CFTKIT_CACHE_DIR", "CFTKit_CACHE_DIR"})
        if (const char* v = std::getenv(var); v && *v) return v;
    if (const char* v = std::getenv("XDG_CACHE_HOME"); v && *v) return std::filesystem::path(v) / "cftkit";
    if (const char* v = std::getenv("HOME"); v && *v) return std::filesystem::path(v) / ".cache" / "cftkit";
    return std::filesystem::temp_directory_path() / "cftkit-cache";
}

void RunConfig::validate() const {
    if (order < 1) throw UsageError("order must be at least 1 (got " + std::to_string(order) + ")");
    if (precision_bits < 32) throw UsageError("precision_bits must be at least 32 (got " + std::to_string(precision_bits) + ")");
    if (enumeration_cap && *enumeration_cap < 1) throw UsageError("enumeration cap must be positive");
}

void apply_config_text(RunConfig& config, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(number) + " is not key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "order") {
            config.order = static_cast<int>(parse_number(key, value));
        } else if (key == "precision_bits") {
            config.precision_bits = parse_number(key, value);
        } else if (key == "cache_dir") {
            config.cache_dir = value;
        } else if (key == "output") {
            if (value == "json")
                config.output = OutputFormat::Json;
            else if (value == "markdown")
                config.output = OutputFormat::Markdown;
            else
                throw UsageError("output must be json or markdown, got '" + value + "'");
        } else if (key == "enumeration_caps") {
            config.enumeration_cap = parse_number(key, value);
        } else {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    config.validate();
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(config, text.str());
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 15];
    return out;
}

std::string commutant_cache_key(const std::string& algebra, long param) {
    return "commutant-" + fnv1a_hex(algebra + ":" + std::to_string(param) + ":" + kArtifactVersion);
}

std::filesystem::path DiskCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<std::string> DiskCache::load(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void DiskCache::store(const std::string& key, const std::string& content) const {
    static std::atomic<unsigned> counter{0};
    std::filesystem::create_directories(dir_);
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    const std::filesystem::path tmp = dir_ / (key + ".tmp-" + std::to_string(::getpid()) + "-" +
                                              std::to_string(stamp) + "-" + std::to_string(counter++));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot write cache file in " + dir_.string());
        out << content;
        out.flush();
        if (!out) throw UsageError("cannot write cache file in " + dir_.string());
    }
    std::filesystem::rename(tmp, path_for(key));
}

}  // namespace cftkit
