#pragma once

#include "cftkit/qseries.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace cftkit {

enum class OutputFormat { Markdown, Json };

struct RunConfig {
    int order = kDefaultOrder;
    long precision_bits = 128;
    std::filesystem::path cache_dir = default_cache_dir();
    OutputFormat output = OutputFormat::Markdown;
    std::optional<long> enumeration_cap;

    /// CFTKIT_CACHE_DIR, then CFTKit_CACHE_DIR, then $XDG_CACHE_HOME/cftkit or ~/.cache/cftkit.
    static std::filesystem::path default_cache_dir();
    /// Throws UsageError when a field is out of range.
    void validate() const;
};

/// Applies "key = value" lines (order, precision_bits, cache_dir, output,
/// enumeration_caps); blank lines and lines starting with '#' are ignored.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Directory of content-addressed files written atomically.
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const noexcept { return dir_; }
    std::filesystem::path path_for(const std::string& key) const;
    std::optional<std::string> load(const std::string& key) const;
    /// Writes to a temporary file in the same directory, then renames it into place.
    void store(const std::string& key, const std::string& content) const;

private:
    std::filesystem::path dir_;
};

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// Cache key for commutant bases of a theory, including the artifact version.
std::string commutant_cache_key(const std::string& algebra, long param);

}  // namespace cftkit
