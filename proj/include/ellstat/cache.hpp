#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ellstat/isoclasses.hpp"

namespace ellstat {

inline constexpr int kCacheFormatVersion = 1;

/// Cache file for p inside dir: "p<p>.csv".
std::filesystem::path cache_path(const std::filesystem::path& dir, std::int64_t p);

/// Serialized table: header `# ellstat-cache v1 p=<p> g=<g> crc=<hex>`, the
/// column line, then one CSV row per class. The CRC-32 covers everything
/// after the header line.
std::string serialize_class_table(const ClassTable& table);

/// Throws VersionMismatch or CorruptCache.
ClassTable parse_class_table(const std::string& text);

/// Writes through a temporary file and a rename, so concurrent readers never
/// see a partial file. Throws Io.
void cache_store(const ClassTable& table, const std::filesystem::path& dir);

/// Throws CacheMiss when no file exists for p, otherwise as parse_class_table.
ClassTable cache_load(std::int64_t p, const std::filesystem::path& dir);

/// Loads from the cache when possible, else builds and (if a directory is
/// given) stores the fresh table.
ClassTable obtain_class_table(std::int64_t p, const std::optional<std::filesystem::path>& dir);

}  // namespace ellstat
