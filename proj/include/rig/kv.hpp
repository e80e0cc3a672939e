#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rig {

/// One `key = value` line of a flat key-value document.
struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

/// Parses a flat key-value document: one `key = value` per line, blank
/// lines and `#` comments ignored. Throws std::runtime_error with a line
/// diagnostic on malformed input.
std::vector<KvEntry> parse_kv_text(std::string_view text);
std::vector<KvEntry> parse_kv_file(const std::filesystem::path& path);

/// Locale-independent numeric parsing; `context` names the key or cell in
/// the error message.
double parse_double(std::string_view text, const std::string& context);
std::uint64_t parse_u64(std::string_view text, const std::string& context);
std::int64_t parse_i64(std::string_view text, const std::string& context);

/// Reads a whole file; throws std::runtime_error naming the path if absent.
std::string read_text_file(const std::filesystem::path& path);

/// Shortest decimal form that round-trips the double exactly.
std::string format_double(double v);

}  // namespace rig
