#include "rig/kv.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rig {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<KvEntry> parse_kv_text(std::string_view text)
{
    std::vector<KvEntry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("line " + std::to_string(line_no) + ": empty key");
        entries.push_back(KvEntry{std::string(key), std::string(value), line_no});
    }
    return entries;
}

std::vector<KvEntry> parse_kv_file(const std::filesystem::path& path)
{
    return parse_kv_text(read_text_file(path));
}

double parse_double(std::string_view text, const std::string& context)
{
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::runtime_error(context + ": not a number: '" + std::string(text) + "'");
    return value;
}

std::uint64_t parse_u64(std::string_view text, const std::string& context)
{
    text = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::runtime_error(context + ": not an unsigned integer: '" + std::string(text) + "'");
    return value;
}

std::int64_t parse_i64(std::string_view text, const std::string& context)
{
    text = trim(text);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::runtime_error(context + ": not an integer: '" + std::string(text) + "'");
    return value;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string format_double(double v)
{
    // %.17g always round-trips; prefer the shorter form when it does too.
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    double back = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
    if (back != v)
        std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace rig
