#ifndef PWT_IO_HPP
#define PWT_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pwt {

// 64-bit FNV-1a of the raw config text; embedded in every artifact header so
// outputs can be traced back to the exact configuration that produced them.
std::uint64_t fnv1a_hash(const std::string& text);
std::string hash_hex(std::uint64_t h);

// Key = value pairs grouped in [section] blocks. Lines starting with '#' or
// ';' are comments. Section and key names are case-sensitive.
struct IniFile {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string raw;

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
};

IniFile parse_ini_text(const std::string& text);
IniFile parse_ini_file(const std::string& path);

// Deterministic shortest-round-trip decimal rendering (%.17g trimmed).
std::string format_double(double x);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial artifact.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

// "# pwt <version>" and "# config-hash <hex>" comment lines for artifacts.
std::string artifact_header(std::uint64_t config_hash);

// Rows of a comma-separated table with '#' metadata and one header row.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Skips '#' lines; requires every data row to have the header's arity.
CsvTable read_csv(const std::string& path);

std::string csv_line(const std::vector<double>& values);

} // namespace pwt

#endif
