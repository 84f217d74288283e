#include "pwt/io.hpp"

#include "pwt/errors.hpp"
#include "pwt/version.hpp"

#include <cerrno>
#include <climits>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pwt {

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

bool IniFile::has(const std::string& section, const std::string& key) const {
    auto it = sections.find(section);
    return it != sections.end() && it->second.count(key) > 0;
}

std::optional<std::string> IniFile::get(const std::string& section, const std::string& key) const {
    auto it = sections.find(section);
    if (it == sections.end()) return std::nullopt;
    auto jt = it->second.find(key);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::string IniFile::get_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    auto v = get(section, key);
    return v ? *v : fallback;
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        double x = std::stod(*v, &used);
        if (trim(v->substr(used)).empty()) return x;
    } catch (...) {
    }
    throw InputError("bad numeric value for " + section + "." + key + ": '" + *v + "'");
}

int IniFile::get_int(const std::string& section, const std::string& key, int fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        long x = std::stol(*v, &used);
        if (trim(v->substr(used)).empty() && x >= INT_MIN && x <= INT_MAX)
            return static_cast<int>(x);
    } catch (...) {
    }
    throw InputError("bad integer value for " + section + "." + key + ": '" + *v + "'");
}

bool IniFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    auto v = get(section, key);
    if (!v) return fallback;
    std::string s = trim(*v);
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw InputError("bad boolean value for " + section + "." + key + ": '" + *v + "'");
}

IniFile parse_ini_text(const std::string& text) {
    IniFile out;
    out.raw = text;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3)
                throw InputError("malformed section header at line " + std::to_string(lineno));
            section = trim(t.substr(1, t.size() - 2));
            out.sections[section];
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw InputError("expected key = value at line " + std::to_string(lineno));
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw InputError("empty key at line " + std::to_string(lineno));
        out.sections[section][key] = value;
    }
    return out;
}

IniFile parse_ini_file(const std::string& path) { return parse_ini_text(read_text_file(path)); }

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // Try shorter renderings that still round-trip exactly.
    for (int prec = 1; prec < 17; ++prec) {
        char trial[40];
        std::snprintf(trial, sizeof trial, "%.*g", prec, x);
        if (std::strtod(trial, nullptr) == x) return trial;
    }
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw InputError("rename to " + path + " failed: " + ec.message());
}

std::string artifact_header(std::uint64_t config_hash) {
    std::string s;
    s += "# pwt ";
    s += kVersion;
    s += "\n# config-hash ";
    s += hash_hex(config_hash);
    s += "\n";
    return s;
}

CsvTable read_csv(const std::string& path) {
    std::string text = read_text_file(path);
    std::istringstream in(text);
    CsvTable table;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (true) {
            std::size_t c = t.find(',', pos);
            fields.push_back(trim(t.substr(pos, c == std::string::npos ? c : c - pos)));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        if (!header_seen) {
            header_seen = true;
            table.columns = fields;
            continue;
        }
        if (fields.size() != table.columns.size())
            throw InputError("row arity mismatch at line " + std::to_string(lineno));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const std::string& f : fields) {
            char* endp = nullptr;
            errno = 0;
            double x = std::strtod(f.c_str(), &endp);
            if (errno != 0 || endp == f.c_str() || *endp != '\0')
                throw InputError("bad numeric field '" + f + "' at line " + std::to_string(lineno));
            row.push_back(x);
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw InputError("empty CSV " + path);
    return table;
}

std::string csv_line(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += format_double(values[i]);
    }
    s += '\n';
    return s;
}

} // namespace pwt
