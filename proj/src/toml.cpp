#include "harmon/toml.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "harmon/error.hpp"

namespace harmon::toml {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("toml: line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool looks_integer(const std::string& s) {
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + i, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Value parse_value(const std::string& raw, std::size_t line) {
    if (raw.empty()) fail(line, "empty value");
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
            if (raw[i] == '\\' && i + 2 < raw.size()) {
                ++i;
                switch (raw[i]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(line, "unsupported escape");
                }
            } else {
                out += raw[i];
            }
        }
        return out;
    }
    if (raw == "true") return true;
    if (raw == "false") return false;
    if (looks_integer(raw)) {
        int64_t v = 0;
        const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc()) fail(line, "integer out of range '" + raw + "'");
        return v;
    }
    double d = 0;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), d);
    if (res.ec != std::errc() || res.ptr != raw.data() + raw.size() || !std::isfinite(d))
        fail(line, "cannot parse value '" + raw + "'");
    return d;
}

std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

std::string format_value(const Value& v) {
    if (std::holds_alternative<std::string>(v)) {
        std::string out = "\"";
        for (char c : std::get<std::string>(v)) {
            if (c == '"' || c == '\\') out += '\\';
            if (c == '\n') { out += "\\n"; continue; }
            out += c;
        }
        return out + "\"";
    }
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
    if (std::holds_alternative<int64_t>(v)) return std::to_string(std::get<int64_t>(v));
    const double d = std::get<double>(v);
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, d);
    std::string out(buf, res.ptr);
    // keep floats typed as floats on re-parse
    if (out.find_first_of(".eE") == std::string::npos) out += ".0";
    return out;
}

}  // namespace

Table parse(const std::string& text) {
    Table table;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string raw = text.substr(pos, eol == std::string::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string::npos) ? text.size() : eol + 1;
        ++line_no;

        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(line_no, "empty section name");
            table[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        table[section][key] = parse_value(val, line_no);
    }
    return table;
}

std::string write(const Table& table) {
    std::string out;
    const auto write_section = [&](const Section& s) {
        for (const auto& [k, v] : s) out += k + " = " + format_value(v) + "\n";
    };
    if (auto it = table.find(""); it != table.end()) write_section(it->second);
    for (const auto& [name, section] : table) {
        if (name.empty()) continue;
        if (!out.empty()) out += "\n";
        out += "[" + name + "]\n";
        write_section(section);
    }
    return out;
}

namespace {

const Value* find(const Table& t, const std::string& section, const std::string& key) {
    const auto sit = t.find(section);
    if (sit == t.end()) return nullptr;
    const auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return nullptr;
    return &kit->second;
}

}  // namespace

bool get(const Table& t, const std::string& section, const std::string& key, int64_t& out) {
    const Value* v = find(t, section, key);
    if (!v || !std::holds_alternative<int64_t>(*v)) return false;
    out = std::get<int64_t>(*v);
    return true;
}

bool get(const Table& t, const std::string& section, const std::string& key, int& out) {
    int64_t v = 0;
    if (!get(t, section, key, v)) return false;
    out = static_cast<int>(v);
    return true;
}

bool get(const Table& t, const std::string& section, const std::string& key, uint64_t& out) {
    int64_t v = 0;
    if (!get(t, section, key, v)) return false;
    out = static_cast<uint64_t>(v);
    return true;
}

bool get(const Table& t, const std::string& section, const std::string& key, double& out) {
    const Value* v = find(t, section, key);
    if (!v) return false;
    if (std::holds_alternative<double>(*v)) {
        out = std::get<double>(*v);
        return true;
    }
    if (std::holds_alternative<int64_t>(*v)) {
        out = static_cast<double>(std::get<int64_t>(*v));
        return true;
    }
    return false;
}

bool get(const Table& t, const std::string& section, const std::string& key, bool& out) {
    const Value* v = find(t, section, key);
    if (!v || !std::holds_alternative<bool>(*v)) return false;
    out = std::get<bool>(*v);
    return true;
}

bool get(const Table& t, const std::string& section, const std::string& key, std::string& out) {
    const Value* v = find(t, section, key);
    if (!v || !std::holds_alternative<std::string>(*v)) return false;
    out = std::get<std::string>(*v);
    return true;
}

}  // namespace harmon::toml
