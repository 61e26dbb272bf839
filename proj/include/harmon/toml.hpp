#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace harmon::toml {

// Minimal TOML subset used for run configs: [section] tables of scalar
// key = value pairs (string, integer, float, bool), '#' comments, no arrays
// or nesting. Writing then parsing reproduces the table exactly.
using Value = std::variant<int64_t, double, bool, std::string>;
using Section = std::map<std::string, Value>;
using Table = std::map<std::string, Section>;  // "" holds top-level keys

Table parse(const std::string& text);
std::string write(const Table& table);

// typed lookups; return false when the key is absent
bool get(const Table& t, const std::string& section, const std::string& key, int64_t& out);
bool get(const Table& t, const std::string& section, const std::string& key, int& out);
bool get(const Table& t, const std::string& section, const std::string& key, uint64_t& out);
bool get(const Table& t, const std::string& section, const std::string& key, double& out);
bool get(const Table& t, const std::string& section, const std::string& key, bool& out);
bool get(const Table& t, const std::string& section, const std::string& key, std::string& out);

}  // namespace harmon::toml
