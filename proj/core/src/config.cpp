#include <maxgraph/config.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <maxgraph/errors.hpp>

namespace maxgraph {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_word(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

double parse_number(const std::string& file, int line, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end != begin + v.size() || v.empty())
    throw ConfigError(file, line, "expected a number, got '" + v + "'");
  return value;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& name) {
  Config config;
  config.name_ = name;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  Section* current = nullptr;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(name, line_no, "unterminated section header");
      const std::string section = trim(line.substr(1, line.size() - 2));
      if (!valid_word(section))
        throw ConfigError(name, line_no,
                          "invalid section name '" + section + "'");
      for (const auto& s : config.sections_)
        if (s.name == section)
          throw ConfigError(name, line_no,
                            "duplicate section '" + section + "' (first at "
                            "line " + std::to_string(s.line) + ")");
      config.sections_.push_back({section, {}, line_no});
      current = &config.sections_.back();
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name, line_no, "expected 'key = value' or '[section]'");
    if (current == nullptr)
      throw ConfigError(name, line_no, "entry before any [section] header");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_word(key))
      throw ConfigError(name, line_no, "invalid key '" + key + "'");
    if (value.empty())
      throw ConfigError(name, line_no, "missing value for '" + key + "'");
    for (const auto& e : current->entries)
      if (e.key == key)
        throw ConfigError(name, line_no,
                          "duplicate key '" + key + "' (first at line " +
                              std::to_string(e.line) + ")");
    current->entries.push_back({key, value, line_no});
  }
  return config;
}

const Config::Entry* Config::find(const std::string& section,
                                  const std::string& key) const {
  for (const auto& s : sections_)
    if (s.name == section)
      for (const auto& e : s.entries)
        if (e.key == key) return &e;
  return nullptr;
}

const Config::Entry& Config::require(const std::string& section,
                                     const std::string& key) const {
  const Entry* e = find(section, key);
  if (e == nullptr)
    throw ConfigError(name_, 0,
                      "missing required entry [" + section + "] " + key);
  return *e;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

int Config::line_of(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  return e ? e->line : 0;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key) const {
  return require(section, key).value;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key,
                               const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double Config::get_number(const std::string& section,
                          const std::string& key) const {
  const Entry& e = require(section, key);
  return parse_number(name_, e.line, e.value);
}

double Config::get_number(const std::string& section, const std::string& key,
                          double fallback) const {
  const Entry* e = find(section, key);
  return e ? parse_number(name_, e->line, e->value) : fallback;
}

long Config::get_integer(const std::string& section,
                         const std::string& key) const {
  const Entry& e = require(section, key);
  const double v = parse_number(name_, e.line, e.value);
  const long rounded = static_cast<long>(v);
  if (static_cast<double>(rounded) != v)
    throw ConfigError(name_, e.line, "expected an integer, got '" + e.value +
                                         "'");
  return rounded;
}

long Config::get_integer(const std::string& section, const std::string& key,
                         long fallback) const {
  return find(section, key) ? get_integer(section, key) : fallback;
}

bool Config::get_flag(const std::string& section, const std::string& key,
                      bool fallback) const {
  const Entry* e = find(section, key);
  if (e == nullptr) return fallback;
  if (e->value == "true") return true;
  if (e->value == "false") return false;
  throw ConfigError(name_, e->line,
                    "expected true or false, got '" + e->value + "'");
}

std::vector<double> Config::get_number_list(const std::string& section,
                                            const std::string& key) const {
  const Entry& e = require(section, key);
  std::vector<double> values;
  std::string item;
  std::istringstream in(e.value);
  while (std::getline(in, item, ',')) {
    const std::string token = trim(item);
    if (token.empty())
      throw ConfigError(name_, e.line, "empty item in list '" + e.value + "'");
    values.push_back(parse_number(name_, e.line, token));
  }
  if (values.empty())
    throw ConfigError(name_, e.line, "empty list for '" + key + "'");
  return values;
}

void Config::set(const std::string& section, const std::string& key,
                 const std::string& value) {
  for (auto& s : sections_) {
    if (s.name != section) continue;
    for (auto& e : s.entries)
      if (e.key == key) {
        e.value = value;
        return;
      }
    s.entries.push_back({key, value, 0});
    return;
  }
  sections_.push_back({section, {{key, value, 0}}, 0});
}

std::string Config::serialize() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : sections_) {
    if (!first) out << "\n";
    first = false;
    out << "[" << s.name << "]\n";
    for (const auto& e : s.entries) out << e.key << " = " << e.value << "\n";
  }
  return out.str();
}

}  // namespace maxgraph
