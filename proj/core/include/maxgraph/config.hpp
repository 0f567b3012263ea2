#pragma once

#include <string>
#include <vector>

namespace maxgraph {

// Line-oriented run configuration:
//
//   # comment
//   [section]
//   key = value
//
// Sections and keys are lower-case words ([a-z0-9_.-]); values are bare
// tokens read without quoting, typed on access.  Lists are comma-separated.
// Each section and each key within a section may appear once; violations and
// type mismatches raise ConfigError with the file name and line number.
// Serialization is canonical (comments dropped, one space around '='), so
// parse(serialize(parse(text))) reproduces the same entries, and the
// serialized form is what run artifacts echo.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text,
                             const std::string& name = "<config>");

  bool has(const std::string& section, const std::string& key) const;

  // Source line of an entry (0 if absent or synthetic); lets callers report
  // schema violations beyond parse-time ones with the same precision.
  int line_of(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section,
                         const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;

  double get_number(const std::string& section, const std::string& key) const;
  double get_number(const std::string& section, const std::string& key,
                    double fallback) const;

  long get_integer(const std::string& section, const std::string& key) const;
  long get_integer(const std::string& section, const std::string& key,
                   long fallback) const;

  bool get_flag(const std::string& section, const std::string& key,
                bool fallback) const;

  std::vector<double> get_number_list(const std::string& section,
                                      const std::string& key) const;

  // Insert or overwrite an entry (used for defaults and CLI overrides);
  // synthetic entries carry line number 0.
  void set(const std::string& section, const std::string& key,
           const std::string& value);

  std::string serialize() const;
  const std::string& source_name() const { return name_; }

 private:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  struct Section {
    std::string name;
    std::vector<Entry> entries;
    int line = 0;
  };

  const Entry* find(const std::string& section, const std::string& key) const;
  const Entry& require(const std::string& section,
                       const std::string& key) const;

  std::string name_ = "<config>";
  std::vector<Section> sections_;
};

}  // namespace maxgraph
