#pragma once

#include <string>
#include <vector>

#include <maxgraph/config.hpp>

namespace maxgraph {

// ISO-8601 UTC wall-clock time, e.g. 2026-08-25T12:34:56Z.
std::string current_timestamp();

// Shortest decimal that parses back to exactly v; keeps artifacts
// byte-stable across reruns without dumping 17 digits everywhere.
std::string format_number(double v);

struct CheckRecord {
  std::string anchor;  // stable check name, e.g. "tilt-laplacian-identity"
  bool pass = false;
  double value = 0.0;  // the measured number behind the verdict
  std::string detail;
};

// Deterministic artifact tree for one run: CSV tables, a JSON summary and a
// plain-text PASS/FAIL ledger, all under one directory.  Every file opens
// with a '# generated' timestamp (the only line allowed to differ between
// reruns of the same config) and carries the config so artifacts are
// self-describing.
class Artifacts {
 public:
  Artifacts(std::string directory, Config config);
  Artifacts(std::string directory, Config config, std::string timestamp);

  const std::string& directory() const { return directory_; }

  void write_csv(const std::string& name,
                 const std::vector<std::string>& columns,
                 const std::vector<std::vector<std::string>>& rows);

  void add_check(const std::string& anchor, bool pass, double value,
                 const std::string& detail);

  bool all_pass() const;
  const std::vector<CheckRecord>& checks() const { return checks_; }

  // Writes summary.json and ledger.txt; returns all_pass().
  bool finalize(const std::string& experiment);

 private:
  std::string directory_;
  Config config_;
  std::string timestamp_;
  std::vector<CheckRecord> checks_;
  std::vector<std::string> tables_;
};

}  // namespace maxgraph
