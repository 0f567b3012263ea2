#include <maxgraph/report.hpp>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include <maxgraph/errors.hpp>

namespace maxgraph {

std::string current_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::string format_number(double v) {
  char buffer[32];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, v);
    if (std::strtod(buffer, nullptr) == v) break;
  }
  return buffer;
}

namespace {

void write_preamble(std::ofstream& out, const std::string& timestamp,
                    const Config& config) {
  out << "# generated: " << timestamp << "\n";
  std::istringstream echo(config.serialize());
  std::string line;
  while (std::getline(echo, line))
    if (!line.empty()) out << "# config: " << line << "\n";
}

}  // namespace

Artifacts::Artifacts(std::string directory, Config config)
    : Artifacts(std::move(directory), std::move(config), current_timestamp()) {}

Artifacts::Artifacts(std::string directory, Config config,
                     std::string timestamp)
    : directory_(std::move(directory)),
      config_(std::move(config)),
      timestamp_(std::move(timestamp)) {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec)
    throw Error("cannot create output directory '" + directory_ +
                "': " + ec.message());
}

void Artifacts::write_csv(const std::string& name,
                          const std::vector<std::string>& columns,
                          const std::vector<std::vector<std::string>>& rows) {
  const std::string path = directory_ + "/" + name + ".csv";
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_preamble(out, timestamp_, config_);
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw Error("csv row width mismatch in table '" + name + "'");
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << row[c];
    out << "\n";
  }
  tables_.push_back(name);
}

void Artifacts::add_check(const std::string& anchor, bool pass, double value,
                          const std::string& detail) {
  checks_.push_back({anchor, pass, value, detail});
}

bool Artifacts::all_pass() const {
  for (const auto& check : checks_)
    if (!check.pass) return false;
  return true;
}

bool Artifacts::finalize(const std::string& experiment) {
  {
    const std::string path = directory_ + "/ledger.txt";
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << "# generated: " << timestamp_ << "\n";
    out << "# experiment: " << experiment << "\n";
    for (const auto& check : checks_)
      out << (check.pass ? "PASS " : "FAIL ") << check.anchor
          << " value=" << format_number(check.value) << " : " << check.detail
          << "\n";
    out << (all_pass() ? "RESULT: ALL PASS (" : "RESULT: FAILURES (")
        << checks_.size() << " checks)\n";
  }

  nlohmann::ordered_json summary;
  summary["generated"] = timestamp_;
  summary["experiment"] = experiment;
  summary["config"] = config_.serialize();
  summary["tables"] = tables_;
  auto& checks = summary["checks"] = nlohmann::ordered_json::array();
  for (const auto& check : checks_) {
    nlohmann::ordered_json record;
    record["anchor"] = check.anchor;
    record["pass"] = check.pass;
    record["value"] = check.value;
    record["detail"] = check.detail;
    checks.push_back(record);
  }
  summary["all_pass"] = all_pass();

  const std::string path = directory_ + "/summary.json";
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << summary.dump(2) << "\n";
  return all_pass();
}

}  // namespace maxgraph
