#include "report.hpp"

#include <map>

namespace rsc::cli {

bool Report::failed() const {
  for (const auto& c : checks)
    if (c.check.status == Status::Fail) return true;
  return false;
}

nlohmann::json Report::to_json(bool with_timing) const {
  nlohmann::json j{{"version", kVersion}, {"command", command}, {"rings", rings}};
  j["checks"] = nlohmann::json::array();
  std::map<std::string, int> summary{{"pass", 0}, {"fail", 0}, {"skipped:hypothesis", 0}, {"reported", 0}};
  for (const auto& c : checks) {
    j["checks"].push_back(
        {{"ring", c.ring}, {"name", c.check.name}, {"status", to_string(c.check.status)}, {"detail", c.check.detail}});
    ++summary[to_string(c.check.status)];
  }
  j["summary"] = summary;
  if (with_timing) j["timing"] = {{"seconds", seconds}};
  return j;
}

void Report::write_human(std::ostream& out) const {
  for (const auto& c : checks) {
    out << "[" << to_string(c.check.status) << "] " << c.ring << ": " << c.check.name;
    if (!c.check.detail.empty()) out << " (" << c.check.detail << ")";
    out << "\n";
  }
  int fails = 0;
  for (const auto& c : checks) fails += c.check.status == Status::Fail;
  out << checks.size() << " checks, " << fails << " failed\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void Report::write_csv(std::ostream& out) const {
  out << "ring,name,status,detail\n";
  for (const auto& c : checks)
    out << csv_field(c.ring) << "," << csv_field(c.check.name) << "," << to_string(c.check.status) << ","
        << csv_field(c.check.detail) << "\n";
}

}  // namespace rsc::cli
