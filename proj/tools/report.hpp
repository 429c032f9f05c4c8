#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsc/check.hpp"

namespace rsc::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RingCheck {
  std::string ring;
  Check check;
};

struct Report {
  std::string command;
  std::vector<std::string> rings;
  std::vector<RingCheck> checks;
  double seconds = 0;

  bool failed() const;
  // Everything but the timing is a function of the version and the command.
  nlohmann::json to_json(bool with_timing = true) const;
  void write_human(std::ostream& out) const;
  void write_csv(std::ostream& out) const;
};

}  // namespace rsc::cli
