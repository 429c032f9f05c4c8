#pragma once

#include <string>
#include <vector>

namespace rsc {

// fail: an identity the theory guarantees was violated. reported: a comparison whose truth
// depends on hypotheses we cannot certify.
enum class Status { Pass, Fail, SkippedHypothesis, Reported };

std::string to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

inline Check pass_or_fail(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail)};
}

bool any_failed(const std::vector<Check>& checks);

}  // namespace rsc
