#pragma once

#include <string>
#include <vector>

#include "report.hpp"
#include "rsc/homology.hpp"

namespace rsc::cli {

struct VerifyOptions {
  HomologyOptions caps;
  int max_degree = 3;  // top degree of the unimodular complex
  int jobs = 0;
};

const std::vector<std::string>& suite_names();
const std::vector<std::string>& check_names();
bool is_verify_target(const std::string& name);

// Runs a suite or a single named check on every ring. Throws UsageError on unknown names or bad rings.
Report verify(const std::string& name, const std::vector<std::string>& rings, const VerifyOptions& opts);

// "gf:3,zmod:4;prod:gf:5,gf:4": ';' always separates, ',' separates until a prod: spec swallows the rest.
std::vector<std::string> split_ring_list(const std::string& text);

}  // namespace rsc::cli
