#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fieldscope {

struct ReproduceCheck {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ReproduceReport {
  std::vector<ReproduceCheck> checks;
  double elapsed_seconds = 0.0;

  bool all_pass() const;
  std::string render() const;   // one line per check
  std::string to_json() const;
};

// Runs the bundled-fixture comparison and evaluation suite and checks the
// expected journal/publication numbers. Fails loudly with a diff per check.
ReproduceReport run_reproduction(const std::filesystem::path& fixture_dir);

}  // namespace fieldscope
