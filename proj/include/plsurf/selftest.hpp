#pragma once

#include <functional>
#include <string>
#include <vector>

#include "plsurf/generate.hpp"

namespace plsurf {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  int cases = 0;       // instances or automorphisms examined
  int violations = 0;
  std::string detail;  // first violation, or a summary
  double seconds = 0;
};

/// Generated instances used by the property checks: genus 0-3, crosscaps
/// 0-2, boundary 0-3, with and without an extra extremum. Disks and
/// surfaces without critical levels are left out.
std::vector<Instance> selftest_corpus();

/// Runs every property check. `progress` is called after each check.
std::vector<SelftestCheck> run_selftest(const std::function<void(const SelftestCheck&)>& progress = {});

}  // namespace plsurf
