#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mbrr {

struct SelfTestOptions {
  std::uint64_t seed = 1;
  std::size_t stripes = 10;
  /// Damage one antilog entry of GF(2^8) before the table check, to show
  /// the check catches it.
  bool corrupt_field_table = false;
};

struct SelfTestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelfTestReport {
  std::vector<SelfTestCheck> checks;

  bool passed() const;
};

/// Field tables for every m, then the exhaustive suites at
/// (n=12, k=7, u=3, d=3): all 792 k-subsets reconstruct, every node repairs,
/// systematic placement holds.
SelfTestReport run_selftest(const SelfTestOptions& options = {});

}  // namespace mbrr
