#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace mbrr {

/// Result of running a cluster scenario script. Lines are deterministic for a
/// given script.
struct ScenarioReport {
  std::vector<std::string> lines;
  bool passed = true;
};

/// Runs a scenario script. One command per line, '#' starts a comment:
///
///   params N K U D [M]        create the cluster (must come first)
///   systematic                encode stripes systematically from now on
///   store STRIPES SEED        store pseudo-random stripes (mt19937_64(SEED))
///   fail E G                  fail node (E, G)
///   repair E G [H...]         repair node (E, G), optionally with helper racks H
///   read                      read every stripe and compare with what was stored
///   overhead                  print the storage overhead report
///
/// `repair` and `read` accept a trailing `expect-failure`, which turns an
/// error into a pass and success into a failure. Repairs are checked against
/// the stored content.
///
/// Throws Error(parse) for malformed lines; execution failures are recorded in
/// the report.
ScenarioReport run_scenario(std::istream& script);

}  // namespace mbrr
