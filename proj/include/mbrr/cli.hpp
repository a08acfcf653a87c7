#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mbrr/selftest.hpp"

namespace mbrr::cli {

struct CodeArgs {
  int n = 0;
  int k = 0;
  int u = 0;
  int helper_racks = 0;
  std::optional<int> field_degree;
};

// Each command writes its report to `out`, diagnostics to `err`, and returns
// the process exit status.
int cmd_params(const CodeArgs& args, std::ostream& out, std::ostream& err);
int cmd_encode(const std::filesystem::path& input, const CodeArgs& args, const std::filesystem::path& out_dir,
               bool systematic, std::ostream& out, std::ostream& err);
/// `inputs` may name shard files or directories holding shard_*.mbrr files.
int cmd_decode(const std::vector<std::filesystem::path>& inputs, const std::filesystem::path& output,
               std::ostream& out, std::ostream& err);
int cmd_repair(const std::filesystem::path& shard_dir, int rack, int node,
               const std::optional<std::vector<int>>& helpers, const std::optional<std::filesystem::path>& output,
               std::ostream& out, std::ostream& err);
int cmd_simulate(const std::filesystem::path& script, std::ostream& out, std::ostream& err);
int cmd_selftest(const SelfTestOptions& options, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, printed next to written shards.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

/// Parses argv and dispatches to a command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mbrr::cli
