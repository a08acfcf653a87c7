#include "mbrr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

#include "mbrr/cluster.hpp"
#include "mbrr/error.hpp"
#include "mbrr/file_codec.hpp"
#include "mbrr/scenario.hpp"
#include "mbrr/shard.hpp"

namespace mbrr::cli {

namespace fs = std::filesystem;

namespace {

int report_error(std::ostream& err, const Error& e) {
  err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
  return 1;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::io, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::io, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::vector<fs::path> shard_paths(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("shard_") && entry.path().extension() == ".mbrr") {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

void print_ledger(std::ostream& out, const BandwidthLedger& ledger, std::size_t stripes) {
  out << "cross_rack_symbols=" << ledger.cross_rack_symbols << "\n";
  out << "cross_rack_symbols_per_stripe=" << (stripes == 0 ? 0 : ledger.cross_rack_symbols / stripes) << "\n";
  out << "intra_rack_symbols=" << ledger.intra_rack_symbols << "\n";
  for (const auto& [rack, count] : ledger.per_helper) out << "helper_rack." << rack << "=" << count << "\n";
}

CodeParams make_params(const CodeArgs& a) {
  return CodeParams::create(a.n, a.k, a.u, a.helper_racks, a.field_degree);
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

int cmd_params(const CodeArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const CodeParams p = make_params(args);
    const OverheadReport r = overhead_report(p);
    out << "n=" << p.n() << " k=" << p.k() << " u=" << p.u() << " d=" << p.helper_racks() << "\n";
    out << "racks=" << p.rack_count() << " k_racks=" << p.k_racks() << " k_remainder=" << p.k_remainder() << "\n";
    out << "alpha=" << p.alpha() << " beta=" << p.beta() << " B=" << p.stripe_symbols() << "\n";
    out << "field=" << to_string(p.field());
    if (p.field().is_binary()) {
      out << " polynomial=0x" << std::hex << std::uppercase << p.field().polynomial() << std::dec << std::nouppercase;
    }
    out << "\n";
    out << "xi=" << p.xi().value << " eta=" << p.eta().value << "\n";
    out << std::fixed << std::setprecision(4);
    out << "storage_overhead=" << r.stored_symbols << "/" << r.data_symbols << "=" << r.overhead << "\n";
    out << "repair_bandwidth=" << r.repair_bandwidth << " bandwidth/alpha=" << r.bandwidth_to_storage << "\n";
    out << std::defaultfloat;
    return 0;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_encode(const fs::path& input, const CodeArgs& args, const fs::path& out_dir, bool systematic,
               std::ostream& out, std::ostream& err) {
  try {
    const CodeParams p = make_params(args);
    const auto bytes = read_file(input);
    const auto shards = encode_bytes(p, bytes, systematic);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) fail(ErrorCode::io, "cannot create " + out_dir.string() + ": " + ec.message());
    for (const auto& s : shards) {
      const NodeId id{static_cast<int>(s.header.rack), static_cast<int>(s.header.node)};
      const auto path = out_dir / shard_file_name(id);
      write_shard_file(path, s);
      out << path.filename().string() << " fnv1a64=" << hex64(fnv1a64(serialize_shard(s))) << "\n";
    }
    out << "encoded " << bytes.size() << " bytes into " << shards.size() << " shards, "
        << shards.front().header.stripe_count << " stripes" << (systematic ? " (systematic)" : "") << "\n";
    return 0;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_decode(const std::vector<fs::path>& inputs, const fs::path& output, std::ostream& out, std::ostream& err) {
  try {
    std::vector<ShardFile> shards;
    for (const auto& path : shard_paths(inputs)) shards.push_back(read_shard_file(path));
    if (shards.empty()) fail(ErrorCode::insufficient_survivors, "no shard files found");
    const auto bytes = decode_shards(shards);
    write_file(output, bytes);
    out << "decoded " << bytes.size() << " bytes from " << shards.size() << " shards\n";
    return 0;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_repair(const fs::path& shard_dir, int rack, int node, const std::optional<std::vector<int>>& helpers,
               const std::optional<fs::path>& output, std::ostream& out, std::ostream& err) {
  try {
    const NodeId failed{rack, node};
    const fs::path target = output ? *output : shard_dir / shard_file_name(failed);
    if (!output && fs::exists(target)) {
      fail(ErrorCode::invalid_argument, target.string() + " exists; pass --out to regenerate elsewhere");
    }
    std::vector<ShardFile> shards;
    for (const auto& path : shard_paths({shard_dir})) {
      ShardFile s = read_shard_file(path);
      if (NodeId{static_cast<int>(s.header.rack), static_cast<int>(s.header.node)} == failed) continue;
      shards.push_back(std::move(s));
    }
    const ShardRepair repaired = repair_shard(shards, failed, helpers);
    write_shard_file(target, repaired.shard);
    out << "repaired node " << to_string(failed) << " -> " << target.string() << "\n";
    out << "stripes=" << repaired.shard.header.stripe_count << "\n";
    print_ledger(out, repaired.ledger, static_cast<std::size_t>(repaired.shard.header.stripe_count));
    out << "fnv1a64=" << hex64(fnv1a64(serialize_shard(repaired.shard))) << "\n";
    return 0;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_simulate(const fs::path& script, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(script);
    if (!in) fail(ErrorCode::io, "cannot open " + script.string());
    const ScenarioReport report = run_scenario(in);
    for (const auto& line : report.lines) out << line << "\n";
    return report.passed ? 0 : 1;
  } catch (const Error& e) {
    return report_error(err, e);
  }
}

int cmd_selftest(const SelfTestOptions& options, std::ostream& out, std::ostream&) {
  const SelfTestReport report = run_selftest(options);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << std::fixed << std::setprecision(3) << c.seconds
        << " s]" << std::defaultfloat;
    if (!c.detail.empty()) out << " " << c.detail;
    out << "\n";
  }
  out << (report.passed() ? "selftest: all passed" : "selftest: FAILED") << "\n";
  return report.passed() ? 0 : 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rack-aware minimum-bandwidth regenerating code tool"};
  app.require_subcommand(1);

  CodeArgs code;
  int field_degree = 0;
  auto add_code_args = [&](CLI::App* sub) {
    sub->add_option("n", code.n, "Total nodes")->required();
    sub->add_option("k", code.k, "Nodes needed to reconstruct")->required();
    sub->add_option("u", code.u, "Nodes per rack")->required();
    sub->add_option("d", code.helper_racks, "Helper racks per repair")->required();
    sub->add_option("--field-m", field_degree, "Field degree m of GF(2^m) (default: smallest that fits)");
  };

  auto* params = app.add_subcommand("params", "Validate parameters and print the derived values");
  add_code_args(params);

  fs::path input;
  fs::path out_dir = "shards";
  bool systematic = false;
  auto* encode = app.add_subcommand("encode", "Encode a file into n shard files");
  encode->add_option("input", input, "File to encode")->required()->check(CLI::ExistingFile);
  add_code_args(encode);
  encode->add_option("--out", out_dir, "Output directory")->capture_default_str();
  encode->add_flag("--systematic", systematic, "Keep the data uncoded on the first k nodes");

  std::vector<fs::path> decode_inputs;
  fs::path decode_out;
  auto* decode = app.add_subcommand("decode", "Rebuild the file from k or more shards");
  decode->add_option("shards", decode_inputs, "Shard files or directories")->required();
  decode->add_option("--out", decode_out, "Output file")->required();

  fs::path repair_dir;
  int rack = 0;
  int node = 0;
  std::vector<int> helpers;
  fs::path repair_out;
  auto* repair = app.add_subcommand("repair", "Regenerate one lost shard");
  repair->add_option("dir", repair_dir, "Directory with the surviving shards")->required()->check(CLI::ExistingDirectory);
  repair->add_option("rack", rack, "Rack of the lost node")->required();
  repair->add_option("node", node, "Index of the lost node in its rack")->required();
  auto* helpers_opt = repair->add_option("--helpers", helpers, "Helper racks")->delimiter(',');
  auto* repair_out_opt = repair->add_option("--out", repair_out, "Where to write the regenerated shard");

  fs::path script;
  auto* simulate = app.add_subcommand("simulate", "Run a cluster failure/repair scenario");
  simulate->add_option("script", script, "Scenario script")->required()->check(CLI::ExistingFile);

  SelfTestOptions selftest_options;
  auto* selftest = app.add_subcommand("selftest", "Run the built-in exhaustive checks");
  selftest->add_option("--stripes", selftest_options.stripes, "Random stripes per suite")->capture_default_str();
  selftest->add_option("--seed", selftest_options.seed, "Random seed")->capture_default_str();
  selftest->add_flag("--corrupt-field-table", selftest_options.corrupt_field_table,
                     "Damage a field table first (fault-injection check)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream eo;
    const int status = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return status;
  }
  if (field_degree != 0) code.field_degree = field_degree;

  if (params->parsed()) return cmd_params(code, out, err);
  if (encode->parsed()) return cmd_encode(input, code, out_dir, systematic, out, err);
  if (decode->parsed()) return cmd_decode(decode_inputs, decode_out, out, err);
  if (repair->parsed()) {
    std::optional<std::vector<int>> h;
    if (helpers_opt->count() > 0) h = helpers;
    std::optional<fs::path> o;
    if (repair_out_opt->count() > 0) o = repair_out;
    return cmd_repair(repair_dir, rack, node, h, o, out, err);
  }
  if (simulate->parsed()) return cmd_simulate(script, out, err);
  if (selftest->parsed()) return cmd_selftest(selftest_options, out, err);
  return 2;
}

}  // namespace mbrr::cli
