#include "mbrr/scenario.hpp"

#include <charconv>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "mbrr/cluster.hpp"
#include "mbrr/encode.hpp"
#include "mbrr/error.hpp"
#include "mbrr/systematic.hpp"

namespace mbrr {

namespace {

struct Command {
  std::size_t line = 0;
  std::string name;
  std::vector<long long> args;
  bool expect_failure = false;
};

long long parse_int(const std::string& token, std::size_t line) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    fail(ErrorCode::parse, "line " + std::to_string(line) + ": expected an integer, got '" + token + "'");
  }
  return value;
}

std::vector<Command> parse(std::istream& in) {
  std::vector<Command> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream words(text);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;

    Command c;
    c.line = line;
    c.name = tokens.front();
    if (tokens.size() > 1 && tokens.back() == "expect-failure") {
      c.expect_failure = true;
      tokens.pop_back();
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) c.args.push_back(parse_int(tokens[i], line));

    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (c.args.size() < lo || c.args.size() > hi) {
        fail(ErrorCode::parse, "line " + std::to_string(line) + ": '" + c.name + "' takes " +
                                   std::to_string(lo) + (lo == hi ? "" : ".." + std::to_string(hi)) +
                                   " arguments");
      }
    };
    if (c.name == "params") {
      arity(4, 5);
    } else if (c.name == "systematic" || c.name == "read" || c.name == "overhead") {
      arity(0, 0);
    } else if (c.name == "store" || c.name == "fail") {
      arity(2, 2);
    } else if (c.name == "repair") {
      arity(2, 1000);
    } else {
      fail(ErrorCode::parse, "line " + std::to_string(line) + ": unknown command '" + c.name + "'");
    }
    if (c.expect_failure && c.name != "read" && c.name != "repair") {
      fail(ErrorCode::parse, "line " + std::to_string(line) + ": expect-failure only applies to read and repair");
    }
    if (c.name == "params" && !out.empty()) {
      fail(ErrorCode::parse, "line " + std::to_string(line) + ": params must be the first command");
    }
    if (c.name != "params" && out.empty()) {
      fail(ErrorCode::parse, "line " + std::to_string(line) + ": script must start with params");
    }
    out.push_back(std::move(c));
  }
  if (out.empty()) fail(ErrorCode::parse, "empty scenario");
  return out;
}

std::string node_str(long long e, long long g) {
  return "(" + std::to_string(e) + "," + std::to_string(g) + ")";
}

}  // namespace

ScenarioReport run_scenario(std::istream& script) {
  const auto commands = parse(script);
  ScenarioReport report;

  std::optional<CodeParams> params;
  std::unique_ptr<Cluster> cluster;
  bool systematic = false;
  std::vector<CodeMatrix> stored;
  std::vector<std::vector<Element>> stored_data;

  std::size_t step = 0;
  for (const auto& c : commands) {
    ++step;
    const std::string prefix = "step " + std::to_string(step) + ": ";
    auto arg = [&](std::size_t i) { return static_cast<int>(c.args[i]); };
    try {
      if (c.name == "params") {
        std::optional<int> m;
        if (c.args.size() == 5) m = arg(4);
        params = CodeParams::create(arg(0), arg(1), arg(2), arg(3), m);
        cluster = std::make_unique<Cluster>(*params, systematic);
        report.lines.push_back(prefix + "params n=" + std::to_string(params->n()) +
                               " k=" + std::to_string(params->k()) + " u=" + std::to_string(params->u()) +
                               " d=" + std::to_string(params->helper_racks()) +
                               " field=" + to_string(params->field()) +
                               " alpha=" + std::to_string(params->alpha()) +
                               " B=" + std::to_string(params->stripe_symbols()));
      } else if (c.name == "systematic") {
        systematic = true;
        cluster = std::make_unique<Cluster>(*params, true);
        stored.clear();
        stored_data.clear();
        report.lines.push_back(prefix + "systematic encoding on");
      } else if (c.name == "store") {
        const auto count = static_cast<std::size_t>(c.args[0]);
        std::mt19937_64 rng(static_cast<std::uint64_t>(c.args[1]));
        const std::uint32_t mask = params->field().size() - 1;
        stored.clear();
        stored_data.clear();
        for (std::size_t s = 0; s < count; ++s) {
          std::vector<Element> data(static_cast<std::size_t>(params->stripe_symbols()));
          for (auto& x : data) x = Element{static_cast<std::uint16_t>(rng() & mask)};
          stored.push_back(systematic ? systematic_encode(*params, data) : encode(fill_message_matrix(*params, data)));
          stored_data.push_back(std::move(data));
        }
        cluster->store_stripes(stored);
        report.lines.push_back(prefix + "store stripes=" + std::to_string(count) +
                               " seed=" + std::to_string(c.args[1]));
      } else if (c.name == "fail") {
        cluster->fail_node(NodeId{arg(0), arg(1)});
        report.lines.push_back(prefix + "fail node=" + node_str(c.args[0], c.args[1]) +
                               " healthy=" + std::to_string(cluster->healthy_count()));
      } else if (c.name == "repair") {
        const NodeId id{arg(0), arg(1)};
        std::optional<std::vector<int>> helpers;
        if (c.args.size() > 2) {
          helpers.emplace();
          for (std::size_t i = 2; i < c.args.size(); ++i) helpers->push_back(arg(i));
        }
        std::string line = prefix + "repair node=" + node_str(c.args[0], c.args[1]);
        try {
          const BandwidthLedger ledger = cluster->repair_failed(id, helpers);
          bool exact = true;
          for (std::size_t s = 0; s < stored.size(); ++s) {
            exact = exact && cluster->read_node(id, s) == stored[s].column(id);
          }
          line += " helpers=";
          bool first = true;
          for (const auto& [rack, count] : ledger.per_helper) {
            line += (first ? "" : ",") + std::to_string(rack);
            first = false;
          }
          const std::size_t per_stripe = stored.empty() ? 0 : ledger.cross_rack_symbols / stored.size();
          line += " cross_rack=" + std::to_string(ledger.cross_rack_symbols) +
                  " cross_rack_per_stripe=" + std::to_string(per_stripe) +
                  " intra_rack=" + std::to_string(ledger.intra_rack_symbols) +
                  " restored=" + (exact ? "exact" : "MISMATCH");
          const bool ok = exact && !c.expect_failure;
          if (!ok) report.passed = false;
          if (c.expect_failure) line += " UNEXPECTED-SUCCESS";
          report.lines.push_back(line);
        } catch (const Error& e) {
          if (!c.expect_failure) throw;
          report.lines.push_back(line + " expected-failure (" + std::string(to_string(e.code())) + ")");
        }
      } else if (c.name == "read") {
        std::string line = prefix + "read";
        try {
          const auto data = cluster->read_data();
          const bool match = data == stored_data;
          line += " stripes=" + std::to_string(data.size()) + " healthy=" +
                  std::to_string(cluster->healthy_count()) + (match ? " match" : " MISMATCH");
          if (!match || c.expect_failure) report.passed = false;
          if (c.expect_failure) line += " UNEXPECTED-SUCCESS";
          report.lines.push_back(line);
        } catch (const Error& e) {
          if (!c.expect_failure) throw;
          report.lines.push_back(line + " expected-failure (" + std::string(to_string(e.code())) + ")");
        }
      } else if (c.name == "overhead") {
        const OverheadReport r = overhead_report(*params);
        std::ostringstream os;
        os.precision(4);
        os << std::fixed << prefix << "overhead n*alpha/B=" << r.stored_symbols << "/" << r.data_symbols
           << "=" << r.overhead << " gamma=" << r.repair_bandwidth << " gamma/alpha=" << r.bandwidth_to_storage;
        report.lines.push_back(os.str());
      }
    } catch (const Error& e) {
      report.passed = false;
      report.lines.push_back(prefix + c.name + " FAILED (" + std::string(to_string(e.code())) + "): " + e.what());
    }
  }
  report.lines.push_back(std::string("result: ") + (report.passed ? "pass" : "FAIL"));
  return report;
}

}  // namespace mbrr
