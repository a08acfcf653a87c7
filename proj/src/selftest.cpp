#include "mbrr/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "mbrr/encode.hpp"
#include "mbrr/error.hpp"
#include "mbrr/reconstruct.hpp"
#include "mbrr/repair.hpp"
#include "mbrr/systematic.hpp"

namespace mbrr {

bool SelfTestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelfTestCheck& c) { return c.passed; });
}

namespace {

std::vector<Element> random_data(const CodeParams& p, std::mt19937_64& rng) {
  const std::uint32_t mask = p.field().size() - 1;
  std::vector<Element> data(static_cast<std::size_t>(p.stripe_symbols()));
  for (auto& x : data) x = Element{static_cast<std::uint16_t>(rng() & mask)};
  return data;
}

/// Calls visit for every k-subset of [0, n) in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

SelfTestCheck timed(const std::string& name, const std::function<Outcome()>& body) {
  SelfTestCheck check{name, false, "", 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome outcome = body();
    check.passed = outcome.ok;
    check.detail = outcome.detail;
  } catch (const Error& e) {
    check.detail = std::string(to_string(e.code())) + ": " + e.what();
  }
  check.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return check;
}

}  // namespace

SelfTestReport run_selftest(const SelfTestOptions& options) {
  SelfTestReport report;
  std::mt19937_64 rng(options.seed);

  report.checks.push_back(timed("field tables", [&]() -> Outcome {
    for (int m = 1; m <= Field::kMaxDegree; ++m) {
      Field f(m);
      if (options.corrupt_field_table && m == 8) f = f.with_corrupted_table_for_testing(17);
      if (!f.verify_tables()) return {false, "GF(2^" + std::to_string(m) + ") table check failed"};
    }
    return {true, "m=1..16"};
  }));

  const CodeParams p = CodeParams::create(12, 7, 3, 3);
  report.checks.push_back(timed("parameters", [&]() -> Outcome {
    if (p.alpha() != 3 || p.stripe_symbols() != 20) {
      return {false, "alpha=" + std::to_string(p.alpha()) + " B=" + std::to_string(p.stripe_symbols())};
    }
    return {true, "alpha=3 B=20"};
  }));

  std::vector<std::vector<Element>> stripes;
  for (std::size_t s = 0; s < options.stripes; ++s) stripes.push_back(random_data(p, rng));

  report.checks.push_back(timed("reconstruction (all 792 k-subsets)", [&]() -> Outcome {
    const auto nodes = p.nodes();
    std::size_t runs = 0;
    for (const auto& data : stripes) {
      const CodeMatrix c = encode(fill_message_matrix(p, data));
      std::string problem;
      for_each_subset(nodes.size(), static_cast<std::size_t>(p.k()), [&](const std::vector<std::size_t>& idx) {
        if (!problem.empty()) return;
        std::vector<NodeId> ids;
        for (const auto i : idx) ids.push_back(nodes[i]);
        if (unfill_message_matrix(reconstruct(p, observe(c, ids))) != data) problem = "mismatch";
        ++runs;
      });
      if (!problem.empty()) return {false, problem};
    }
    return {true, std::to_string(runs) + " decodes"};
  }));

  report.checks.push_back(timed("repair (every node)", [&]() -> Outcome {
    std::size_t runs = 0;
    for (const auto& data : stripes) {
      const CodeMatrix c = encode(fill_message_matrix(p, data));
      for (const NodeId id : p.nodes()) {
        CodeMatrix damaged = c;
        damaged.set_column(id, std::vector<Element>(static_cast<std::size_t>(p.alpha())));
        const RepairResult r = repair_node(damaged, id);
        if (r.column != c.column(id)) return {false, "node " + to_string(id) + " repaired wrong"};
        if (r.ledger.cross_rack_symbols != static_cast<std::size_t>(p.alpha())) return {false, "ledger mismatch"};
        ++runs;
      }
    }
    return {true, std::to_string(runs) + " repairs"};
  }));

  report.checks.push_back(timed("systematic placement", [&]() -> Outcome {
    for (const auto& data : stripes) {
      const CodeMatrix c = systematic_encode(p, data);
      if (systematic_extract(p, c) != data) return {false, "data not found at layout positions"};
      const NodeId id{0, 2};
      CodeMatrix damaged = c;
      damaged.set_column(id, std::vector<Element>(static_cast<std::size_t>(p.alpha())));
      if (repair_node(damaged, id).column != c.column(id)) return {false, "systematic repair mismatch"};
    }
    return {true, ""};
  }));
  return report;
}

}  // namespace mbrr
