#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "mbrr/encode.hpp"
#include "mbrr/reconstruct.hpp"
#include "mbrr/repair.hpp"
#include "mbrr/systematic.hpp"
#include "support.hpp"

namespace mbrr {
namespace {

using testing::block_of;
using testing::example1;
using testing::for_each_subset;
using testing::parameter_sets;
using testing::reference_phi;
using testing::Rng;

std::vector<Element> read_positions(const CodeMatrix& c, const std::vector<CodeCell>& cells) {
  std::vector<Element> out;
  for (const CodeCell& cell : cells) {
    out.push_back(c.entries()(static_cast<std::size_t>(cell.row), c.params().position(cell.node)));
  }
  return out;
}

TEST(SystematicLayout, WorkedExample) {
  const SystematicLayout l = systematic_layout(example1());
  ASSERT_EQ(l.redundant_positions.size(), 1u);
  EXPECT_EQ(l.redundant_positions[0], (CodeCell{1, {0, 2}}));
  ASSERT_EQ(l.data_positions.size(), 20u);
  // node (0,0) rows 0..2, node (0,1) rows 0..2, then (0,2) without row 1
  const std::vector<CodeCell> head{{0, {0, 0}}, {1, {0, 0}}, {2, {0, 0}}, {0, {0, 1}}, {1, {0, 1}},
                                   {2, {0, 1}}, {0, {0, 2}}, {2, {0, 2}}, {0, {1, 0}}};
  EXPECT_TRUE(std::equal(head.begin(), head.end(), l.data_positions.begin()));
  EXPECT_EQ(l.data_positions.back(), (CodeCell{2, {2, 0}}));
}

TEST(SystematicLayout, SingleKRackHasNoRedundantCells) {
  const CodeParams p = CodeParams::create(12, 5, 3, 2);
  ASSERT_EQ(p.k_racks(), 1);
  const SystematicLayout l = systematic_layout(p);
  EXPECT_TRUE(l.redundant_positions.empty());
  EXPECT_EQ(l.data_positions.size(), 10u);
}

TEST(SystematicLayout, PartitionsFirstKColumns) {
  for (const CodeParams& p : parameter_sets()) {
    const SystematicLayout l = systematic_layout(p);
    const int kr = p.k_racks();
    EXPECT_EQ(static_cast<int>(l.redundant_positions.size()), kr * (kr - 1) / 2);
    EXPECT_EQ(static_cast<int>(l.data_positions.size()), p.stripe_symbols());
    EXPECT_EQ(static_cast<int>(l.data_positions.size() + l.redundant_positions.size()), p.k() * p.alpha());

    std::set<CodeCell> expected_redundant;
    for (int e = 0; e <= kr - 2; ++e) {
      for (int i = e + 1; i <= kr - 1; ++i) expected_redundant.insert(CodeCell{i, {e, p.u() - 1}});
    }
    EXPECT_EQ(std::set<CodeCell>(l.redundant_positions.begin(), l.redundant_positions.end()), expected_redundant);

    std::set<CodeCell> all;
    for (const CodeCell& c : l.data_positions) {
      EXPECT_LT(p.position(c.node), static_cast<std::size_t>(p.k()));
      EXPECT_TRUE(all.insert(c).second);
    }
    for (const CodeCell& c : l.redundant_positions) EXPECT_TRUE(all.insert(c).second);
    EXPECT_EQ(all.size(), static_cast<std::size_t>(p.k() * p.alpha()));

    // column-major by node
    for (std::size_t s = 1; s < l.data_positions.size(); ++s) {
      const CodeCell& a = l.data_positions[s - 1];
      const CodeCell& b = l.data_positions[s];
      EXPECT_TRUE(p.position(a.node) < p.position(b.node) || (a.node == b.node && a.row < b.row));
    }
  }
}

TEST(SystematicMessageMatrix, ZeroData) {
  for (const CodeParams& p : parameter_sets()) {
    EXPECT_EQ(systematic_message_matrix(p, std::vector<Element>(static_cast<std::size_t>(p.stripe_symbols()))),
              MessageMatrix(p));
  }
}

TEST(SystematicMessageMatrix, PlacesDataUncoded) {
  Rng rng(1);
  for (const CodeParams& p : parameter_sets()) {
    const SystematicLayout l = systematic_layout(p);
    for (int trial = 0; trial < 100; ++trial) {
      const auto data = rng.data(p);
      const MessageMatrix m = systematic_message_matrix(p, data);
      ASSERT_TRUE(m.is_structured());
      ASSERT_EQ(read_positions(encode(m), l.data_positions), data);
    }
  }
}

TEST(SystematicMessageMatrix, Linear) {
  Rng rng(2);
  for (const CodeParams& p : parameter_sets()) {
    const Field& f = p.field();
    for (int trial = 0; trial < 30; ++trial) {
      const auto x = rng.data(p);
      const auto y = rng.data(p);
      const Element a = rng.element(f);
      std::vector<Element> z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = f.add(f.mul(a, x[i]), y[i]);
      const Matrix mx = systematic_message_matrix(p, x).entries();
      const Matrix my = systematic_message_matrix(p, y).entries();
      const Matrix mz = systematic_message_matrix(p, z).entries();
      for (std::size_t i = 0; i < mz.entries().size(); ++i) {
        ASSERT_EQ(mz.entries()[i], f.add(f.mul(a, mx.entries()[i]), my.entries()[i]));
      }
    }
  }
}

TEST(SystematicMessageMatrix, LeadingCoefficientsConsistent) {
  Rng rng(3);
  for (const CodeParams& p : parameter_sets()) {
    const Matrix phi = reference_phi(p);
    const auto data = rng.data(p);
    const MessageMatrix m = systematic_message_matrix(p, data);
    const CodeMatrix c = encode(m);
    const Matrix expected = matmul(p.field(), block_of(m), phi);
    for (int e = 0; e < p.k_racks(); ++e) {
      std::vector<NodeId> ids;
      for (int g = 0; g < p.u(); ++g) ids.push_back({e, g});
      EXPECT_EQ(rack_leading_vector(p, e, observe(c, ids)).h, expected.column(static_cast<std::size_t>(e)));
    }
  }
}

TEST(SystematicMessageMatrix, WrongLength) {
  const CodeParams p = example1();
  EXPECT_MBRR_ERROR(systematic_message_matrix(p, std::vector<Element>(19)), ErrorCode::dimension_mismatch);
  std::vector<Element> bad(20);
  bad[0] = Element{16};
  EXPECT_MBRR_ERROR(systematic_message_matrix(p, bad), ErrorCode::field_mismatch);
}

TEST(SystematicEncode, ZeroData) {
  const CodeParams p = example1();
  EXPECT_EQ(systematic_encode(p, std::vector<Element>(20)), CodeMatrix(p));
}

TEST(SystematicEncode, ExtractRoundTrip) {
  Rng rng(4);
  for (const CodeParams& p : parameter_sets()) {
    const auto data = rng.data(p);
    const CodeMatrix c = systematic_encode(p, data);
    EXPECT_EQ(systematic_extract(p, c), data);
    EXPECT_EQ(read_positions(c, systematic_layout(p).data_positions), data);
  }
  EXPECT_MBRR_ERROR(systematic_extract(example1(), CodeMatrix(CodeParams::create(15, 7, 3, 3))),
                    ErrorCode::invalid_argument);
}

TEST(SystematicEncode, RepairRestoresUncodedSymbols) {
  Rng rng(5);
  for (const CodeParams& p : parameter_sets()) {
    const auto data = rng.data(p);
    const CodeMatrix c = systematic_encode(p, data);
    for (std::size_t pos = 0; pos < static_cast<std::size_t>(p.n()); ++pos) {
      const NodeId failed = p.node_at(pos);
      CodeMatrix damaged = c;
      damaged.set_column(failed, std::vector<Element>(static_cast<std::size_t>(p.alpha())));
      const RepairResult r = repair_node(damaged, failed);
      ASSERT_EQ(r.column, c.column(failed));
      damaged.set_column(failed, r.column);
      ASSERT_EQ(systematic_extract(p, damaged), data);
    }
  }
}

TEST(SystematicEncode, ReconstructsFromEverySubset) {
  Rng rng(6);
  const CodeParams p = example1();
  const auto data = rng.data(p);
  const MessageMatrix m = systematic_message_matrix(p, data);
  const CodeMatrix c = encode(m);
  for_each_subset(12, 7, [&](const std::vector<std::size_t>& idx) {
    std::vector<NodeId> ids;
    for (const std::size_t i : idx) ids.push_back(p.node_at(i));
    ASSERT_EQ(reconstruct(p, observe(c, ids)), m);
  });
}

TEST(PrecodingMatrix, DefinedByUnitVectors) {
  for (const CodeParams& p : {example1(), CodeParams::create(20, 11, 4, 4)}) {
    const Matrix pm = precoding_matrix(p);
    const auto b = static_cast<std::size_t>(p.stripe_symbols());
    ASSERT_EQ(pm.rows(), b);
    ASSERT_EQ(pm.cols(), b);
    for (std::size_t j = 0; j < b; ++j) {
      std::vector<Element> unit(b);
      unit[j] = Field::one();
      EXPECT_EQ(pm.column(j), unfill_message_matrix(systematic_message_matrix(p, unit)));
    }
    EXPECT_EQ(independent_rows(p.field(), pm).size(), b);
  }
}

TEST(PrecodingMatrix, PrecodeThenPlainEncode) {
  Rng rng(7);
  for (const CodeParams& p : parameter_sets()) {
    const Matrix pm = precoding_matrix(p);
    for (int trial = 0; trial < 20; ++trial) {
      const auto data = rng.data(p);
      ASSERT_EQ(encode(fill_message_matrix(p, matvec(p.field(), pm, data))), systematic_encode(p, data));
    }
  }
}

}  // namespace
}  // namespace mbrr
