#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "mbrr/layout.hpp"
#include "support.hpp"

namespace mbrr {
namespace {

using testing::example1;
using testing::parameter_sets;
using testing::Rng;

Element el(std::uint32_t v) { return Element{static_cast<std::uint16_t>(v)}; }

// The worked example with symbols s1..s20 stored as the values 1..20, which
// needs a field with more than 20 elements.
CodeParams example1_gf256() { return CodeParams::create(12, 7, 3, 3, 8); }

std::vector<Element> symbols_1_to(int b) {
  std::vector<Element> data;
  for (int s = 1; s <= b; ++s) data.push_back(el(static_cast<std::uint32_t>(s)));
  return data;
}

// Rows of the worked-example message matrix, columns x^0..x^6, x^8; entry s
// stands for s_s and 0 for the structural zero.
constexpr int kExample1[3][8] = {
    {1, 4, 7, 10, 13, 8, 18, 9},
    {2, 5, 8, 11, 14, 16, 19, 17},
    {3, 6, 9, 12, 15, 17, 20, 0},
};

TEST(ParamsNew, WorkedExample) {
  const CodeParams p = example1();
  EXPECT_EQ(p.alpha(), 3);
  EXPECT_EQ(p.stripe_symbols(), 20);
  EXPECT_EQ(p.beta(), 1);
  EXPECT_EQ(p.rack_count(), 4);
  EXPECT_EQ(p.k_racks(), 2);
  EXPECT_EQ(p.k_remainder(), 1);
  EXPECT_EQ(p.helper_racks(), 3);
  EXPECT_TRUE(p.field().is_binary());
  EXPECT_EQ(p.field().degree(), 4);
  EXPECT_EQ(p.xi(), el(2));
  EXPECT_EQ(p.eta(), p.field().pow(el(2), 5));
}

TEST(ParamsNew, FiftyNodeOverheadSet) {
  const CodeParams p = CodeParams::create(50, 44, 5, 9);
  EXPECT_EQ(p.stripe_symbols(), 368);
  EXPECT_EQ(p.n() * p.alpha(), 450);
  EXPECT_EQ(p.field().degree(), 8);
}

TEST(ParamsNew, HelperRacksBelowKRacks) {
  EXPECT_MBRR_ERROR(CodeParams::create(12, 7, 3, 1), ErrorCode::parameter_range);
}

TEST(ParamsNew, EachInvariantHasItsOwnDiagnostic) {
  EXPECT_MBRR_ERROR(CodeParams::create(12, 7, 1, 3), ErrorCode::parameter_range);
  EXPECT_MBRR_ERROR(CodeParams::create(13, 7, 3, 3), ErrorCode::parameter_divisibility);
  EXPECT_MBRR_ERROR(CodeParams::create(12, 2, 3, 3), ErrorCode::parameter_range);
  EXPECT_MBRR_ERROR(CodeParams::create(12, 12, 3, 3), ErrorCode::parameter_range);
  EXPECT_MBRR_ERROR(CodeParams::create(12, 7, 3, 4), ErrorCode::parameter_range);
  EXPECT_MBRR_ERROR(CodeParams::create(12, 7, 3, 3, 3), ErrorCode::field_unavailable);   // 3 does not divide 7
  EXPECT_MBRR_ERROR(CodeParams::create(12, 7, 3, 3, 2), ErrorCode::field_unavailable);   // q = 4 < n
  EXPECT_MBRR_ERROR(CodeParams::create(12, 7, 3, 3, 17), ErrorCode::out_of_range);
  EXPECT_MBRR_ERROR(CodeParams::create(12, 7, 3, 3, Field::prime(7)), ErrorCode::field_unavailable);
  EXPECT_MBRR_ERROR(CodeParams::create(12, 7, 3, 3, Field::prime(17)), ErrorCode::field_unavailable);
}

TEST(ParamsNew, AutoFieldIsSmallestBinaryThatFits) {
  EXPECT_EQ(example1().field(), Field(4));
  EXPECT_EQ(CodeParams::create(15, 7, 3, 3).field(), Field(4));
  EXPECT_EQ(CodeParams::create(18, 10, 3, 5).field(), Field(6));  // 16 < 18
  EXPECT_EQ(CodeParams::create(200, 194, 5, 39).field(), Field(8));
  EXPECT_EQ(CodeParams::create(12, 7, 3, 3, 8).field(), Field(8));
}

TEST(ParamsNew, EvenRackSizeFallsBackToPrimeField) {
  const CodeParams p = CodeParams::create(8, 5, 2, 3);
  EXPECT_FALSE(p.field().is_binary());
  EXPECT_EQ(p.field().size(), 11u);
  EXPECT_EQ(p.eta(), el(10));
  EXPECT_EQ(CodeParams::create(12, 6, 4, 2).field(), Field::prime(13));
  EXPECT_EQ(CodeParams::create(24, 10, 6, 3).field(), Field::prime(31));
  EXPECT_EQ(CodeParams::create(20, 11, 4, 4).field(), Field::prime(29));
  EXPECT_MBRR_ERROR(CodeParams::create(8, 5, 2, 3, 4), ErrorCode::field_unavailable);
}

TEST(ParamsNew, BothStripeSizeFormsAgree) {
  int checked = 0;
  for (int u = 2; u <= 6; ++u) {
    for (int racks = 2; racks * u <= 48; ++racks) {
      const int n = racks * u;
      for (int k = u; k < n; ++k) {
        for (int d = k / u; d <= racks - 1; ++d) {
          const CodeParams p = CodeParams::create(n, k, u, d);
          const int kr = k / u;
          ASSERT_EQ(p.stripe_symbols(), (k - kr) * d + kr * (kr + 1) / 2 + kr * (d - kr));
          ASSERT_EQ(p.stripe_symbols(), k * d - kr * (kr - 1) / 2);
          ASSERT_EQ(p.alpha(), d);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(IndexSets, WorkedExample) {
  const IndexSets s = index_sets(example1());
  EXPECT_EQ(s.j1, (std::vector<int>{2, 5, 8}));
  EXPECT_EQ(s.j2, (std::vector<int>{0, 1, 3, 4, 6}));
  EXPECT_EQ(s.j, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 8}));
  EXPECT_EQ(example1().column_of_degree(8), 7);
  EXPECT_EQ(example1().column_of_degree(7), -1);
}

TEST(IndexSets, HelperRacksEqualKRacks) {
  const IndexSets s = index_sets(CodeParams::create(12, 7, 3, 2));
  EXPECT_EQ(s.j, (std::vector<int>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(IndexSets, SizesAndMaxDegree) {
  for (int u = 2; u <= 5; ++u) {
    for (int racks = 2; racks <= 8; ++racks) {
      const int n = racks * u;
      for (int k = u; k < n; ++k) {
        for (int d = k / u; d <= racks - 1; ++d) {
          const CodeParams p = CodeParams::create(n, k, u, d);
          const IndexSets s = p.index_sets();
          const int kr = k / u;
          ASSERT_EQ(static_cast<int>(s.j1.size()), d);
          ASSERT_EQ(static_cast<int>(s.j2.size()), k - kr);
          ASSERT_EQ(static_cast<int>(s.j.size()), k - kr + d);
          ASSERT_EQ(p.max_degree(), d > kr ? d * u - 1 : k - 1);
          std::set<int> all(s.j1.begin(), s.j1.end());
          for (const int j : s.j2) {
            ASSERT_LT(j, k);
            ASSERT_TRUE(all.insert(j).second);
          }
          ASSERT_TRUE(std::is_sorted(s.j.begin(), s.j.end()));
          ASSERT_EQ(std::vector<int>(all.begin(), all.end()), s.j);
        }
      }
    }
  }
}

TEST(EvaluationPoint, Examples) {
  const CodeParams p = example1();
  const Field& f = p.field();
  EXPECT_EQ(evaluation_point(p, {0, 0}), Field::one());
  for (int e = 0; e < p.rack_count(); ++e) EXPECT_EQ(evaluation_point(p, {e, 0}), f.pow(p.xi(), e));
  EXPECT_EQ(evaluation_point(p, {2, 1}), f.mul(f.pow(p.xi(), 2), p.eta()));
  EXPECT_MBRR_ERROR(evaluation_point(p, {4, 0}), ErrorCode::out_of_range);
  EXPECT_MBRR_ERROR(evaluation_point(p, {0, 3}), ErrorCode::out_of_range);
  EXPECT_MBRR_ERROR(evaluation_point(p, {-1, 0}), ErrorCode::out_of_range);
}

TEST(EvaluationPoint, DistinctAndNonzero) {
  for (const CodeParams& p : parameter_sets()) {
    std::set<std::uint16_t> seen;
    for (const NodeId id : p.nodes()) {
      const Element lambda = evaluation_point(p, id);
      EXPECT_NE(lambda, Field::zero());
      EXPECT_TRUE(seen.insert(lambda.value).second) << to_string(id);
    }
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(p.n()));
  }
}

TEST(EvaluationPoint, RackPoint) {
  for (const CodeParams& p : parameter_sets()) {
    for (int e = 0; e < p.rack_count(); ++e) {
      EXPECT_EQ(p.rack_point(e), p.field().pow(p.xi(), static_cast<std::int64_t>(e) * p.u()));
    }
  }
}

TEST(NodeOrder, PositionRoundTrip) {
  const CodeParams p = example1();
  const auto nodes = p.nodes();
  ASSERT_EQ(nodes.size(), 12u);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    EXPECT_EQ(p.position(nodes[i]), i);
    EXPECT_EQ(p.node_at(i), nodes[i]);
  }
  EXPECT_EQ(p.position({2, 1}), 7u);
  EXPECT_EQ(to_string(NodeId{2, 1}), "(2,1)");
}

TEST(FillMessageMatrix, WorkedExample) {
  const CodeParams p = example1_gf256();
  const MessageMatrix m = fill_message_matrix(p, symbols_1_to(20));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t c = 0; c < 8; ++c) {
      EXPECT_EQ(m.entries()(i, c), el(static_cast<std::uint32_t>(kExample1[i][c]))) << i << "," << c;
    }
  }
  EXPECT_EQ(m.coefficient(0, 5), el(8));
  EXPECT_EQ(m.coefficient(1, 8), el(17));
  EXPECT_EQ(m.coefficient(2, 7), Field::zero());
  EXPECT_EQ(m.m1(0, 1), el(8));
  EXPECT_EQ(m.m1(2, 2), Field::zero());
  EXPECT_TRUE(m.is_structured());
}

TEST(FillMessageMatrix, ZeroData) {
  for (const CodeParams& p : parameter_sets()) {
    const MessageMatrix m = fill_message_matrix(p, std::vector<Element>(static_cast<std::size_t>(p.stripe_symbols())));
    EXPECT_EQ(m, MessageMatrix(p));
  }
}

TEST(FillMessageMatrix, RoundTrip) {
  Rng rng(1);
  for (const CodeParams& p : parameter_sets()) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto data = rng.data(p);
      const MessageMatrix m = fill_message_matrix(p, data);
      ASSERT_TRUE(m.is_structured());
      ASSERT_EQ(unfill_message_matrix(m), data);
    }
  }
}

TEST(FillMessageMatrix, WrongLength) {
  const CodeParams p = example1();
  EXPECT_MBRR_ERROR(fill_message_matrix(p, std::vector<Element>(19)), ErrorCode::dimension_mismatch);
  EXPECT_MBRR_ERROR(fill_message_matrix(p, std::vector<Element>(21)), ErrorCode::dimension_mismatch);
  std::vector<Element> bad(20);
  bad[3] = el(16);
  EXPECT_MBRR_ERROR(fill_message_matrix(p, bad), ErrorCode::field_mismatch);
}

TEST(FillMessageMatrix, FreeEntriesNumberB) {
  for (const CodeParams& p : parameter_sets()) {
    std::set<int> used;
    int zeros = 0;
    for (const int slot : p.fill_slots()) {
      if (slot < 0) {
        ++zeros;
      } else {
        used.insert(slot);
      }
    }
    EXPECT_EQ(static_cast<int>(used.size()), p.stripe_symbols());
    EXPECT_EQ(*used.rbegin(), p.stripe_symbols() - 1);
    const int free_block = p.helper_racks() - p.k_racks();
    EXPECT_EQ(zeros, free_block * free_block);
    for (int s = 0; s < p.stripe_symbols(); ++s) {
      const auto [row, col] = p.data_cell(s);
      EXPECT_EQ(p.fill_slots()[static_cast<std::size_t>(row) * p.column_count() + static_cast<std::size_t>(col)], s);
    }
  }
}

TEST(UnfillMessageMatrix, WorkedExample) {
  const CodeParams p = example1_gf256();
  Matrix entries(3, 8);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t c = 0; c < 8; ++c) entries(i, c) = el(static_cast<std::uint32_t>(kExample1[i][c]));
  }
  const MessageMatrix m = MessageMatrix::from_matrix(p, entries);
  EXPECT_EQ(unfill_message_matrix(m), symbols_1_to(20));
  EXPECT_EQ(unfill_message_matrix(MessageMatrix(p)), std::vector<Element>(20));
}

// Builds a valid message matrix directly from the structural rules, without
// the fill map.
MessageMatrix random_structured(Rng& rng, const CodeParams& p) {
  const auto& j = p.index_sets().j;
  const auto d = static_cast<std::size_t>(p.helper_racks());
  const int u = p.u();
  Matrix entries(d, j.size());
  Matrix block(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      const bool zero = a >= static_cast<std::size_t>(p.k_racks()) && b >= static_cast<std::size_t>(p.k_racks());
      block(a, b) = zero ? Field::zero() : rng.element(p.field());
      block(b, a) = block(a, b);
    }
  }
  for (std::size_t c = 0; c < j.size(); ++c) {
    const int degree = j[c];
    const bool in_block = degree % u == u - 1 && degree / u < static_cast<int>(d);
    for (std::size_t i = 0; i < d; ++i) {
      entries(i, c) = in_block ? block(i, static_cast<std::size_t>(degree / u)) : rng.element(p.field());
    }
  }
  return MessageMatrix::from_matrix(p, entries);
}

TEST(UnfillMessageMatrix, InverseOnValidMatrices) {
  Rng rng(2);
  for (const CodeParams& p : parameter_sets()) {
    for (int trial = 0; trial < 100; ++trial) {
      const MessageMatrix m = random_structured(rng, p);
      ASSERT_EQ(fill_message_matrix(p, unfill_message_matrix(m)), m);
    }
  }
}

TEST(MessageMatrix, RejectsBrokenStructure) {
  const CodeParams p = example1();
  Rng rng(3);
  const MessageMatrix good = random_structured(rng, p);
  Matrix asym = good.entries();
  asym(0, 5) = p.field().add(asym(0, 5), Field::one());  // breaks S symmetry with (1, 2)
  EXPECT_MBRR_ERROR(MessageMatrix::from_matrix(p, asym), ErrorCode::integrity);
  Matrix nonzero = good.entries();
  nonzero(2, 7) = Field::one();  // zero block
  EXPECT_MBRR_ERROR(MessageMatrix::from_matrix(p, nonzero), ErrorCode::integrity);
  EXPECT_MBRR_ERROR(MessageMatrix::from_matrix(p, Matrix(3, 7)), ErrorCode::dimension_mismatch);
}

TEST(MessageMatrix, BlockIsSymmetricWithZeroCorner) {
  Rng rng(4);
  for (const CodeParams& p : parameter_sets()) {
    for (int trial = 0; trial < 50; ++trial) {
      const MessageMatrix m = fill_message_matrix(p, rng.data(p));
      for (int i = 0; i < p.helper_racks(); ++i) {
        for (int j = 0; j < p.helper_racks(); ++j) {
          ASSERT_EQ(m.m1(i, j), m.m1(j, i));
          if (i >= p.k_racks() && j >= p.k_racks()) {
            ASSERT_EQ(m.m1(i, j), Field::zero());
          }
          ASSERT_EQ(m.m1(i, j), m.coefficient(i, j * p.u() + p.u() - 1));
        }
      }
    }
  }
}

TEST(CodeMatrix, Dimensions) {
  const CodeParams p = example1();
  CodeMatrix c(p);
  EXPECT_EQ(c.entries().rows(), 3u);
  EXPECT_EQ(c.entries().cols(), 12u);
  const std::vector<Element> col{el(1), el(2), el(3)};
  c.set_column({3, 2}, col);
  EXPECT_EQ(c.column({3, 2}), col);
  EXPECT_EQ(c.entries()(1, 11), el(2));
  EXPECT_MBRR_ERROR(c.set_column({0, 0}, std::vector<Element>(2)), ErrorCode::dimension_mismatch);
  EXPECT_MBRR_ERROR(CodeMatrix(p, Matrix(3, 11)), ErrorCode::dimension_mismatch);
}

}  // namespace
}  // namespace mbrr
