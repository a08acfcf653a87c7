#pragma once

// GoogleTest glue shared by the unit suites.

#include <gtest/gtest.h>

#include <ostream>

#include "mbrr/error.hpp"
#include "reference.hpp"

// Expects `stmt` to throw mbrr::Error with the given ErrorCode.
#define EXPECT_MBRR_ERROR(stmt, error_code)                                      \
  do {                                                                           \
    try {                                                                        \
      stmt;                                                                      \
      ADD_FAILURE() << #stmt " did not throw";                                   \
    } catch (const ::mbrr::Error& mbrr_error_) {                                 \
      EXPECT_EQ(::mbrr::to_string(mbrr_error_.code()), ::mbrr::to_string(error_code)) \
          << mbrr_error_.what();                                                 \
    }                                                                            \
  } while (false)

namespace mbrr {
inline void PrintTo(const Field& f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(Element e, std::ostream* os) { *os << e.value; }
inline void PrintTo(NodeId id, std::ostream* os) { *os << to_string(id); }
}  // namespace mbrr
