#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mbrr {

/// A field element: for GF(2^m) the polynomial-basis bit pattern, for GF(p)
/// the residue. The value is meaningful only together with its Field.
struct Element {
  std::uint16_t value = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Finite field backed by log/antilog tables: either GF(2^m), 1 <= m <= 16,
/// or a prime field GF(p), 2 < p < 2^16. Copies share the immutable tables,
/// so a Field is cheap to pass by value and safe to use from several threads.
///
/// The reduction polynomial for each m is fixed (see default_polynomial) and
/// verified primitive while the tables are built: x must have multiplicative
/// order exactly 2^m - 1. Prime fields use their smallest primitive root.
class Field {
 public:
  static constexpr int kMaxDegree = 16;
  static constexpr std::uint32_t kMaxPrime = 65521;

  /// GF(p) for an odd prime p <= kMaxPrime.
  static Field prime(std::uint32_t p);
  static bool is_prime(std::uint32_t p) noexcept;

  /// Primitive polynomial used for GF(2^m), as a bitmask including x^m.
  static std::uint32_t default_polynomial(int m);

  explicit Field(int m);
  /// Builds the field from an explicit polynomial; rejects anything that is
  /// not primitive of degree m.
  Field(int m, std::uint32_t polynomial);

  bool is_binary() const noexcept { return tables_->binary; }
  /// Extension degree m over the prime subfield (1 for prime fields).
  int degree() const noexcept { return tables_->m; }
  /// Reduction polynomial of GF(2^m); the modulus p for prime fields.
  std::uint32_t polynomial() const noexcept { return tables_->polynomial; }
  std::uint32_t characteristic() const noexcept { return tables_->binary ? 2u : tables_->q; }
  /// q = 2^m or p
  std::uint32_t size() const noexcept { return tables_->q; }
  /// Order of the multiplicative group, q - 1.
  std::uint32_t group_order() const noexcept { return tables_->q - 1; }
  /// Bits needed to store any element.
  int symbol_bits() const noexcept { return std::bit_width(tables_->q - 1); }
  /// Bits of raw data one element can carry: every value below 2^bits is an element.
  int data_bits() const noexcept { return std::bit_width(tables_->q) - 1; }

  bool contains(Element a) const noexcept { return a.value < tables_->q; }
  /// Checked conversion from a raw value.
  Element element(std::uint32_t value) const;

  static constexpr Element zero() noexcept { return Element{0}; }
  static constexpr Element one() noexcept { return Element{1}; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const { return sub(zero(), a); }
  Element mul(Element a, Element b) const;
  Element div(Element a, Element b) const;
  Element inv(Element a) const;
  /// a^e; negative exponents invert first. pow(0, 0) is 1.
  Element pow(Element a, std::int64_t e) const;

  /// The canonical primitive element: the class of x (value 0x2), 1 in
  /// GF(2), the smallest primitive root in GF(p).
  Element primitive_element() const noexcept;
  /// primitive_element()^e, exponent taken modulo q - 1.
  Element exp(std::int64_t e) const noexcept;
  /// Discrete log base the primitive element; a must be nonzero.
  std::uint32_t log(Element a) const;
  /// Element of multiplicative order exactly u: primitive^((q-1)/u).
  Element element_of_order(std::uint32_t u) const;
  std::uint32_t multiplicative_order(Element a) const;

  /// Full consistency check of the exp/log tables against table-free
  /// multiplication by the generator.
  bool verify_tables() const;

  /// Returns a copy whose antilog table has one entry flipped. Only used to
  /// prove that verify_tables() notices damage.
  Field with_corrupted_table_for_testing(std::size_t index) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.is_binary() == b.is_binary() && a.size() == b.size() && a.polynomial() == b.polynomial();
  }

 private:
  struct Tables {
    bool binary = true;
    int m = 0;
    std::uint32_t polynomial = 0;
    std::uint32_t q = 0;
    std::uint32_t generator = 2;  // primitive root for prime fields
    std::vector<std::uint16_t> exp;  // 2 * (q - 1) entries, avoids a modulo in mul
    std::vector<std::uint32_t> log;  // q entries, log[0] unused
  };

  explicit Field(std::shared_ptr<const Tables> tables) : tables_(std::move(tables)) {}
  std::uint32_t step(std::uint32_t x) const noexcept;
  void check(Element a) const;

  std::shared_ptr<const Tables> tables_;
};

/// Bitwise polynomial product of a and b reduced modulo poly (degree m).
/// Independent of the table machinery.
/// "GF(2^8)" or "GF(11)"
std::string to_string(const Field& f);

std::uint32_t carryless_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int m) noexcept;

}  // namespace mbrr
