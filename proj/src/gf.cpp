#include "mbrr/gf.hpp"

#include <array>
#include <numeric>
#include <string>

#include "mbrr/error.hpp"

namespace mbrr {

namespace {

// x^m + ... for m = 1..16; index 0 unused.
constexpr std::array<std::uint32_t, 17> kPrimitivePolynomials = {
    0x0,    0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,   0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

void check_degree(int m) {
  if (m < 1 || m > Field::kMaxDegree) {
    fail(ErrorCode::out_of_range,
         "field degree m=" + std::to_string(m) + " outside [1, 16]");
  }
}

}  // namespace

std::uint32_t carryless_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int m) noexcept {
  std::uint32_t result = 0;
  const std::uint32_t top = 1u << m;
  while (b != 0) {
    if (b & 1u) result ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= poly;
  }
  return result;
}

std::uint32_t Field::default_polynomial(int m) {
  check_degree(m);
  return kPrimitivePolynomials[static_cast<std::size_t>(m)];
}

Field::Field(int m) : Field(m, default_polynomial(m)) {}

Field::Field(int m, std::uint32_t polynomial) {
  check_degree(m);
  const std::uint32_t q = 1u << m;
  if ((polynomial >> m) != 1u) {
    fail(ErrorCode::invalid_argument, "polynomial is not of degree " + std::to_string(m));
  }
  auto t = std::make_shared<Tables>();
  t->m = m;
  t->polynomial = polynomial;
  t->q = q;
  const std::uint32_t order = q - 1;
  t->exp.assign(2 * static_cast<std::size_t>(order), 0);
  t->log.assign(q, 0);

  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    if (x == 1 && i != 0) {
      fail(ErrorCode::invalid_argument, "polynomial is not primitive (x has order " +
                                            std::to_string(i) + ")");
    }
    t->exp[i] = static_cast<std::uint16_t>(x);
    t->exp[i + order] = static_cast<std::uint16_t>(x);
    t->log[x] = i;
    x = carryless_mulmod(x, 2u, polynomial, m);
  }
  if (x != 1) {
    fail(ErrorCode::invalid_argument, "polynomial is not primitive");
  }
  tables_ = std::move(t);
}

void Field::check(Element a) const {
  if (!contains(a)) {
    fail(ErrorCode::field_mismatch, "element " + std::to_string(a.value) +
                                        " is not in GF(2^" + std::to_string(degree()) + ")");
  }
}

Element Field::element(std::uint32_t value) const {
  if (value >= size()) {
    fail(ErrorCode::field_mismatch,
         "value " + std::to_string(value) + " is not in GF(2^" + std::to_string(degree()) + ")");
  }
  return Element{static_cast<std::uint16_t>(value)};
}

Element Field::add(Element a, Element b) const {
  check(a);
  check(b);
  if (tables_->binary) return Element{static_cast<std::uint16_t>(a.value ^ b.value)};
  return Element{static_cast<std::uint16_t>((a.value + b.value) % tables_->q)};
}

Element Field::sub(Element a, Element b) const {
  check(a);
  check(b);
  if (tables_->binary) return Element{static_cast<std::uint16_t>(a.value ^ b.value)};
  return Element{static_cast<std::uint16_t>((a.value + tables_->q - b.value) % tables_->q)};
}

Element Field::mul(Element a, Element b) const {
  check(a);
  check(b);
  if (a.value == 0 || b.value == 0) return zero();
  const auto& t = *tables_;
  return Element{t.exp[t.log[a.value] + t.log[b.value]]};
}

Element Field::inv(Element a) const {
  check(a);
  if (a.value == 0) fail(ErrorCode::division_by_zero, "inverse of zero");
  const auto& t = *tables_;
  const std::uint32_t order = t.q - 1;
  return Element{t.exp[(order - t.log[a.value]) % order]};
}

Element Field::div(Element a, Element b) const {
  check(a);
  if (b.value == 0) fail(ErrorCode::division_by_zero, "division by zero");
  return mul(a, inv(b));
}

Element Field::pow(Element a, std::int64_t e) const {
  check(a);
  if (a.value == 0) {
    if (e < 0) fail(ErrorCode::division_by_zero, "negative power of zero");
    return e == 0 ? one() : zero();
  }
  const auto order = static_cast<std::int64_t>(group_order());
  std::int64_t reduced = e % order;
  if (reduced < 0) reduced += order;
  const std::int64_t l =
      (static_cast<std::int64_t>(tables_->log[a.value]) * reduced) % order;
  return Element{tables_->exp[static_cast<std::size_t>(l)]};
}

Element Field::primitive_element() const noexcept {
  return Element{tables_->exp[1 % group_order()]};
}

Element Field::exp(std::int64_t e) const noexcept {
  const auto order = static_cast<std::int64_t>(group_order());
  std::int64_t reduced = e % order;
  if (reduced < 0) reduced += order;
  return Element{tables_->exp[static_cast<std::size_t>(reduced)]};
}

std::uint32_t Field::log(Element a) const {
  check(a);
  if (a.value == 0) fail(ErrorCode::division_by_zero, "log of zero");
  return tables_->log[a.value];
}

Element Field::element_of_order(std::uint32_t u) const {
  if (u == 0 || group_order() % u != 0) {
    fail(ErrorCode::parameter_divisibility,
         "u=" + std::to_string(u) + " does not divide q-1=" + std::to_string(group_order()));
  }
  return exp(group_order() / u);
}

std::uint32_t Field::multiplicative_order(Element a) const {
  const std::uint32_t l = log(a);
  return group_order() / std::gcd(l, group_order());
}

bool Field::verify_tables() const {
  const auto& t = *tables_;
  const std::uint32_t order = t.q - 1;
  std::vector<bool> seen(t.q, false);
  for (std::uint32_t i = 0; i < order; ++i) {
    const std::uint32_t v = t.exp[i];
    if (v == 0 || v >= t.q || seen[v] || t.exp[i + order] != v || t.log[v] != i) return false;
    seen[v] = true;
    // exp[i+1] = exp[i] * generator, computed without tables
    if (t.exp[(i + 1) % order] != step(v)) return false;
  }
  return true;
}

bool Field::is_prime(std::uint32_t p) noexcept {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p == 2 || p > kMaxPrime || !is_prime(p)) {
    fail(ErrorCode::invalid_argument, std::to_string(p) + " is not an odd prime <= " + std::to_string(kMaxPrime));
  }
  auto t = std::make_shared<Tables>();
  t->binary = false;
  t->m = 1;
  t->q = p;
  const std::uint32_t order = p - 1;
  for (std::uint32_t g = 2; g < p; ++g) {
    // g is primitive iff its powers do not return to 1 before p - 1 steps
    std::uint32_t x = 1;
    std::uint32_t steps = 0;
    do {
      x = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * g) % p);
      ++steps;
    } while (x != 1);
    if (steps == order) {
      t->polynomial = p;
      t->generator = g;
      t->exp.assign(2 * static_cast<std::size_t>(order), 0);
      t->log.assign(p, 0);
      x = 1;
      for (std::uint32_t i = 0; i < order; ++i) {
        t->exp[i] = static_cast<std::uint16_t>(x);
        t->exp[i + order] = static_cast<std::uint16_t>(x);
        t->log[x] = i;
        x = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * g) % p);
      }
      return Field(std::move(t));
    }
  }
  fail(ErrorCode::invalid_argument, "no primitive root mod " + std::to_string(p));
}

std::uint32_t Field::step(std::uint32_t x) const noexcept {
  const auto& t = *tables_;
  if (t.binary) return carryless_mulmod(x, 2u, t.polynomial, t.m);
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * t.generator) % t.q);
}

Field Field::with_corrupted_table_for_testing(std::size_t index) const {
  auto copy = std::make_shared<Tables>(*tables_);
  auto& slot = copy->exp[index % copy->exp.size()];
  slot = static_cast<std::uint16_t>(slot ^ 1u);
  return Field(std::move(copy));
}

std::string to_string(const Field& f) {
  if (f.is_binary()) return "GF(2^" + std::to_string(f.degree()) + ")";
  return "GF(" + std::to_string(f.size()) + ")";
}

}  // namespace mbrr
