#include "cool/field.hpp"

#include <stdexcept>
#include <string>

namespace cool {

namespace {

// Shift-and-xor product modulo the reduction polynomial. Only used to
// build the tables; runtime multiplication goes through log/antilog.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int w) {
  std::uint32_t r = 0;
  const std::uint32_t high = 1u << w;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & high) a ^= poly;
  }
  return r;
}

}  // namespace

Field::Field(int width, std::uint32_t poly)
    : width_(width), order_(1u << width), poly_(poly), generator_(0) {
  const std::uint32_t period = order_ - 1;
  exp_.assign(2 * period, 0);
  log_.assign(order_, 0);

  // The reduction polynomial is irreducible but x need not generate the
  // multiplicative group, so search for a generator.
  for (std::uint32_t g = 2; g < order_ && generator_ == 0; ++g) {
    std::vector<bool> seen(order_, false);
    std::uint32_t x = 1;
    std::uint32_t i = 0;
    for (; i < period; ++i) {
      if (seen[x]) break;
      seen[x] = true;
      exp_[i] = static_cast<FieldElem>(x);
      log_[x] = i;
      x = slow_mul(x, g, poly_, width_);
    }
    if (i == period && x == 1) generator_ = static_cast<FieldElem>(g);
  }
  if (generator_ == 0) throw std::logic_error("no generator found; polynomial not primitive-compatible");
  for (std::uint32_t i = 0; i < period; ++i) exp_[period + i] = exp_[i];
}

const Field& Field::of(int width) {
  switch (width) {
    case 4: {
      static const Field f(4, 0x13);       // x^4 + x + 1
      return f;
    }
    case 8: {
      static const Field f(8, 0x11B);      // x^8 + x^4 + x^3 + x + 1
      return f;
    }
    case 16: {
      static const Field f(16, 0x1100B);   // x^16 + x^12 + x^3 + x + 1
      return f;
    }
    default:
      throw std::invalid_argument("unsupported field width " + std::to_string(width) +
                                  " (expected 4, 8 or 16)");
  }
}

FieldElem Field::inv(FieldElem a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
  const std::uint32_t period = order_ - 1;
  return exp_[period - log_[a]];
}

FieldElem Field::label(int i) const {
  if (i < 1 || static_cast<std::uint32_t>(i) > max_elem())
    throw std::invalid_argument("label " + std::to_string(i) + " out of range for GF(2^" +
                                std::to_string(width_) + ")");
  return static_cast<FieldElem>(i);
}

}  // namespace cool
