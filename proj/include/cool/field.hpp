#pragma once

#include <cstdint>
#include <vector>

namespace cool {

using FieldElem = std::uint16_t;

/// GF(2^w) arithmetic over log/antilog tables, for w in {4, 8, 16}.
///
/// Reduction polynomials are fixed per width:
///   w=4  -> x^4 + x + 1
///   w=8  -> x^8 + x^4 + x^3 + x + 1
///   w=16 -> x^16 + x^12 + x^3 + x + 1
///
/// Tables are built once per width; all operations afterwards are
/// pure reads, so a Field is safe to share across threads.
class Field {
 public:
  static const Field& of(int width);

  int width() const { return width_; }
  std::uint32_t order() const { return order_; }          // 2^w
  std::uint32_t max_elem() const { return order_ - 1; }   // 2^w - 1

  static FieldElem add(FieldElem a, FieldElem b) { return a ^ b; }
  static FieldElem sub(FieldElem a, FieldElem b) { return a ^ b; }

  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  /// Multiplicative inverse; inv(0) is a domain error.
  FieldElem inv(FieldElem a) const;

  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  /// Integer label -> field element (the binary representation map).
  /// Valid for 1 <= label <= 2^w - 1; injective on that range.
  FieldElem label(int i) const;

 private:
  Field(int width, std::uint32_t poly);

  int width_;
  std::uint32_t order_;
  std::uint32_t poly_;
  FieldElem generator_;
  std::vector<FieldElem> exp_;   // 2*(order-1) entries, doubled to skip a modulo
  std::vector<std::uint32_t> log_;
};

}  // namespace cool
