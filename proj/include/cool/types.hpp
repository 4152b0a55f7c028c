#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cool {

using ProcId = int;  // processor ids are 1-based

/// Thrown when the protocol reaches a state its analysis rules out
/// (e.g. an undecodable observation vector in an honest processor).
class ProtocolViolation : public std::runtime_error {
 public:
  explicit ProtocolViolation(const std::string& what) : std::runtime_error(what) {}
};

/// An ell-bit message, stored MSB-first in whole bytes.
/// Bits at positions >= bit_count are kept zero (normalized).
struct MessageValue {
  std::vector<std::uint8_t> bytes;
  std::int64_t bit_count = 0;

  MessageValue() = default;
  MessageValue(std::vector<std::uint8_t> data, std::int64_t bits);

  static MessageValue zeros(std::int64_t bits);
  static MessageValue from_hex(const std::string& hex, std::int64_t bits);
  static MessageValue random(std::int64_t bits, class Rng& rng);

  bool bit(std::int64_t pos) const;           // pos in [0, bit_count)
  void set_bit(std::int64_t pos, bool value);
  std::string to_hex() const;

  bool operator==(const MessageValue& o) const = default;
  bool operator<(const MessageValue& o) const;
};

/// Deterministic RNG. mt19937_64 is fully specified by the standard,
/// and we avoid std distributions (whose output is not), so a given
/// seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
  int bit() { return static_cast<int>(next() & 1u); }
  /// Derive an independent deterministic substream.
  Rng fork(std::uint64_t tag);

 private:
  std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cool
