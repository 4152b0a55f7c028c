#include "cool/types.hpp"

#include <algorithm>

namespace cool {

namespace {
int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("invalid hex digit");
}
}  // namespace

MessageValue::MessageValue(std::vector<std::uint8_t> data, std::int64_t bits)
    : bytes(std::move(data)), bit_count(bits) {
  if (bits < 0) throw std::invalid_argument("negative bit count");
  bytes.resize(static_cast<std::size_t>((bits + 7) / 8), 0);
  // clear padding bits in the last byte
  if (bits % 8 != 0 && !bytes.empty()) {
    const int keep = static_cast<int>(bits % 8);
    bytes.back() &= static_cast<std::uint8_t>(0xFFu << (8 - keep));
  }
}

MessageValue MessageValue::zeros(std::int64_t bits) {
  return MessageValue(std::vector<std::uint8_t>(), bits);
}

MessageValue MessageValue::from_hex(const std::string& hex, std::int64_t bits) {
  std::vector<std::uint8_t> data;
  data.reserve((hex.size() + 1) / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_digit(hex[i]);
    int lo = (i + 1 < hex.size()) ? hex_digit(hex[i + 1]) : 0;
    data.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return MessageValue(std::move(data), bits);
}

MessageValue MessageValue::random(std::int64_t bits, Rng& rng) {
  std::vector<std::uint8_t> data(static_cast<std::size_t>((bits + 7) / 8));
  for (auto& b : data) b = static_cast<std::uint8_t>(rng.next() & 0xFFu);
  return MessageValue(std::move(data), bits);
}

bool MessageValue::bit(std::int64_t pos) const {
  if (pos < 0 || pos >= bit_count) throw std::out_of_range("bit position");
  return (bytes[static_cast<std::size_t>(pos / 8)] >> (7 - pos % 8)) & 1u;
}

void MessageValue::set_bit(std::int64_t pos, bool value) {
  if (pos < 0 || pos >= bit_count) throw std::out_of_range("bit position");
  const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - pos % 8));
  if (value)
    bytes[static_cast<std::size_t>(pos / 8)] |= mask;
  else
    bytes[static_cast<std::size_t>(pos / 8)] &= static_cast<std::uint8_t>(~mask);
}

std::string MessageValue::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

bool MessageValue::operator<(const MessageValue& o) const {
  if (bit_count != o.bit_count) return bit_count < o.bit_count;
  return std::lexicographical_compare(bytes.begin(), bytes.end(), o.bytes.begin(),
                                      o.bytes.end());
}

Rng Rng::fork(std::uint64_t tag) {
  return Rng(splitmix64(next() ^ splitmix64(tag)));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace cool
