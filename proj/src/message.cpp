#include "cool/message.hpp"

namespace cool {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void hash_bytes(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const std::uint8_t*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

void hash_u64(std::uint64_t& h, std::uint64_t v) { hash_bytes(h, &v, sizeof v); }

void hash_symbol(std::uint64_t& h, const Symbol& s) {
  hash_u64(h, s.stripes.size());
  for (FieldElem e : s.stripes) hash_u64(h, e);
}

}  // namespace

const char* kind_name(MsgKind k) {
  switch (k) {
    case MsgKind::CodedPair: return "coded_pair";
    case MsgKind::SuccessBit: return "success_bit";
    case MsgKind::ObcPayload: return "obc";
    case MsgKind::Phase4Symbol: return "phase4_symbol";
    case MsgKind::LeaderInit: return "leader_init";
  }
  return "?";
}

Message make_pair_msg(ProcId from, ProcId to, Symbol for_receiver, Symbol own, int c_eff) {
  return Message{from, to, false, PairPayload{std::move(for_receiver), std::move(own)},
                 2LL * c_eff};
}

Message make_indicator_msg(ProcId from, ProcId to, int value) {
  return Message{from, to, false, IndicatorPayload{value}, 1};
}

Message make_obc_msg(ProcId from, ProcId to, ObcValue value, bool king_round) {
  return Message{from, to, false, ObcPayload{value, king_round}, king_round ? 1 : 2};
}

Message make_symbol_msg(ProcId from, ProcId to, Symbol value, bool is_default, int c_eff) {
  return Message{from, to, false, SymbolPayload{std::move(value), is_default}, c_eff};
}

Message make_init_msg(ProcId from, ProcId to, MessageValue value) {
  const std::int64_t bits = value.bit_count;
  return Message{from, to, false, InitPayload{std::move(value)}, bits};
}

std::uint64_t payload_hash(const Message& msg) {
  std::uint64_t h = kFnvOffset;
  hash_u64(h, static_cast<std::uint64_t>(msg.payload.index()));
  hash_u64(h, static_cast<std::uint64_t>(msg.garbled));
  std::visit(
      [&h](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PairPayload>) {
          hash_symbol(h, p.for_receiver);
          hash_symbol(h, p.own);
        } else if constexpr (std::is_same_v<T, IndicatorPayload>) {
          hash_u64(h, static_cast<std::uint64_t>(p.value));
        } else if constexpr (std::is_same_v<T, ObcPayload>) {
          hash_u64(h, static_cast<std::uint64_t>(p.value));
          hash_u64(h, static_cast<std::uint64_t>(p.king_round));
        } else if constexpr (std::is_same_v<T, SymbolPayload>) {
          hash_symbol(h, p.value);
          hash_u64(h, static_cast<std::uint64_t>(p.is_default));
        } else if constexpr (std::is_same_v<T, InitPayload>) {
          hash_u64(h, static_cast<std::uint64_t>(p.value.bit_count));
          hash_bytes(h, p.value.bytes.data(), p.value.bytes.size());
        }
      },
      msg.payload);
  return h;
}

}  // namespace cool
