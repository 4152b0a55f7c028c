#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "cool/codec.hpp"
#include "cool/types.hpp"

namespace cool {

/// Phase-1 pair: the symbol at the receiver's label and the sender's own.
struct PairPayload {
  Symbol for_receiver;  // y_j^(i), j = receiver
  Symbol own;           // y_i^(i), i = sender
};

/// A success indicator (phase 1 step 3, and 1->0 transitions later).
struct IndicatorPayload {
  int value = 0;
};

enum class ObcValue : std::uint8_t { kZero = 0, kOne = 1, kBottom = 2 };

/// One-bit-consensus traffic. Value rounds and proposal rounds carry a
/// ternary symbol (2 bits on the wire); king rounds carry a single bit.
struct ObcPayload {
  ObcValue value = ObcValue::kZero;
  bool king_round = false;
};

/// Phase-4 calibrated symbol, also reused for committee dissemination
/// (where is_default relays a default-value outcome).
struct SymbolPayload {
  Symbol value;
  bool is_default = false;
};

/// The leader's initial message in the broadcast setting.
struct InitPayload {
  MessageValue value;
};

using Payload = std::variant<PairPayload, IndicatorPayload, ObcPayload, SymbolPayload, InitPayload>;

enum class MsgKind { CodedPair, SuccessBit, ObcPayload, Phase4Symbol, LeaderInit };

struct Message {
  ProcId from = 0;
  ProcId to = 0;
  bool garbled = false;  // adversarial junk; honest code treats it permissively
  Payload payload;
  std::int64_t bit_size = 0;

  MsgKind kind() const { return static_cast<MsgKind>(payload.index()); }
};

const char* kind_name(MsgKind k);

Message make_pair_msg(ProcId from, ProcId to, Symbol for_receiver, Symbol own, int c_eff);
Message make_indicator_msg(ProcId from, ProcId to, int value);
Message make_obc_msg(ProcId from, ProcId to, ObcValue value, bool king_round);
Message make_symbol_msg(ProcId from, ProcId to, Symbol value, bool is_default, int c_eff);
Message make_init_msg(ProcId from, ProcId to, MessageValue value);

std::uint64_t payload_hash(const Message& msg);

}  // namespace cool
