#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cool/engine.hpp"
#include "cool/message.hpp"

namespace cool {

struct TranscriptEntry {
  int round = 0;
  ProcId from = 0;
  ProcId to = 0;
  MsgKind kind{};
  std::int64_t bit_size = 0;
  std::uint64_t payload_hash = 0;
};

/// Line-delimited audit log: one record per delivered message.
struct Transcript {
  std::vector<TranscriptEntry> entries;
  void write(std::ostream& os) const;
};

/// Everything a full-information rushing adversary gets to see before
/// choosing its messages for the round: all honest state, all initial
/// messages, and the honest messages already sent this round.
struct AdversaryContext {
  const std::set<ProcId>& faulty;
  int round;
  const std::vector<const Processor*>& processors;  // honest machines
  const std::map<ProcId, MessageValue>& initial_messages;
  const std::vector<Message>& pending_honest;
  const CodeParams& params;
  Rng& rng;

  const Processor* processor(ProcId id) const;
};

/// A Byzantine strategy. Faulty processors are not state machines; the
/// strategy emits raw messages on their behalf (possibly none).
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual const std::set<ProcId>& faulty() const = 0;

  /// Messages from faulty senders for this round. Senders outside the
  /// faulty set are discarded by the simulator.
  virtual std::vector<Message> act(const AdversaryContext& ctx) = 0;

  /// Broadcast-setting hook: the initial messages a faulty leader sends
  /// (defaults to silence, i.e. every processor falls back to zeros).
  virtual std::vector<Message> leader_round(const AdversaryContext& ctx, ProcId leader);

  /// Committee-variant hook: what faulty committee members send to
  /// non-members during dissemination (defaults to silence).
  virtual std::vector<Message> disseminate(const AdversaryContext& ctx,
                                           const std::vector<ProcId>& committee,
                                           const std::vector<ProcId>& outsiders);
};

struct SimOptions {
  int round_limit = 0;  // 0 -> 20*(t+2)
  bool record_transcript = true;
};

struct SimResult {
  int rounds = 0;
  bool all_done = false;
  std::vector<std::int64_t> bits_by_round;  // index r-1 = bits sent in round r
  Transcript transcript;
};

/// Synchronous round loop with reliable private channels: messages sent
/// in round r are delivered, unaltered and exactly once, at the start
/// of round r+1; the adversary reads everything and may inject
/// arbitrary messages from faulty senders. At most one message per
/// (round, sender, receiver, kind) is delivered; extras are dropped.
SimResult run_rounds(std::vector<Processor*>& processors, Adversary& adversary, Rng& rng,
                     const std::map<ProcId, MessageValue>& initial_messages,
                     const CodeParams& params, const SimOptions& options,
                     const std::function<void(int)>& after_round = {});

}  // namespace cool
