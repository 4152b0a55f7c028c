#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "cool/codec.hpp"
#include "cool/message.hpp"
#include "cool/onebit.hpp"
#include "cool/params.hpp"

namespace cool {

enum class Phase { P1a, P1b, P2, P3, Obc, P4a, P4b, Done };

const char* phase_name(Phase p);

/// Deterministic majority over symbols: the most frequent value, ties
/// broken toward the lexicographically smallest serialized form.
std::optional<Symbol> majority_symbol(const std::vector<Symbol>& values);

/// One honest processor. Driven synchronously: on_round consumes the
/// previous round's delivery and emits this round's messages. The
/// schedule is
///
///   round 1            send coded pairs
///   round 2            link/success indicators from pairs; send s_i
///   round 3            build S1/S0; mask + update; send 1->0 transitions
///   round 4            apply transitions; mask + update; send transitions
///   round 5..5+3(t+1)-1  vote, then one-bit consensus rounds
///   round 5+3(t+1)     consensus output; if 1 and s_i = 0, send the
///                      majority-calibrated symbol to the other S0 members
///   round 6+3(t+1)     decode (S0) or keep (S1); output and stop
///
/// Participants default to [1:n]; the committee variant runs the same
/// machine over a subset, with all thresholds taken from the subset size.
class Processor {
 public:
  Processor(ProcId id, std::vector<ProcId> participants, CodeParams params,
            MessageValue input, ObcFactory obc_factory);

  std::vector<Message> on_round(const std::vector<Message>& delivered);

  bool done() const { return phase_ == Phase::Done; }
  /// Engaged once done; nullopt inside means the default output.
  const std::optional<MessageValue>& output() const { return output_; }

  ProcId id() const { return id_; }
  Phase phase() const { return phase_; }
  const CodeParams& params() const { return params_; }
  const std::vector<ProcId>& participants() const { return participants_; }
  int success_indicator() const { return s_; }
  int vote() const { return vote_; }
  const std::optional<MessageValue>& updated_message() const { return w_; }
  const MessageValue& initial_message() const { return input_; }
  bool link_indicator(ProcId j) const { return u_.at(index_of(j)) != 0; }
  std::set<ProcId> set_s1() const;
  std::set<ProcId> set_s0() const;
  const Symbol& own_symbol(ProcId j) const { return own_symbols_.at(index_of(j)); }

 private:
  std::size_t index_of(ProcId j) const;
  std::optional<std::size_t> find_index(ProcId j) const noexcept;
  int n() const { return static_cast<int>(participants_.size()); }
  std::vector<Message> indicator_broadcast(int value) const;
  /// Mask links of S0 members, re-evaluate the success threshold, and on
  /// a 1->0 transition clear the message and announce (phases 2 and 3).
  std::vector<Message> mask_and_update();
  void apply_zero_announcements(const std::vector<Message>& delivered);
  std::vector<Message> enter_phase4();
  void run_phase4_decode(const std::vector<Message>& delivered);
  void check_state() const;

  ProcId id_;
  std::vector<ProcId> participants_;
  CodeParams params_;
  MessageValue input_;
  ObcFactory obc_factory_;

  std::optional<MessageValue> w_;          // updated message; nullopt is the default value
  std::vector<Symbol> own_symbols_;        // y_j^(i) for every participant j
  std::map<ProcId, PairPayload> received_pairs_;
  std::vector<int> u_;                     // link indicators, by participant position
  int s_ = 1;                              // success indicator
  std::vector<int> s_view_;                // this processor's view of everyone's indicator
  int vote_ = 0;
  std::unique_ptr<OneBitConsensus> obc_;
  Symbol calibrated_own_;                  // y_i^(i) after the majority rule
  std::map<ProcId, Symbol> phase4_received_;
  Phase phase_ = Phase::P1a;
  std::optional<MessageValue> output_;
};

}  // namespace cool
