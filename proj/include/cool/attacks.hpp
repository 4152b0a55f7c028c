#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cool/simnet.hpp"

namespace cool {

/// For a set of fewer than k collision ids, build M2 != M1 whose
/// encodings agree with M1's at every collision id: stack the ids'
/// coefficient rows, take a nonzero null-space vector and add it to one
/// stripe of the data columns. With an empty id set any differing
/// message qualifies. Throws std::invalid_argument when |ids| >= k (the
/// stacked rows have full column rank) or when the message is too short
/// to absorb the perturbation inside its ell bits.
std::pair<MessageValue, MessageValue> craft_colliding_messages(
    const CodeParams& params, const std::set<ProcId>& collision_ids, const MessageValue& base);

/// Shared behavior for the attack strategies: faulty-set bookkeeping, a
/// seeded stream, the round schedule of the protocol, and a split-value
/// default for a dishonest broadcast leader.
class StrategyBase : public Adversary {
 public:
  StrategyBase(std::set<ProcId> faulty, std::uint64_t seed);
  const std::set<ProcId>& faulty() const override { return faulty_; }
  std::vector<Message> leader_round(const AdversaryContext& ctx, ProcId leader) override;

 protected:
  enum class Slot { PairExchange, IndicatorExchange, Transitions2, Transitions3, ObcValue, ObcProposal, ObcKing, Phase4, Idle };

  /// Which protocol step the given simulation round carries.
  static Slot slot_of(const AdversaryContext& ctx, int round);
  static std::vector<ProcId> honest_ids(const AdversaryContext& ctx);
  static ProcId obc_king(const AdversaryContext& ctx, int round);
  Symbol random_symbol(int m);

  std::set<ProcId> faulty_;
  Rng rng_;
};

/// Sends nothing, ever.
class SilentAdversary : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  std::string name() const override { return "silent"; }
  std::vector<Message> act(const AdversaryContext&) override { return {}; }
};

/// Well-formed but uniformly random payloads in every slot.
class RandomAdversary : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  std::string name() const override { return "random"; }
  std::vector<Message> act(const AdversaryContext& ctx) override;
  std::vector<Message> disseminate(const AdversaryContext& ctx,
                                   const std::vector<ProcId>& committee,
                                   const std::vector<ProcId>& outsiders) override;
};

/// Garbage coded pairs plus contradictory indicators and votes, aimed
/// at out-running the decoder's correction capacity.
class ValidityAttack : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  std::string name() const override { return "validity"; }
  std::vector<Message> act(const AdversaryContext& ctx) override;
};

/// The two-group split: one honest group holds M1, the other a crafted
/// M2 whose encodings collide at chosen ids, and the faulty processors
/// feed each group symbols consistent with its own message while
/// claiming success everywhere.
struct ConsistencyTopology {
  MessageValue m1;
  MessageValue m2;
  std::vector<ProcId> group_a1;  // holds m1, size >= t+1
  std::vector<ProcId> group_a2;  // holds m2, size t
  std::set<ProcId> collision_ids;
};

/// Default split for an n >= 3t+1 run: A2 = [t+2 : 2t+1], faulty =
/// last t ids, A1 = the remaining honest ids, collisions at {1, t+2}
/// trimmed to at most k-1 ids.
ConsistencyTopology build_consistency_topology(const CodeParams& params, const MessageValue& m1);

class ConsistencyAttack : public StrategyBase {
 public:
  ConsistencyAttack(std::set<ProcId> faulty, std::uint64_t seed, ConsistencyTopology topology,
                    const CodeParams& params);
  std::string name() const override { return "consistency"; }
  std::vector<Message> act(const AdversaryContext& ctx) override;

 private:
  ConsistencyTopology topology_;
  std::vector<Symbol> enc_m1_, enc_m2_;  // symbols per label 1..n
};

/// Tells half the honest processors "success", the other half
/// "failure", and votes both ways, to split the S1/S0 views.
class IndicatorEquivocator : public StrategyBase {
 public:
  using StrategyBase::StrategyBase;
  std::string name() const override { return "equivocator"; }
  std::vector<Message> act(const AdversaryContext& ctx) override;
};

const std::vector<std::string>& adversary_names();

/// Build a strategy by name. For "consistency" the topology (and with
/// it the honest input assignment) is derived from base_input; the
/// caller applies assigned_inputs to the processors.
std::unique_ptr<Adversary> make_adversary(const std::string& name, const CodeParams& params,
                                          std::set<ProcId> faulty, std::uint64_t seed,
                                          const MessageValue& base_input,
                                          std::map<ProcId, MessageValue>* assigned_inputs);

}  // namespace cool
