#pragma once

#include <map>
#include <optional>

#include "cool/attacks.hpp"
#include "cool/metrics.hpp"
#include "cool/simnet.hpp"

namespace cool {

struct RunOptions {
  std::uint64_t seed = 0;
  int round_limit = 0;       // 0 -> 20*(t+2)
  bool record_transcript = false;
  std::optional<std::uint64_t> committee_seed;  // nullopt -> ids [1:3t+1]
};

/// One agreement execution: honest_inputs keyed by honest id, the
/// adversary owning the (at most t) remaining ids.
RunRecord run_ba(const std::map<ProcId, MessageValue>& honest_inputs, Adversary& adversary,
                 const CodeParams& params, const RunOptions& options,
                 Transcript* transcript = nullptr);

/// Broadcast execution: one initial round in which the leader hands out
/// the value (a faulty leader may equivocate or stay silent; silence
/// falls back to an all-zero message), then the agreement protocol.
RunRecord run_bb(ProcId leader, const MessageValue& leader_value, Adversary& adversary,
                 const CodeParams& params, const RunOptions& options,
                 Transcript* transcript = nullptr);

/// Small-t variant: agreement among a committee of 3t+1, then one
/// dissemination round in which each committee member sends outsiders
/// its coded share of the agreed value. Requires n > 3t+1.
RunRecord run_ba_committee(const std::map<ProcId, MessageValue>& honest_inputs,
                           Adversary& adversary, int n, int t, std::int64_t ell, int w,
                           const RunOptions& options, Transcript* transcript = nullptr);

}  // namespace cool
