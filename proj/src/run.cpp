#include "cool/run.hpp"

#include <algorithm>
#include <stdexcept>

namespace cool {

namespace {

struct CoolOutcome {
  SimResult sim;
  std::map<ProcId, std::optional<MessageValue>> outputs;
  bool lemma3_ok = true;
  bool phase4_entry_ok = true;
};

void validate_roles(const std::map<ProcId, MessageValue>& honest_inputs,
                    const std::set<ProcId>& faulty, const std::vector<ProcId>& participants,
                    int t) {
  if (static_cast<int>(faulty.size()) > t)
    throw std::invalid_argument("faulty set exceeds t");
  for (ProcId f : faulty)
    if (!std::binary_search(participants.begin(), participants.end(), f))
      throw std::invalid_argument("faulty id outside the participant set");
  if (honest_inputs.size() + faulty.size() != participants.size())
    throw std::invalid_argument("every participant needs exactly one role");
  for (ProcId id : participants)
    if (!faulty.count(id) && !honest_inputs.count(id))
      throw std::invalid_argument("missing input for honest processor " + std::to_string(id));
}

// Drive one full agreement among `participants`, watching the two
// runtime invariants: at the end of phase 3 the honest non-default
// messages collapse to at most one value, and whenever phase 4 is
// entered at least t+1 honest processors share that value.
CoolOutcome run_cool(const std::map<ProcId, MessageValue>& honest_inputs, Adversary& adversary,
                     const CodeParams& params, const std::vector<ProcId>& participants,
                     const RunOptions& options) {
  validate_roles(honest_inputs, adversary.faulty(), participants, params.t);

  std::vector<std::unique_ptr<Processor>> machines;
  machines.reserve(honest_inputs.size());
  for (const auto& [id, input] : honest_inputs)
    machines.push_back(std::make_unique<Processor>(id, participants, params, input,
                                                   phase_king_factory()));
  std::vector<Processor*> procs;
  for (auto& m : machines) procs.push_back(m.get());

  CoolOutcome out;
  bool lemma3_checked = false;
  bool phase4_checked = false;
  auto probe = [&](int) {
    if (!lemma3_checked && std::all_of(procs.begin(), procs.end(), [](const Processor* p) {
          return p->phase() == Phase::Obc;
        })) {
      lemma3_checked = true;
      std::set<MessageValue> distinct;
      for (const Processor* p : procs) {
        if (p->updated_message()) distinct.insert(*p->updated_message());
        if ((p->success_indicator() == 0) != !p->updated_message()) out.lemma3_ok = false;
      }
      if (distinct.size() > 1) out.lemma3_ok = false;
    }
    if (!phase4_checked && std::any_of(procs.begin(), procs.end(), [](const Processor* p) {
          return p->phase() == Phase::P4b;
        })) {
      phase4_checked = true;
      std::map<MessageValue, int> counts;
      for (const Processor* p : procs)
        if (p->updated_message()) ++counts[*p->updated_message()];
      int best = 0;
      for (const auto& [v, c] : counts) best = std::max(best, c);
      if (best < params.t + 1) out.phase4_entry_ok = false;
    }
  };

  Rng rng(splitmix64(options.seed));
  SimOptions sim_options{options.round_limit, options.record_transcript};
  out.sim = run_rounds(procs, adversary, rng, honest_inputs, params, sim_options, probe);

  for (const Processor* p : procs)
    out.outputs[p->id()] = p->done() ? p->output() : std::nullopt;
  if (!out.sim.all_done) out.lemma3_ok = out.lemma3_ok && lemma3_checked;
  return out;
}

// Phase windows by round: 1 pairs, 2 indicators, 3-4 transitions,
// 3(t+1) consensus rounds, then the phase-4 exchange.
BitCounts split_bits(const SimResult& sim, const CodeParams& params, int n_participants) {
  BitCounts bits;
  const int np = n_participants;
  bits.b1 = 2LL * params.c * np * (np - 1);  // prescribed, not measured
  const int obc_first = 5;
  const int obc_last = 4 + 3 * (params.t + 1);
  for (int r = 2; r <= static_cast<int>(sim.bits_by_round.size()); ++r) {
    const std::int64_t v = sim.bits_by_round[static_cast<std::size_t>(r - 1)];
    if (r == 2) bits.b2 += v;
    else if (r == 3) bits.b3 += v;
    else if (r == 4) bits.b4 += v;
    else if (r >= obc_first && r <= obc_last) bits.obc_bits += v;
    else bits.b6 += v;
  }
  return bits;
}

RunFlags make_flags(const CoolOutcome& outcome, bool valid_applicable,
                    const std::optional<MessageValue>& reference) {
  RunFlags flags;
  flags.terminated = outcome.sim.all_done;
  flags.lemma3_ok = outcome.lemma3_ok;
  flags.phase4_entry_ok = outcome.phase4_entry_ok;
  flags.consistent = true;
  bool first = true;
  std::optional<MessageValue> common;
  for (const auto& [id, value] : outcome.outputs) {
    if (first) {
      common = value;
      first = false;
    } else if (value != common) {
      flags.consistent = false;
    }
  }
  flags.valid_applicable = valid_applicable;
  if (valid_applicable) {
    flags.valid_holds = flags.terminated && flags.consistent && !outcome.outputs.empty();
    for (const auto& [id, value] : outcome.outputs)
      if (value != reference) flags.valid_holds = false;
  }
  return flags;
}

void fill_params(RunRecord& rec, const CodeParams& p) {
  rec.n = p.n;
  rec.t = p.t;
  rec.ell = p.ell;
  rec.w = p.w;
  rec.k = p.k;
  rec.c = p.c;
  rec.m = p.m;
}

}  // namespace

RunRecord run_ba(const std::map<ProcId, MessageValue>& honest_inputs, Adversary& adversary,
                 const CodeParams& params, const RunOptions& options, Transcript* transcript) {
  std::vector<ProcId> participants(static_cast<std::size_t>(params.n));
  for (int i = 0; i < params.n; ++i) participants[static_cast<std::size_t>(i)] = i + 1;

  CoolOutcome outcome = run_cool(honest_inputs, adversary, params, participants, options);

  RunRecord rec;
  rec.mode = "ba";
  rec.adversary = adversary.name();
  rec.seed = options.seed;
  fill_params(rec, params);
  rec.rounds_total = outcome.sim.rounds;
  rec.bits = split_bits(outcome.sim, params, params.n);

  bool all_equal = true;
  const MessageValue* ref = nullptr;
  for (const auto& [id, input] : honest_inputs) {
    if (!ref) ref = &input;
    else if (!(input == *ref)) all_equal = false;
  }
  rec.flags = make_flags(outcome, all_equal, ref ? std::optional<MessageValue>(*ref) : std::nullopt);
  rec.outputs = std::move(outcome.outputs);
  if (transcript) *transcript = std::move(outcome.sim.transcript);
  return rec;
}

RunRecord run_bb(ProcId leader, const MessageValue& leader_value, Adversary& adversary,
                 const CodeParams& params, const RunOptions& options, Transcript* transcript) {
  if (leader < 1 || leader > params.n) throw std::invalid_argument("leader id out of range");
  const std::set<ProcId>& faulty = adversary.faulty();
  const bool leader_honest = !faulty.count(leader);

  std::vector<ProcId> participants(static_cast<std::size_t>(params.n));
  for (int i = 0; i < params.n; ++i) participants[static_cast<std::size_t>(i)] = i + 1;

  // Initial round: the leader hands every processor its input value.
  std::map<ProcId, MessageValue> inputs;
  Transcript leader_log;
  std::int64_t leader_bits = 0;
  if (leader_honest) {
    for (ProcId id : participants) {
      if (!faulty.count(id)) inputs.emplace(id, leader_value);
      if (id != leader) {
        Message m = make_init_msg(leader, id, leader_value);
        leader_bits += m.bit_size;
        leader_log.entries.push_back({0, leader, id, m.kind(), m.bit_size, payload_hash(m)});
      }
    }
  } else {
    Rng leader_rng(splitmix64(options.seed ^ 0xb0b0ULL));
    std::vector<const Processor*> no_views;
    std::vector<Message> no_pending;
    std::map<ProcId, MessageValue> no_inputs;
    AdversaryContext ctx{faulty, 0, no_views, no_inputs, no_pending, params, leader_rng};
    for (ProcId id : participants)
      if (!faulty.count(id)) inputs.emplace(id, MessageValue::zeros(params.ell));
    std::set<ProcId> served;
    for (Message& m : adversary.leader_round(ctx, leader)) {
      if (m.from != leader || m.kind() != MsgKind::LeaderInit) continue;
      if (faulty.count(m.to) || !served.insert(m.to).second) continue;
      auto it = inputs.find(m.to);
      if (it == inputs.end()) continue;
      const auto& payload = std::get<InitPayload>(m.payload);
      it->second = m.garbled || payload.value.bit_count != params.ell
                       ? MessageValue::zeros(params.ell)
                       : payload.value;
      leader_bits += m.bit_size;
      leader_log.entries.push_back({0, m.from, m.to, m.kind(), m.bit_size, payload_hash(m)});
    }
  }

  CoolOutcome outcome = run_cool(inputs, adversary, params, participants, options);

  RunRecord rec;
  rec.mode = "bb";
  rec.adversary = adversary.name();
  rec.seed = options.seed;
  fill_params(rec, params);
  rec.rounds_total = outcome.sim.rounds + 1;
  rec.bits = split_bits(outcome.sim, params, params.n);
  rec.bits.leader_bits = leader_bits;
  rec.flags = make_flags(outcome, leader_honest, leader_value);
  rec.outputs = std::move(outcome.outputs);

  if (transcript) {
    *transcript = std::move(leader_log);
    for (auto& e : outcome.sim.transcript.entries) transcript->entries.push_back(e);
  }
  return rec;
}

RunRecord run_ba_committee(const std::map<ProcId, MessageValue>& honest_inputs,
                           Adversary& adversary, int n, int t, std::int64_t ell, int w,
                           const RunOptions& options, Transcript* transcript) {
  const CommitteeSelection sel = committee_params(n, t, ell, w, options.committee_seed);
  const CodeParams& cp = sel.params;
  const std::set<ProcId>& faulty = adversary.faulty();

  std::map<ProcId, MessageValue> committee_inputs;
  for (ProcId id : sel.members)
    if (!faulty.count(id)) {
      const auto it = honest_inputs.find(id);
      if (it == honest_inputs.end())
        throw std::invalid_argument("missing input for honest committee member");
      committee_inputs.emplace(id, it->second);
    }

  // Stage 1: agreement inside the committee. The faulty ids outside the
  // committee stay idle; role validation happens against the committee.
  std::set<ProcId> committee_faulty;
  for (ProcId id : sel.members)
    if (faulty.count(id)) committee_faulty.insert(id);
  struct Restricted : Adversary {
    Adversary& inner;
    std::set<ProcId> subset;
    Restricted(Adversary& a, std::set<ProcId> s) : inner(a), subset(std::move(s)) {}
    std::string name() const override { return inner.name(); }
    const std::set<ProcId>& faulty() const override { return subset; }
    std::vector<Message> act(const AdversaryContext& ctx) override { return inner.act(ctx); }
  } restricted{adversary, committee_faulty};

  CoolOutcome outcome = run_cool(committee_inputs, restricted, cp, sel.members, options);

  RunRecord rec;
  rec.mode = "ba-committee";
  rec.adversary = adversary.name();
  rec.seed = options.seed;
  fill_params(rec, cp);
  rec.n = n;  // record the full network size; k/c/m are committee-derived
  rec.rounds_total = outcome.sim.rounds + 1;
  rec.bits = split_bits(outcome.sim, cp, static_cast<int>(sel.members.size()));
  rec.outputs = outcome.outputs;

  // Stage 2: committee members send outsiders one coded share each.
  std::vector<ProcId> outsiders;
  for (ProcId id = 1; id <= n; ++id)
    if (!std::binary_search(sel.members.begin(), sel.members.end(), id)) outsiders.push_back(id);

  const Field& field = Field::of(cp.w);
  std::map<ProcId, std::map<ProcId, SymbolPayload>> outsider_inbox;  // outsider -> sender -> payload
  auto accept = [&](const Message& m, Transcript* log, int round) {
    if (m.kind() != MsgKind::Phase4Symbol) return;
    if (!std::binary_search(sel.members.begin(), sel.members.end(), m.from)) return;
    if (std::binary_search(sel.members.begin(), sel.members.end(), m.to)) return;
    auto& slot = outsider_inbox[m.to];
    if (!slot.emplace(m.from, m.garbled ? SymbolPayload{Symbol::zeros(cp.m), false}
                                        : std::get<SymbolPayload>(m.payload))
             .second)
      return;
    rec.bits.dissemination_bits += m.bit_size;
    if (log) log->entries.push_back({round, m.from, m.to, m.kind(), m.bit_size, payload_hash(m)});
  };

  Transcript dissemination_log;
  Transcript* log = options.record_transcript ? &dissemination_log : nullptr;
  const int dissemination_round = outcome.sim.rounds + 1;
  for (const auto& [id, output] : outcome.outputs) {
    Symbol share = Symbol::zeros(cp.m);
    if (output) share = encode(field, stripe_message(*output, cp), id);
    for (ProcId j : outsiders)
      accept(make_symbol_msg(id, j, share, !output.has_value(), cp.c), log, dissemination_round);
  }
  {
    Rng adv_rng(splitmix64(options.seed ^ 0xd155ULL));
    std::vector<const Processor*> no_views;
    std::vector<Message> no_pending;
    AdversaryContext ctx{faulty, dissemination_round, no_views, honest_inputs, no_pending, cp,
                         adv_rng};
    for (const Message& m : adversary.disseminate(ctx, sel.members, outsiders))
      if (faulty.count(m.from)) accept(m, log, dissemination_round);
  }

  // Outsiders decode from the committee shares; a flag majority decides
  // whether the agreement landed on the default value.
  for (ProcId j : outsiders) {
    if (faulty.count(j)) continue;
    const auto& inbox = outsider_inbox[j];
    int defaults = 0, values = 0;
    for (const auto& [from, payload] : inbox) (payload.is_default ? defaults : values)++;
    if (defaults > values) {
      rec.outputs[j] = std::nullopt;
      continue;
    }
    std::vector<std::pair<int, Symbol>> observations;
    for (ProcId member : sel.members) {
      Symbol v = Symbol::zeros(cp.m);
      const auto it = inbox.find(member);
      if (it != inbox.end() && !it->second.is_default &&
          it->second.value.stripes.size() == static_cast<std::size_t>(cp.m))
        v = it->second.value;
      observations.emplace_back(member, std::move(v));
    }
    const auto block = decode(field, observations, cp.k, cp.t);
    if (!block)
      throw ProtocolViolation("committee dissemination decode failed at processor " +
                              std::to_string(j));
    rec.outputs[j] = unstripe_message(*block, cp);
  }

  bool all_equal = true;
  const MessageValue* ref = nullptr;
  for (const auto& [id, input] : honest_inputs) {
    if (!ref) ref = &input;
    else if (!(input == *ref)) all_equal = false;
  }
  CoolOutcome merged;
  merged.sim.all_done = outcome.sim.all_done;
  merged.outputs = rec.outputs;
  merged.lemma3_ok = outcome.lemma3_ok;
  merged.phase4_entry_ok = outcome.phase4_entry_ok;
  rec.flags =
      make_flags(merged, all_equal, ref ? std::optional<MessageValue>(*ref) : std::nullopt);

  if (transcript) {
    *transcript = std::move(outcome.sim.transcript);
    for (auto& e : dissemination_log.entries) transcript->entries.push_back(e);
  }
  return rec;
}

}  // namespace cool
