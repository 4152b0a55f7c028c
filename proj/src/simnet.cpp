#include "cool/simnet.hpp"

#include <algorithm>
#include <tuple>

namespace cool {

void Transcript::write(std::ostream& os) const {
  for (const auto& e : entries)
    os << e.round << ' ' << e.from << ' ' << e.to << ' ' << kind_name(e.kind) << ' '
       << e.bit_size << ' ' << e.payload_hash << '\n';
}

const Processor* AdversaryContext::processor(ProcId id) const {
  for (const Processor* p : processors)
    if (p->id() == id) return p;
  return nullptr;
}

std::vector<Message> Adversary::leader_round(const AdversaryContext&, ProcId) { return {}; }

std::vector<Message> Adversary::disseminate(const AdversaryContext&, const std::vector<ProcId>&,
                                            const std::vector<ProcId>&) {
  return {};
}

SimResult run_rounds(std::vector<Processor*>& processors, Adversary& adversary, Rng& rng,
                     const std::map<ProcId, MessageValue>& initial_messages,
                     const CodeParams& params, const SimOptions& options,
                     const std::function<void(int)>& after_round) {
  const int limit = options.round_limit > 0 ? options.round_limit : 20 * (params.t + 2);
  const std::set<ProcId>& faulty = adversary.faulty();

  std::vector<const Processor*> views(processors.begin(), processors.end());
  SimResult result;
  std::vector<Message> pending;

  for (int round = 1; round <= limit; ++round) {
    // Deliver last round's traffic, grouped per recipient.
    std::map<ProcId, std::vector<Message>> inbox;
    for (Message& m : pending) inbox[m.to].push_back(std::move(m));
    pending.clear();

    std::vector<Message> honest_out;
    for (Processor* p : processors) {
      if (p->done()) continue;
      auto out = p->on_round(inbox[p->id()]);
      honest_out.insert(honest_out.end(), std::make_move_iterator(out.begin()),
                        std::make_move_iterator(out.end()));
    }

    // The adversary rushes: it inspects all honest messages of the
    // current round before emitting its own.
    AdversaryContext ctx{faulty, round, views, initial_messages, honest_out, params, rng};
    std::vector<Message> adv_out = adversary.act(ctx);
    std::erase_if(adv_out, [&](const Message& m) { return !faulty.count(m.from); });

    std::set<std::tuple<ProcId, ProcId, int>> slots;
    auto accept = [&](std::vector<Message>& batch) {
      for (Message& m : batch) {
        if (!slots.insert({m.from, m.to, static_cast<int>(m.kind())}).second) continue;
        result.bits_by_round.back() += m.bit_size;
        if (options.record_transcript)
          result.transcript.entries.push_back(
              {round, m.from, m.to, m.kind(), m.bit_size, payload_hash(m)});
        pending.push_back(std::move(m));
      }
    };
    result.bits_by_round.push_back(0);
    accept(honest_out);
    accept(adv_out);

    result.rounds = round;
    if (after_round) after_round(round);
    if (std::all_of(processors.begin(), processors.end(),
                    [](const Processor* p) { return p->done(); })) {
      result.all_done = true;
      break;
    }
  }
  return result;
}

}  // namespace cool
