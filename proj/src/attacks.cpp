#include "cool/attacks.hpp"

#include <algorithm>
#include <stdexcept>

namespace cool {

namespace {

// Reduced row echelon form of rows (each of size k); returns pivot
// columns. Used to pull one nonzero vector out of the null space.
std::vector<int> rref(const Field& f, std::vector<std::vector<FieldElem>>& rows) {
  std::vector<int> pivots;
  const int k = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  std::size_t r = 0;
  for (int c = 0; c < k && r < rows.size(); ++c) {
    std::size_t pr = r;
    while (pr < rows.size() && rows[pr][static_cast<std::size_t>(c)] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[pr], rows[r]);
    const FieldElem inv = f.inv(rows[r][static_cast<std::size_t>(c)]);
    for (auto& v : rows[r]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const FieldElem factor = rows[i][static_cast<std::size_t>(c)];
      if (factor == 0) continue;
      for (int j = 0; j < k; ++j)
        rows[i][static_cast<std::size_t>(j)] = Field::add(
            rows[i][static_cast<std::size_t>(j)], f.mul(factor, rows[r][static_cast<std::size_t>(j)]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::pair<MessageValue, MessageValue> craft_colliding_messages(const CodeParams& params,
                                                               const std::set<ProcId>& collision_ids,
                                                               const MessageValue& base) {
  if (base.bit_count != params.ell)
    throw std::invalid_argument("base message length does not match params.ell");
  if (static_cast<int>(collision_ids.size()) >= params.k)
    throw std::invalid_argument(
        "infeasible: with k or more collision ids the coefficient rows have full column rank");

  if (collision_ids.empty()) {
    MessageValue m2 = base;
    m2.set_bit(0, !m2.bit(0));
    return {base, m2};
  }

  const Field& field = Field::of(params.w);
  std::vector<std::vector<FieldElem>> rows;
  for (ProcId id : collision_ids) rows.push_back(lagrange_vector(field, id, params.k).coeffs);

  const std::vector<int> pivots = rref(field, rows);
  int free_col = -1;
  for (int c = 0; c < params.k && free_col < 0; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_col = c;
  // |ids| < k guarantees a free column
  std::vector<FieldElem> null_vec(static_cast<std::size_t>(params.k), 0);
  null_vec[static_cast<std::size_t>(free_col)] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    null_vec[static_cast<std::size_t>(pivots[r])] = rows[r][static_cast<std::size_t>(free_col)];

  // Pick a stripe whose perturbed bit windows all land inside the real
  // ell bits, so both messages remain valid ell-bit inputs.
  int stripe = -1;
  for (int s = 0; s < params.m && stripe < 0; ++s) {
    bool fits = true;
    for (int j = 1; j <= params.k; ++j) {
      if (null_vec[static_cast<std::size_t>(j - 1)] == 0) continue;
      const std::int64_t window_end =
          static_cast<std::int64_t>(j - 1) * params.c + static_cast<std::int64_t>(s + 1) * params.w;
      if (window_end > params.ell) fits = false;
    }
    if (fits) stripe = s;
  }
  if (stripe < 0)
    throw std::invalid_argument("message too short to embed the collision perturbation");

  MessageBlock block = stripe_message(base, params);
  for (int j = 1; j <= params.k; ++j)
    block.cell(j, stripe) = Field::add(block.cell(j, stripe), null_vec[static_cast<std::size_t>(j - 1)]);
  return {base, unstripe_message(block, params)};
}

StrategyBase::StrategyBase(std::set<ProcId> faulty, std::uint64_t seed)
    : faulty_(std::move(faulty)), rng_(splitmix64(seed ^ 0x5eedf00dULL)) {}

StrategyBase::Slot StrategyBase::slot_of(const AdversaryContext& ctx, int round) {
  const int t = ctx.params.t;
  const int obc_first = 5;
  const int obc_last = 4 + 3 * (t + 1);
  if (round == 1) return Slot::PairExchange;
  if (round == 2) return Slot::IndicatorExchange;
  if (round == 3) return Slot::Transitions2;
  if (round == 4) return Slot::Transitions3;
  if (round >= obc_first && round <= obc_last) {
    switch ((round - obc_first) % 3) {
      case 0: return Slot::ObcValue;
      case 1: return Slot::ObcProposal;
      default: return Slot::ObcKing;
    }
  }
  if (round == obc_last + 1) return Slot::Phase4;
  return Slot::Idle;
}

std::vector<ProcId> StrategyBase::honest_ids(const AdversaryContext& ctx) {
  std::vector<ProcId> out;
  out.reserve(ctx.processors.size());
  for (const Processor* p : ctx.processors) out.push_back(p->id());
  return out;
}

ProcId StrategyBase::obc_king(const AdversaryContext& ctx, int round) {
  const int phase = (round - 5) / 3;
  if (ctx.processors.empty()) return 0;
  const auto& participants = ctx.processors.front()->participants();
  if (phase < 0 || phase >= static_cast<int>(participants.size())) return 0;
  return participants[static_cast<std::size_t>(phase)];
}

Symbol StrategyBase::random_symbol(int m) {
  Symbol s = Symbol::zeros(m);
  for (auto& e : s.stripes) e = static_cast<FieldElem>(rng_.next() & 0xFFFFu);
  return s;
}

std::vector<Message> StrategyBase::leader_round(const AdversaryContext& ctx, ProcId leader) {
  // Split-value leader: one half of the processors gets one message,
  // the other half a different one.
  MessageValue v1 = MessageValue::random(ctx.params.ell, rng_);
  MessageValue v2 = MessageValue::random(ctx.params.ell, rng_);
  if (v2 == v1 && ctx.params.ell > 0) v2.set_bit(0, !v2.bit(0));
  std::vector<Message> out;
  bool flip = false;
  for (ProcId id = 1; id <= ctx.params.n; ++id) {
    if (ctx.faulty.count(id)) continue;
    out.push_back(make_init_msg(leader, id, flip ? v2 : v1));
    flip = !flip;
  }
  return out;
}

std::vector<Message> RandomAdversary::act(const AdversaryContext& ctx) {
  std::vector<Message> out;
  const auto honest = honest_ids(ctx);
  const int m = ctx.params.m;
  for (ProcId f : faulty_) {
    for (ProcId j : honest) {
      switch (slot_of(ctx, ctx.round)) {
        case Slot::PairExchange:
          out.push_back(make_pair_msg(f, j, random_symbol(m), random_symbol(m), ctx.params.c));
          break;
        case Slot::IndicatorExchange:
          out.push_back(make_indicator_msg(f, j, rng_.bit()));
          break;
        case Slot::Transitions2:
        case Slot::Transitions3:
          if (rng_.bit()) out.push_back(make_indicator_msg(f, j, rng_.bit()));
          break;
        case Slot::ObcValue:
        case Slot::ObcProposal:
          out.push_back(make_obc_msg(f, j, static_cast<ObcValue>(rng_.below(3)), false));
          break;
        case Slot::ObcKing:
          if (obc_king(ctx, ctx.round) == f)
            out.push_back(make_obc_msg(f, j, rng_.bit() ? ObcValue::kOne : ObcValue::kZero, true));
          break;
        case Slot::Phase4:
          out.push_back(make_symbol_msg(f, j, random_symbol(m), false, ctx.params.c));
          break;
        case Slot::Idle:
          break;
      }
    }
  }
  return out;
}

std::vector<Message> RandomAdversary::disseminate(const AdversaryContext& ctx,
                                                  const std::vector<ProcId>& committee,
                                                  const std::vector<ProcId>& outsiders) {
  std::vector<Message> out;
  for (ProcId f : faulty_) {
    if (!std::binary_search(committee.begin(), committee.end(), f)) continue;
    for (ProcId j : outsiders)
      out.push_back(make_symbol_msg(f, j, random_symbol(ctx.params.m),
                                    rng_.bit() != 0, ctx.params.c));
  }
  return out;
}

std::vector<Message> ValidityAttack::act(const AdversaryContext& ctx) {
  std::vector<Message> out;
  const auto honest = honest_ids(ctx);
  const int m = ctx.params.m;
  for (ProcId f : faulty_) {
    bool half = false;
    for (ProcId j : honest) {
      half = !half;
      switch (slot_of(ctx, ctx.round)) {
        case Slot::PairExchange:
          out.push_back(make_pair_msg(f, j, random_symbol(m), random_symbol(m), ctx.params.c));
          break;
        case Slot::IndicatorExchange:
          out.push_back(make_indicator_msg(f, j, half ? 1 : 0));
          break;
        case Slot::Transitions2:
        case Slot::Transitions3:
          if (!half) out.push_back(make_indicator_msg(f, j, 0));
          break;
        case Slot::ObcValue:
          out.push_back(make_obc_msg(f, j, half ? ObcValue::kOne : ObcValue::kZero, false));
          break;
        case Slot::ObcProposal:
          out.push_back(make_obc_msg(f, j, half ? ObcValue::kOne : ObcValue::kBottom, false));
          break;
        case Slot::ObcKing:
          if (obc_king(ctx, ctx.round) == f)
            out.push_back(make_obc_msg(f, j, half ? ObcValue::kOne : ObcValue::kZero, true));
          break;
        case Slot::Phase4:
          out.push_back(make_symbol_msg(f, j, random_symbol(m), false, ctx.params.c));
          break;
        case Slot::Idle:
          break;
      }
    }
  }
  return out;
}

ConsistencyTopology build_consistency_topology(const CodeParams& params,
                                               const MessageValue& m1) {
  const int t = params.t;
  if (t < 1) throw std::invalid_argument("the consistency split needs t >= 1");
  ConsistencyTopology topo;
  std::set<ProcId> collisions;
  if (params.k >= 2) collisions.insert(1);
  if (params.k >= 3) collisions.insert(t + 2);
  // Degrade to fewer collision ids when the message is too short to
  // absorb the null-space perturbation; the split stays adversarial
  // either way, the collisions only sharpen it.
  for (;;) {
    try {
      auto [a, b] = craft_colliding_messages(params, collisions, m1);
      topo.m1 = std::move(a);
      topo.m2 = std::move(b);
      break;
    } catch (const std::invalid_argument&) {
      if (collisions.empty()) throw;
      collisions.erase(std::prev(collisions.end()));
    }
  }
  topo.collision_ids = std::move(collisions);
  for (ProcId id = t + 2; id <= 2 * t + 1; ++id) topo.group_a2.push_back(id);
  for (ProcId id = 1; id <= params.n - t; ++id)
    if (id < t + 2 || id > 2 * t + 1) topo.group_a1.push_back(id);
  return topo;
}

ConsistencyAttack::ConsistencyAttack(std::set<ProcId> faulty, std::uint64_t seed,
                                     ConsistencyTopology topology, const CodeParams& params)
    : StrategyBase(std::move(faulty), seed), topology_(std::move(topology)) {
  if (static_cast<int>(topology_.group_a2.size()) != params.t ||
      static_cast<int>(topology_.group_a1.size()) + params.t + static_cast<int>(faulty_.size()) !=
          params.n)
    throw std::invalid_argument("consistency attack needs the two-group split topology");
  const Field& field = Field::of(params.w);
  const MessageBlock b1 = stripe_message(topology_.m1, params);
  const MessageBlock b2 = stripe_message(topology_.m2, params);
  enc_m1_.reserve(static_cast<std::size_t>(params.n));
  enc_m2_.reserve(static_cast<std::size_t>(params.n));
  for (int i = 1; i <= params.n; ++i) {
    enc_m1_.push_back(encode(field, b1, i));
    enc_m2_.push_back(encode(field, b2, i));
  }
}

std::vector<Message> ConsistencyAttack::act(const AdversaryContext& ctx) {
  std::vector<Message> out;
  auto in_a2 = [&](ProcId j) {
    return std::find(topology_.group_a2.begin(), topology_.group_a2.end(), j) !=
           topology_.group_a2.end();
  };
  for (ProcId f : faulty_) {
    for (const Processor* p : ctx.processors) {
      const ProcId j = p->id();
      switch (slot_of(ctx, ctx.round)) {
        case Slot::PairExchange: {
          // Group A1 sees symbols of M1, group A2 symbols of M2.
          const auto& enc = in_a2(j) ? enc_m2_ : enc_m1_;
          out.push_back(make_pair_msg(f, j, enc[static_cast<std::size_t>(j - 1)],
                                      enc[static_cast<std::size_t>(f - 1)], ctx.params.c));
          break;
        }
        case Slot::IndicatorExchange:
          out.push_back(make_indicator_msg(f, j, 1));  // claim success everywhere
          break;
        case Slot::ObcValue:
        case Slot::ObcProposal:
          out.push_back(make_obc_msg(f, j, ObcValue::kOne, false));
          break;
        case Slot::ObcKing:
          if (obc_king(ctx, ctx.round) == f)
            out.push_back(make_obc_msg(f, j, ObcValue::kOne, true));
          break;
        default:
          break;
      }
    }
  }
  return out;
}

std::vector<Message> IndicatorEquivocator::act(const AdversaryContext& ctx) {
  std::vector<Message> out;
  if (ctx.processors.empty()) return out;
  // Pose as holding the first honest processor's message, then split
  // every indicator and vote by recipient parity.
  const MessageValue& pose = ctx.initial_messages.begin()->second;
  const Field& field = Field::of(ctx.params.w);
  const MessageBlock block = stripe_message(pose, ctx.params);
  for (ProcId f : faulty_) {
    for (const Processor* p : ctx.processors) {
      const ProcId j = p->id();
      const bool half = j % 2 == 0;
      switch (slot_of(ctx, ctx.round)) {
        case Slot::PairExchange:
          out.push_back(make_pair_msg(f, j, encode(field, block, j), encode(field, block, f),
                                      ctx.params.c));
          break;
        case Slot::IndicatorExchange:
          out.push_back(make_indicator_msg(f, j, half ? 0 : 1));
          break;
        case Slot::Transitions2:
        case Slot::Transitions3:
          if (half) out.push_back(make_indicator_msg(f, j, 0));
          break;
        case Slot::ObcValue:
        case Slot::ObcProposal:
          out.push_back(make_obc_msg(f, j, half ? ObcValue::kZero : ObcValue::kOne, false));
          break;
        case Slot::ObcKing:
          if (obc_king(ctx, ctx.round) == f)
            out.push_back(make_obc_msg(f, j, half ? ObcValue::kZero : ObcValue::kOne, true));
          break;
        default:
          break;
      }
    }
  }
  return out;
}

const std::vector<std::string>& adversary_names() {
  static const std::vector<std::string> names = {"silent", "random", "validity", "consistency",
                                                 "equivocator"};
  return names;
}

std::unique_ptr<Adversary> make_adversary(const std::string& name, const CodeParams& params,
                                          std::set<ProcId> faulty, std::uint64_t seed,
                                          const MessageValue& base_input,
                                          std::map<ProcId, MessageValue>* assigned_inputs) {
  if (name == "silent") return std::make_unique<SilentAdversary>(std::move(faulty), seed);
  if (name == "random") return std::make_unique<RandomAdversary>(std::move(faulty), seed);
  if (name == "validity") return std::make_unique<ValidityAttack>(std::move(faulty), seed);
  if (name == "equivocator")
    return std::make_unique<IndicatorEquivocator>(std::move(faulty), seed);
  if (name == "consistency") {
    ConsistencyTopology topo = build_consistency_topology(params, base_input);
    if (assigned_inputs) {
      assigned_inputs->clear();
      for (ProcId id : topo.group_a1) (*assigned_inputs)[id] = topo.m1;
      for (ProcId id : topo.group_a2) (*assigned_inputs)[id] = topo.m2;
    }
    std::set<ProcId> last_t;
    for (ProcId id = params.n - params.t + 1; id <= params.n; ++id) last_t.insert(id);
    if (!faulty.empty() && faulty != last_t)
      throw std::invalid_argument("consistency attack requires the last t ids to be faulty");
    return std::make_unique<ConsistencyAttack>(std::move(last_t), seed, std::move(topo), params);
  }
  throw std::invalid_argument("unknown adversary strategy: " + name);
}

}  // namespace cool
