#include "cool/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace cool {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::P1a: return "p1a";
    case Phase::P1b: return "p1b";
    case Phase::P2: return "p2";
    case Phase::P3: return "p3";
    case Phase::Obc: return "obc";
    case Phase::P4a: return "p4a";
    case Phase::P4b: return "p4b";
    case Phase::Done: return "done";
  }
  return "?";
}

std::optional<Symbol> majority_symbol(const std::vector<Symbol>& values) {
  if (values.empty()) return std::nullopt;
  std::map<Symbol, int> counts;
  for (const Symbol& v : values) ++counts[v];
  const Symbol* best = nullptr;
  int best_count = 0;
  for (const auto& [sym, count] : counts) {
    if (count > best_count) {  // ties resolve to the smallest key, visited first
      best = &sym;
      best_count = count;
    }
  }
  return *best;
}

Processor::Processor(ProcId id, std::vector<ProcId> participants, CodeParams params,
                     MessageValue input, ObcFactory obc_factory)
    : id_(id), participants_(std::move(participants)), params_(std::move(params)),
      input_(std::move(input)), obc_factory_(std::move(obc_factory)) {
  if (!std::is_sorted(participants_.begin(), participants_.end()))
    throw std::invalid_argument("participants must be sorted");
  if (input_.bit_count != params_.ell)
    throw std::invalid_argument("input length does not match params.ell");
  index_of(id_);  // validates membership

  w_ = input_;
  const Field& field = Field::of(params_.w);
  const MessageBlock block = stripe_message(input_, params_);
  own_symbols_.reserve(participants_.size());
  for (ProcId j : participants_) own_symbols_.push_back(encode(field, block, j));
  u_.assign(participants_.size(), 0);
  s_view_.assign(participants_.size(), 0);
}

std::size_t Processor::index_of(ProcId j) const {
  const auto idx = find_index(j);
  if (!idx) throw std::invalid_argument("processor id not in participant set");
  return *idx;
}

std::optional<std::size_t> Processor::find_index(ProcId j) const noexcept {
  const auto it = std::lower_bound(participants_.begin(), participants_.end(), j);
  if (it == participants_.end() || *it != j) return std::nullopt;
  return static_cast<std::size_t>(it - participants_.begin());
}

std::vector<Message> Processor::indicator_broadcast(int value) const {
  std::vector<Message> out;
  out.reserve(participants_.size() - 1);
  for (ProcId j : participants_)
    if (j != id_) out.push_back(make_indicator_msg(id_, j, value));
  return out;
}

std::vector<Message> Processor::on_round(const std::vector<Message>& delivered) {
  switch (phase_) {
    case Phase::P1a: {
      // Step 1: send the pair (y_j^(i), y_i^(i)) to every j.
      std::vector<Message> out;
      out.reserve(participants_.size() - 1);
      const Symbol& own = own_symbols_[index_of(id_)];
      for (ProcId j : participants_)
        if (j != id_)
          out.push_back(make_pair_msg(id_, j, own_symbols_[index_of(j)], own, params_.c));
      phase_ = Phase::P1b;
      return out;
    }

    case Phase::P1b: {
      // Steps 2-3: link indicators, success indicator, broadcast s_i.
      for (const Message& m : delivered) {
        if (m.kind() != MsgKind::CodedPair || m.garbled) continue;
        if (!find_index(m.from)) continue;
        received_pairs_.emplace(m.from, std::get<PairPayload>(m.payload));
      }
      const Symbol& my_own = own_symbols_[index_of(id_)];
      for (std::size_t idx = 0; idx < participants_.size(); ++idx) {
        const ProcId j = participants_[idx];
        if (j == id_) {
          u_[idx] = 1;  // a processor trivially matches itself
          continue;
        }
        const auto it = received_pairs_.find(j);
        u_[idx] = (it != received_pairs_.end() && it->second.for_receiver == my_own &&
                   it->second.own == own_symbols_[idx])
                      ? 1
                      : 0;
      }
      const int matches = static_cast<int>(std::count(u_.begin(), u_.end(), 1));
      s_ = matches >= n() - params_.t ? 1 : 0;
      if (s_ == 0) w_ = std::nullopt;
      phase_ = Phase::P2;
      check_state();
      return indicator_broadcast(s_);
    }

    case Phase::P2: {
      // Build S1/S0 from the full indicator exchange; absent senders
      // default to zero. Then mask and re-evaluate.
      std::fill(s_view_.begin(), s_view_.end(), 0);
      std::set<ProcId> seen;
      for (const Message& m : delivered) {
        if (m.kind() != MsgKind::SuccessBit || m.garbled) continue;
        const auto idx = find_index(m.from);
        if (!idx || m.from == id_ || !seen.insert(m.from).second) continue;
        s_view_[*idx] = std::get<IndicatorPayload>(m.payload).value ? 1 : 0;
      }
      s_view_[index_of(id_)] = s_;
      auto out = mask_and_update();
      phase_ = Phase::P3;
      check_state();
      return out;
    }

    case Phase::P3: {
      apply_zero_announcements(delivered);
      auto out = mask_and_update();
      phase_ = Phase::Obc;
      check_state();
      return out;
    }

    case Phase::Obc: {
      if (!obc_) {
        // Phase-3 steps 3-5: fold in the last transitions, vote, start
        // the one-bit consensus on the votes.
        apply_zero_announcements(delivered);
        const int ones = static_cast<int>(std::count(s_view_.begin(), s_view_.end(), 1));
        vote_ = ones >= 2 * params_.t + 1 ? 1 : 0;
        obc_ = obc_factory_(participants_, id_, params_.t);
        obc_->init(vote_);
        check_state();
        return obc_->on_round({});
      }
      std::vector<Message> obc_in;
      for (const Message& m : delivered)
        if (m.kind() == MsgKind::ObcPayload) obc_in.push_back(m);
      auto out = obc_->on_round(obc_in);
      if (const auto decision = obc_->output()) {
        if (*decision == 0) {
          // Unanimous stop: the default value is the consensus.
          w_ = std::nullopt;
          output_ = std::nullopt;
          phase_ = Phase::Done;
          return out;
        }
        auto p4 = enter_phase4();
        out.insert(out.end(), std::make_move_iterator(p4.begin()),
                   std::make_move_iterator(p4.end()));
      }
      return out;
    }

    case Phase::P4a:
      throw std::logic_error("phase P4a is internal to the consensus round");

    case Phase::P4b: {
      run_phase4_decode(delivered);
      output_ = w_;
      phase_ = Phase::Done;
      return {};
    }

    case Phase::Done:
      return {};
  }
  return {};
}

std::vector<Message> Processor::mask_and_update() {
  if (s_ != 1) return {};  // processors already at zero change nothing
  for (std::size_t idx = 0; idx < participants_.size(); ++idx)
    if (s_view_[idx] == 0) u_[idx] = 0;
  const int matches = static_cast<int>(std::count(u_.begin(), u_.end(), 1));
  if (matches >= n() - params_.t) return {};
  s_ = 0;
  s_view_[index_of(id_)] = 0;
  w_ = std::nullopt;
  return indicator_broadcast(0);
}

void Processor::apply_zero_announcements(const std::vector<Message>& delivered) {
  // Only explicit 0-announcements move ids to S0; there is no way back.
  for (const Message& m : delivered) {
    if (m.kind() != MsgKind::SuccessBit) continue;
    const auto idx = find_index(m.from);
    if (!idx || m.from == id_) continue;
    if (m.garbled || std::get<IndicatorPayload>(m.payload).value == 0) s_view_[*idx] = 0;
  }
}

std::vector<Message> Processor::enter_phase4() {
  phase_ = Phase::P4a;
  std::vector<Message> out;
  if (s_ == 0) {
    // Step 1: calibrate y_i^(i) by majority over the S1 members' pairs.
    std::vector<Symbol> candidates;
    for (std::size_t idx = 0; idx < participants_.size(); ++idx) {
      const ProcId j = participants_[idx];
      if (j == id_ || s_view_[idx] != 1) continue;
      const auto it = received_pairs_.find(j);
      if (it != received_pairs_.end()) candidates.push_back(it->second.for_receiver);
    }
    if (const auto maj = majority_symbol(candidates)) {
      calibrated_own_ = *maj;
    } else {
      calibrated_own_ = Symbol::zeros(params_.m);  // S1 went silent; decode still corrects
    }
    // Step 2: share the calibrated value with the other S0 members.
    for (std::size_t idx = 0; idx < participants_.size(); ++idx) {
      const ProcId j = participants_[idx];
      if (j != id_ && s_view_[idx] == 0)
        out.push_back(make_symbol_msg(id_, j, calibrated_own_, false, params_.c));
    }
  }
  phase_ = Phase::P4b;
  return out;
}

void Processor::run_phase4_decode(const std::vector<Message>& delivered) {
  if (s_ == 1) return;  // S1 members keep their message

  for (const Message& m : delivered) {
    if (m.kind() != MsgKind::Phase4Symbol || m.garbled) continue;
    const auto& payload = std::get<SymbolPayload>(m.payload);
    if (payload.value.stripes.size() != static_cast<std::size_t>(params_.m)) continue;
    phase4_received_.emplace(m.from, payload.value);
  }

  // Assemble {y_j^(j)}: S1 entries from phase 1, S0 entries from this
  // phase, own calibrated value. Missing entries (possible only for
  // faulty senders) become zero symbols and count against capacity.
  std::vector<std::pair<int, Symbol>> observations;
  observations.reserve(participants_.size());
  for (std::size_t idx = 0; idx < participants_.size(); ++idx) {
    const ProcId j = participants_[idx];
    Symbol value = Symbol::zeros(params_.m);
    if (j == id_) {
      value = calibrated_own_;
    } else if (s_view_[idx] == 1) {
      const auto it = received_pairs_.find(j);
      if (it != received_pairs_.end() &&
          it->second.own.stripes.size() == static_cast<std::size_t>(params_.m))
        value = it->second.own;
    } else {
      const auto it = phase4_received_.find(j);
      if (it != phase4_received_.end()) value = it->second;
    }
    observations.emplace_back(j, std::move(value));
  }

  const auto block = decode(Field::of(params_.w), observations, params_.k, params_.t);
  if (!block)
    throw ProtocolViolation("phase-4 decode failed at processor " + std::to_string(id_) +
                            ": more than t corrupted observations");
  w_ = unstripe_message(*block, params_);
}

void Processor::check_state() const {
  // The message is cleared exactly when the indicator is zero, and a
  // processor always trusts its own link.
  assert((s_ == 0) == !w_.has_value());
  assert(u_[index_of(id_)] == 1 || phase_ == Phase::P1a || phase_ == Phase::P1b);
}

std::set<ProcId> Processor::set_s1() const {
  std::set<ProcId> out;
  for (std::size_t idx = 0; idx < participants_.size(); ++idx)
    if (s_view_[idx] == 1) out.insert(participants_[idx]);
  return out;
}

std::set<ProcId> Processor::set_s0() const {
  std::set<ProcId> out;
  for (std::size_t idx = 0; idx < participants_.size(); ++idx)
    if (s_view_[idx] == 0) out.insert(participants_[idx]);
  return out;
}

}  // namespace cool
