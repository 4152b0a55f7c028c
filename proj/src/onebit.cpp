#include "cool/onebit.hpp"

#include <algorithm>
#include <stdexcept>

namespace cool {

PhaseKing::PhaseKing(std::vector<ProcId> participants, ProcId self, int t)
    : participants_(std::move(participants)), self_(self), t_(t),
      n_(static_cast<int>(participants_.size())) {
  if (n_ < 3 * t_ + 1) throw std::invalid_argument("phase king needs n >= 3t+1");
  if (std::find(participants_.begin(), participants_.end(), self_) == participants_.end())
    throw std::invalid_argument("self is not a participant");
}

void PhaseKing::init(int initial_bit) { value_ = initial_bit ? 1 : 0; }

std::vector<Message> PhaseKing::broadcast(ObcValue v, bool king_round) const {
  std::vector<Message> out;
  out.reserve(static_cast<std::size_t>(n_) - 1);
  for (ProcId j : participants_)
    if (j != self_) out.push_back(make_obc_msg(self_, j, v, king_round));
  return out;
}

void PhaseKing::ingest(const std::vector<Message>& delivered,
                       std::vector<std::optional<ObcValue>>& slots) const {
  for (const Message& m : delivered) {
    if (m.kind() != MsgKind::ObcPayload) continue;
    const auto it = std::find(participants_.begin(), participants_.end(), m.from);
    if (it == participants_.end()) continue;
    const auto idx = static_cast<std::size_t>(it - participants_.begin());
    if (slots[idx]) continue;  // first message per sender wins
    if (m.garbled) continue;   // garbled senders count as absent
    slots[idx] = std::get<ObcPayload>(m.payload).value;
  }
}

std::vector<Message> PhaseKing::on_round(const std::vector<Message>& delivered) {
  const int total = total_rounds();
  if (round_ > total) return {};

  // Consume the delivery of the previous round.
  if (round_ > 0) {
    const int prev = round_ - 1;
    const int phase = prev / 3;
    const Step step = static_cast<Step>(prev % 3);
    std::vector<std::optional<ObcValue>> slots(static_cast<std::size_t>(n_));
    ingest(delivered, slots);

    switch (step) {
      case Step::Value: {
        const auto self_it = std::find(participants_.begin(), participants_.end(), self_);
        slots[static_cast<std::size_t>(self_it - participants_.begin())] =
            value_ ? ObcValue::kOne : ObcValue::kZero;
        int count[2] = {0, 0};
        for (const auto& s : slots) {
          if (s == ObcValue::kZero) ++count[0];
          if (s == ObcValue::kOne) ++count[1];
        }
        proposal_ = std::nullopt;
        for (int b = 0; b < 2; ++b) {
          if (count[b] >= n_ - t_) {
            value_ = b;
            proposal_ = b ? ObcValue::kOne : ObcValue::kZero;
            break;
          }
        }
        break;
      }
      case Step::Proposal: {
        const auto self_it = std::find(participants_.begin(), participants_.end(), self_);
        slots[static_cast<std::size_t>(self_it - participants_.begin())] =
            proposal_.value_or(ObcValue::kBottom);
        int count[2] = {0, 0};
        for (const auto& s : slots) {
          if (s == ObcValue::kZero) ++count[0];
          if (s == ObcValue::kOne) ++count[1];
        }
        strong_ = false;
        for (int b = 0; b < 2; ++b) {
          if (count[b] > t_) {
            value_ = b;
            strong_ = count[b] >= n_ - t_;
            break;
          }
        }
        break;
      }
      case Step::King: {
        const ProcId king = participants_[static_cast<std::size_t>(phase)];
        int king_bit = 0;
        if (king == self_) {
          king_bit = value_;
        } else {
          const auto it = std::find(participants_.begin(), participants_.end(), king);
          const auto idx = static_cast<std::size_t>(it - participants_.begin());
          king_bit = (slots[idx] == ObcValue::kOne) ? 1 : 0;  // bottom/absent -> 0
        }
        if (!strong_) value_ = king_bit;
        strong_ = false;
        proposal_ = std::nullopt;
        if (round_ == total) output_ = value_;
        break;
      }
    }
  }

  // Emit this round's messages.
  if (round_ >= total) {
    ++round_;
    return {};
  }
  const int phase = round_ / 3;
  const Step step = static_cast<Step>(round_ % 3);
  ++round_;
  switch (step) {
    case Step::Value:
      return broadcast(value_ ? ObcValue::kOne : ObcValue::kZero, false);
    case Step::Proposal:
      return broadcast(proposal_.value_or(ObcValue::kBottom), false);
    case Step::King: {
      const ProcId king = participants_[static_cast<std::size_t>(phase)];
      if (king != self_) return {};
      return broadcast(value_ ? ObcValue::kOne : ObcValue::kZero, true);
    }
  }
  return {};
}

std::optional<int> PhaseKing::output() const { return output_; }

ObcFactory phase_king_factory() {
  return [](const std::vector<ProcId>& participants, ProcId self, int t) {
    return std::make_unique<PhaseKing>(participants, self, t);
  };
}

}  // namespace cool
