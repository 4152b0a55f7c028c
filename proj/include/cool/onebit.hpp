#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cool/message.hpp"

namespace cool {

/// Single-bit Byzantine consensus driven round by round. The contract
/// required of any implementation plugged in here:
///   (a) every honest participant eventually outputs a value,
///   (b) all honest participants output the same value,
///   (c) if all honest participants start with the same bit, that bit
///       is the output.
/// Holds for n >= 3t+1 participants with at most t faulty.
class OneBitConsensus {
 public:
  virtual ~OneBitConsensus() = default;

  virtual void init(int initial_bit) = 0;

  /// One synchronous round: consume last round's messages, emit this
  /// round's. Called until output() is engaged; the final call consumes
  /// the last delivery and emits nothing.
  virtual std::vector<Message> on_round(const std::vector<Message>& delivered) = 0;

  virtual std::optional<int> output() const = 0;

  /// Rounds of network traffic this instance uses in total.
  virtual int total_rounds() const = 0;
};

using ObcFactory = std::function<std::unique_ptr<OneBitConsensus>(
    const std::vector<ProcId>& participants, ProcId self, int t)>;

/// Phase-king consensus: t+1 phases of three rounds each, king of phase
/// p being the p-th participant. Tolerates t < n/3.
class PhaseKing : public OneBitConsensus {
 public:
  PhaseKing(std::vector<ProcId> participants, ProcId self, int t);

  void init(int initial_bit) override;
  std::vector<Message> on_round(const std::vector<Message>& delivered) override;
  std::optional<int> output() const override;
  int total_rounds() const override { return 3 * (t_ + 1); }

  int value() const { return value_; }

 private:
  enum class Step { Value, Proposal, King };

  std::vector<Message> broadcast(ObcValue v, bool king_round) const;
  void ingest(const std::vector<Message>& delivered, std::vector<std::optional<ObcValue>>& slots) const;

  std::vector<ProcId> participants_;
  ProcId self_;
  int t_;
  int n_;
  int value_ = 0;
  bool strong_ = false;
  std::optional<ObcValue> proposal_;
  int round_ = 0;  // 0-based count of on_round calls already made
  std::optional<int> output_;
};

ObcFactory phase_king_factory();

}  // namespace cool
