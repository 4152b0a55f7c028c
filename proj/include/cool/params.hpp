#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cool/types.hpp"

namespace cool {

/// All protocol parameters derived from (n, t, ell).
///
/// k is the number of data symbols per codeword, c the bit width of one
/// code symbol (already rounded up to a whole number of w-bit stripes,
/// so c == m*w), and m the stripe count.
struct CodeParams {
  int n = 0;             // processor count
  int t = 0;             // max faulty count
  std::int64_t ell = 0;  // message length in bits
  int k = 0;             // data symbols
  int c = 0;             // bits per code symbol (c_eff = m*w)
  int w = 0;             // field width
  int m = 0;             // stripes per symbol

  std::int64_t padded_bits() const { return static_cast<std::int64_t>(k) * c; }
  int correction_capacity() const { return (n - k) / 2; }
};

/// Derive (k, c, m) for an n-processor run tolerating t faults on
/// ell-bit messages over GF(2^w).
///
///   k = floor(t/5) + 1
///   c = smallest multiple of w at or above
///       ceil(max{ell, (t/5 + 1) * log2(n+1)} / k)
///
/// The log2 term is resolved with exact integer arithmetic so the
/// result is reproducible bit-for-bit.
///
/// Throws std::invalid_argument when n < 3t+1 (resilience), when
/// n > 2^w - 1 (field capacity), or when t < 0 / ell < 1.
CodeParams derive(int n, int t, std::int64_t ell, int w = 16);

struct CommitteeSelection {
  std::vector<ProcId> members;  // sorted, size 3t+1
  CodeParams params;            // derived with n' = 3t+1 in place of n
};

/// Small-t variant: pick a committee of n' = 3t+1 processors out of n.
/// Without a seed the committee is ids [1 : 3t+1]; with a seed it is a
/// deterministic pseudorandom subset. Requires n > 3t+1.
CommitteeSelection committee_params(int n, int t, std::int64_t ell, int w = 16,
                                    std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace cool
