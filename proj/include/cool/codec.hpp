#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cool/field.hpp"
#include "cool/params.hpp"
#include "cool/types.hpp"

namespace cool {

/// One code symbol: m parallel w-bit stripes carrying c = m*w bits.
struct Symbol {
  std::vector<FieldElem> stripes;

  static Symbol zeros(int m) { return Symbol{std::vector<FieldElem>(static_cast<std::size_t>(m), 0)}; }
  bool operator==(const Symbol& o) const = default;
  bool operator<(const Symbol& o) const { return stripes < o.stripes; }
};

/// The k data symbols of one message, striped: cell(j, s) is stripe s of
/// data column j. Serializes to exactly k*c bits.
struct MessageBlock {
  int k = 0;
  int m = 0;
  std::vector<FieldElem> cells;  // column-major, k*m entries

  static MessageBlock zeros(int k, int m) {
    return MessageBlock{k, m, std::vector<FieldElem>(static_cast<std::size_t>(k) * m, 0)};
  }
  FieldElem& cell(int j, int s) { return cells[static_cast<std::size_t>(j - 1) * m + s]; }
  FieldElem cell(int j, int s) const { return cells[static_cast<std::size_t>(j - 1) * m + s]; }
  Symbol column(int j) const;
  bool operator==(const MessageBlock& o) const = default;
};

/// Row i of the code's generator: the k Lagrange coefficients that map
/// data columns to the symbol at evaluation label i.
struct EncodingVector {
  int index = 0;
  std::vector<FieldElem> coeffs;
};

/// Coefficients h_i = [h_{i,1} .. h_{i,k}] with
/// h_{i,j} = prod_{p != j} (i - p) / (j - p), all arithmetic in GF(2^w).
/// For i <= k this is the i-th standard basis vector; for k = 1 it is [1].
EncodingVector lagrange_vector(const Field& field, int i, int k);

/// Symbol at label i: per stripe, the inner product of h_i with the data
/// column entries (XOR-fold of products).
Symbol encode(const Field& field, const MessageBlock& block, int i);

/// Error-correcting decode from observations (label, symbol) with
/// distinct labels. Corrects up to max_errors corrupted symbols via
/// Berlekamp-Welch, stripe by stripe; the per-stripe error supports must
/// jointly cover at most max_errors positions or the decode fails.
///
/// Requires observations.size() >= k + 2*max_errors. Returns nullopt
/// when no codeword lies within distance max_errors (with max_errors = 0
/// this is pure error detection).
std::optional<MessageBlock> decode(const Field& field,
                                   const std::vector<std::pair<int, Symbol>>& observations,
                                   int k, int max_errors);

/// Deterministic bit layout of an ell-bit message into a k x m block:
/// zero-pad to k*c bits, split into k consecutive c-bit chunks (chunk j
/// -> column j), split each chunk into m w-bit stripes, high-order
/// stripe first. unstripe_message inverts it exactly.
MessageBlock stripe_message(const MessageValue& message, const CodeParams& params);
MessageValue unstripe_message(const MessageBlock& block, const CodeParams& params);

}  // namespace cool
