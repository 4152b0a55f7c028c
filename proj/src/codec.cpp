#include "cool/codec.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cool {

namespace {

// Gaussian elimination over GF(2^w). Frees are set to zero; returns
// nullopt when the system is inconsistent.
std::optional<std::vector<FieldElem>> solve_linear(const Field& f,
                                                   std::vector<std::vector<FieldElem>> a,
                                                   std::vector<FieldElem> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && a[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[pr], a[r]);
    std::swap(b[pr], b[r]);
    const FieldElem piv_inv = f.inv(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = f.mul(a[r][j], piv_inv);
    b[r] = f.mul(b[r], piv_inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const FieldElem factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        a[i][j] = Field::add(a[i][j], f.mul(factor, a[r][j]));
      b[i] = Field::add(b[i], f.mul(factor, b[r]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;

  std::vector<FieldElem> x(cols, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

FieldElem poly_eval(const Field& f, const std::vector<FieldElem>& coeffs, FieldElem x) {
  FieldElem acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = Field::add(f.mul(acc, x), *it);
  return acc;
}

// Long division; returns (quotient, remainder). Divisor must be monic
// of exact degree divisor.size()-1.
std::pair<std::vector<FieldElem>, std::vector<FieldElem>> poly_divmod(
    const Field& f, std::vector<FieldElem> num, const std::vector<FieldElem>& div) {
  const std::size_t dd = div.size() - 1;
  if (num.size() <= dd) return {{0}, std::move(num)};
  std::vector<FieldElem> q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const FieldElem coef = num[i];
    if (coef == 0) continue;
    q[i - dd] = coef;
    for (std::size_t j = 0; j <= dd; ++j)
      num[i - dd + j] = Field::add(num[i - dd + j], f.mul(coef, div[j]));
  }
  return {std::move(q), std::move(num)};
}

struct StripeDecode {
  std::vector<FieldElem> q;            // degree < k
  std::vector<std::size_t> support;    // observation indices in error
};

// Berlekamp-Welch in linear-system form: find N (deg < e+k) and monic E
// (deg e) with N(a_i) = y_i * E(a_i) for all observations, then Q = N/E.
std::optional<StripeDecode> bw_stripe(const Field& f,
                                      const std::vector<std::pair<FieldElem, FieldElem>>& obs,
                                      int k, int e) {
  const std::size_t np = obs.size();
  const std::size_t n_coeffs = static_cast<std::size_t>(e + k);
  std::vector<std::vector<FieldElem>> a(np, std::vector<FieldElem>(n_coeffs + e, 0));
  std::vector<FieldElem> b(np, 0);
  for (std::size_t i = 0; i < np; ++i) {
    const auto [alpha, y] = obs[i];
    FieldElem pw = 1;
    for (std::size_t j = 0; j < n_coeffs; ++j) {
      a[i][j] = pw;
      pw = f.mul(pw, alpha);
    }
    FieldElem epw = y;
    for (int j = 0; j < e; ++j) {
      a[i][n_coeffs + static_cast<std::size_t>(j)] = epw;
      epw = f.mul(epw, alpha);
    }
    b[i] = epw;  // y * alpha^e
  }
  auto sol = solve_linear(f, std::move(a), std::move(b));
  if (!sol) return std::nullopt;

  std::vector<FieldElem> num(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(n_coeffs));
  std::vector<FieldElem> locator(sol->begin() + static_cast<std::ptrdiff_t>(n_coeffs), sol->end());
  locator.push_back(1);  // monic

  auto [q, rem] = poly_divmod(f, std::move(num), locator);
  if (std::any_of(rem.begin(), rem.end(), [](FieldElem v) { return v != 0; }))
    return std::nullopt;
  q.resize(static_cast<std::size_t>(k), 0);

  StripeDecode out;
  out.q = std::move(q);
  for (std::size_t i = 0; i < np; ++i)
    if (poly_eval(f, out.q, obs[i].first) != obs[i].second) out.support.push_back(i);
  if (static_cast<int>(out.support.size()) > e) return std::nullopt;
  return out;
}

}  // namespace

Symbol MessageBlock::column(int j) const {
  Symbol s = Symbol::zeros(m);
  for (int st = 0; st < m; ++st) s.stripes[static_cast<std::size_t>(st)] = cell(j, st);
  return s;
}

EncodingVector lagrange_vector(const Field& field, int i, int k) {
  if (i < 1 || k < 1) throw std::invalid_argument("lagrange_vector needs i >= 1, k >= 1");
  EncodingVector v;
  v.index = i;
  v.coeffs.resize(static_cast<std::size_t>(k));
  const FieldElem xi = field.label(i);
  for (int j = 1; j <= k; ++j) {
    FieldElem acc = 1;
    const FieldElem xj = field.label(j);
    for (int p = 1; p <= k; ++p) {
      if (p == j) continue;
      const FieldElem xp = field.label(p);
      acc = field.mul(acc, field.div(Field::sub(xi, xp), Field::sub(xj, xp)));
    }
    v.coeffs[static_cast<std::size_t>(j - 1)] = acc;
  }
  return v;
}

Symbol encode(const Field& field, const MessageBlock& block, int i) {
  const EncodingVector h = lagrange_vector(field, i, block.k);
  Symbol out = Symbol::zeros(block.m);
  for (int s = 0; s < block.m; ++s) {
    FieldElem acc = 0;
    for (int j = 1; j <= block.k; ++j)
      acc = Field::add(acc, field.mul(h.coeffs[static_cast<std::size_t>(j - 1)], block.cell(j, s)));
    out.stripes[static_cast<std::size_t>(s)] = acc;
  }
  return out;
}

std::optional<MessageBlock> decode(const Field& field,
                                   const std::vector<std::pair<int, Symbol>>& observations,
                                   int k, int max_errors) {
  if (k < 1) throw std::invalid_argument("decode needs k >= 1");
  if (max_errors < 0) throw std::invalid_argument("decode needs max_errors >= 0");
  const std::size_t np = observations.size();
  if (np < static_cast<std::size_t>(k + 2 * max_errors))
    throw std::invalid_argument("too few observations: need k + 2*max_errors");
  std::set<int> labels;
  for (const auto& [idx, sym] : observations) {
    field.label(idx);  // validates range
    if (!labels.insert(idx).second) throw std::invalid_argument("duplicate observation label");
    if (sym.stripes.size() != observations[0].second.stripes.size())
      throw std::invalid_argument("inconsistent stripe counts across observations");
  }

  const int m = static_cast<int>(observations[0].second.stripes.size());
  std::vector<StripeDecode> per_stripe;
  per_stripe.reserve(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) {
    std::vector<std::pair<FieldElem, FieldElem>> obs;
    obs.reserve(np);
    for (const auto& [idx, sym] : observations)
      obs.emplace_back(field.label(idx), sym.stripes[static_cast<std::size_t>(s)]);
    auto dec = bw_stripe(field, obs, k, max_errors);
    if (!dec) return std::nullopt;
    per_stripe.push_back(std::move(*dec));
  }

  // A symbol is atomically right or wrong: the stripes' error positions
  // must fit one joint support of size <= max_errors.
  std::set<std::size_t> joint;
  for (const auto& sd : per_stripe) joint.insert(sd.support.begin(), sd.support.end());
  if (static_cast<int>(joint.size()) > max_errors) return std::nullopt;

  MessageBlock block = MessageBlock::zeros(k, m);
  for (int s = 0; s < m; ++s)
    for (int j = 1; j <= k; ++j)
      block.cell(j, s) = poly_eval(field, per_stripe[static_cast<std::size_t>(s)].q, field.label(j));
  return block;
}

MessageBlock stripe_message(const MessageValue& message, const CodeParams& params) {
  if (message.bit_count != params.ell)
    throw std::invalid_argument("message length does not match params.ell");
  if (params.ell > params.padded_bits())
    throw std::invalid_argument("message longer than k*c bits; parameters are inconsistent");
  MessageBlock block = MessageBlock::zeros(params.k, params.m);
  for (int j = 1; j <= params.k; ++j) {
    const std::int64_t chunk_base = static_cast<std::int64_t>(j - 1) * params.c;
    for (int s = 0; s < params.m; ++s) {
      FieldElem v = 0;
      for (int b = 0; b < params.w; ++b) {
        const std::int64_t pos = chunk_base + static_cast<std::int64_t>(s) * params.w + b;
        const bool bit = pos < params.ell && message.bit(pos);
        v = static_cast<FieldElem>((v << 1) | (bit ? 1 : 0));
      }
      block.cell(j, s) = v;
    }
  }
  return block;
}

MessageValue unstripe_message(const MessageBlock& block, const CodeParams& params) {
  MessageValue out = MessageValue::zeros(params.ell);
  for (int j = 1; j <= params.k; ++j) {
    const std::int64_t chunk_base = static_cast<std::int64_t>(j - 1) * params.c;
    for (int s = 0; s < params.m; ++s) {
      const FieldElem v = block.cell(j, s);
      for (int b = 0; b < params.w; ++b) {
        const std::int64_t pos = chunk_base + static_cast<std::int64_t>(s) * params.w + b;
        if (pos >= params.ell) break;
        out.set_bit(pos, (v >> (params.w - 1 - b)) & 1);
      }
    }
  }
  return out;
}

}  // namespace cool
