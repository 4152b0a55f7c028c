#include "cool/params.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cool {

namespace {

using boost::multiprecision::cpp_int;

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Smallest integer q with q >= (t+5) * log2(n+1) / (5k), i.e. the
// ceiling of the (t/5+1)*log2(n+1)/k term. The float estimate is
// confirmed (and corrected if needed) against the exact condition
// 2^(5kq) >= (n+1)^(t+5).
std::int64_t ceil_log_term(int n, int t, int k) {
  const std::int64_t tt = t + 5;
  const std::int64_t denom = 5LL * k;
  auto holds = [&](std::int64_t q) {
    if (q < 0) return false;
    cpp_int lhs = cpp_int(1) << static_cast<unsigned>(denom * q);
    cpp_int rhs = boost::multiprecision::pow(cpp_int(n + 1), static_cast<unsigned>(tt));
    return lhs >= rhs;
  };
  std::int64_t guess = static_cast<std::int64_t>(
      std::ceil(static_cast<long double>(tt) * std::log2l(static_cast<long double>(n) + 1) /
                static_cast<long double>(denom)));
  while (!holds(guess)) ++guess;
  while (guess > 0 && holds(guess - 1)) --guess;
  return guess;
}

}  // namespace

CodeParams derive(int n, int t, std::int64_t ell, int w) {
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  if (ell < 1) throw std::invalid_argument("message length must be at least 1 bit");
  if (n < 3 * t + 1)
    throw std::invalid_argument("resilience violated: n=" + std::to_string(n) +
                                " < 3t+1=" + std::to_string(3 * t + 1));
  const std::int64_t cap = (static_cast<std::int64_t>(1) << w) - 1;
  if (n > cap)
    throw std::invalid_argument("field capacity exceeded: n=" + std::to_string(n) + " > 2^" +
                                std::to_string(w) + "-1");

  CodeParams p;
  p.n = n;
  p.t = t;
  p.ell = ell;
  p.w = w;
  p.k = t / 5 + 1;

  const std::int64_t c_eq = std::max(ceil_div(ell, p.k), ceil_log_term(n, t, p.k));
  p.m = static_cast<int>(ceil_div(std::max<std::int64_t>(c_eq, 1), w));
  p.c = p.m * w;

  if (p.correction_capacity() < t)
    throw std::logic_error("correction capacity below t; parameter derivation is broken");
  return p;
}

CommitteeSelection committee_params(int n, int t, std::int64_t ell, int w,
                                    std::optional<std::uint64_t> seed) {
  const int np = 3 * t + 1;
  if (n <= np)
    throw std::invalid_argument("committee selection needs n > 3t+1; run the plain protocol");

  CommitteeSelection sel;
  if (!seed) {
    sel.members.resize(np);
    std::iota(sel.members.begin(), sel.members.end(), 1);
  } else {
    // Deterministic Fisher-Yates prefix over [1:n].
    std::vector<ProcId> ids(n);
    std::iota(ids.begin(), ids.end(), 1);
    Rng rng(splitmix64(*seed));
    for (int i = 0; i < np; ++i) {
      const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(ids[i], ids[j]);
    }
    sel.members.assign(ids.begin(), ids.begin() + np);
    std::sort(sel.members.begin(), sel.members.end());
  }
  sel.params = derive(np, t, ell, w);
  return sel;
}

}  // namespace cool
