#include "cool/metrics.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cool {

namespace {

double slope_loglog(const std::vector<std::pair<double, double>>& pts, double* rms_out) {
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / static_cast<double>(pts.size());
  const double my = sy / static_cast<double>(pts.size());
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw std::invalid_argument("exponent fit needs at least two distinct n");
  const double slope = sxy / sxx;
  if (rms_out) {
    const double intercept = my - slope * mx;
    double acc = 0;
    for (const auto& [x, y] : pts) {
      const double r = y - (slope * x + intercept);
      acc += r * r;
    }
    *rms_out = std::sqrt(acc / static_cast<double>(pts.size()));
  }
  return slope;
}

}  // namespace

ExponentEstimate estimate_exponent(const std::vector<RunRecord>& sweep, double alpha,
                                   double delta) {
  if (sweep.size() < 2) throw std::invalid_argument("exponent fit needs at least two points");
  std::vector<std::pair<double, double>> excl, incl;
  for (const RunRecord& r : sweep) {
    const double x = std::log2(static_cast<double>(r.n));
    excl.emplace_back(x, std::log2(static_cast<double>(r.bits.total_excl_obc())));
    incl.emplace_back(x, std::log2(static_cast<double>(r.bits.total())));
  }
  ExponentEstimate est;
  est.alpha = alpha;
  est.delta = delta;
  est.points = static_cast<int>(sweep.size());
  est.beta_hat = slope_loglog(excl, &est.residual);
  est.beta_hat_with_obc = slope_loglog(incl, nullptr);
  return est;
}

double fitted_bound_constant(const RunRecord& r) {
  const double log_t = std::log2(static_cast<double>(std::max(r.t, 2)));
  const double bound = std::max(static_cast<double>(r.n) * static_cast<double>(r.ell),
                                static_cast<double>(r.n) * static_cast<double>(r.t) * log_t);
  return static_cast<double>(r.bits.total_excl_obc()) / bound;
}

std::string csv_header() {
  return "n,t,l,rounds,B1,B2,B3,B4,B5,B6,obc_bits,total_bits,total_excl_obc,consistent,valid,"
         "lemma3_ok";
}

std::string csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.n << ',' << r.t << ',' << r.ell << ',' << r.rounds_total << ',' << r.bits.b1 << ','
     << r.bits.b2 << ',' << r.bits.b3 << ',' << r.bits.b4 << ',' << r.bits.b5 << ','
     << r.bits.b6 << ',' << r.bits.obc_bits << ',' << r.bits.total() << ','
     << r.bits.total_excl_obc() << ',' << (r.flags.consistent ? 1 : 0) << ','
     << (r.flags.valid_applicable ? (r.flags.valid_holds ? "1" : "0") : "na") << ','
     << (r.flags.lemma3_ok ? 1 : 0);
  return os.str();
}

std::string to_json(const RunRecord& r, int indent) {
  nlohmann::ordered_json j;
  j["mode"] = r.mode;
  j["adversary"] = r.adversary;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["t"] = r.t;
  j["l"] = r.ell;
  j["w"] = r.w;
  j["k"] = r.k;
  j["c"] = r.c;
  j["m"] = r.m;
  j["rounds_total"] = r.rounds_total;
  j["bits"] = {{"b1", r.bits.b1},
               {"b2", r.bits.b2},
               {"b3", r.bits.b3},
               {"b4", r.bits.b4},
               {"b5", r.bits.b5},
               {"b6", r.bits.b6},
               {"obc_bits", r.bits.obc_bits},
               {"leader_bits", r.bits.leader_bits},
               {"dissemination_bits", r.bits.dissemination_bits},
               {"total", r.bits.total()},
               {"total_excl_obc", r.bits.total_excl_obc()}};
  nlohmann::ordered_json outs = nlohmann::ordered_json::object();
  for (const auto& [id, value] : r.outputs) {
    if (value)
      outs[std::to_string(id)] = value->to_hex();
    else
      outs[std::to_string(id)] = nullptr;
  }
  j["outputs"] = outs;
  j["flags"] = {{"terminated", r.flags.terminated},
                {"consistent", r.flags.consistent},
                {"valid_applicable", r.flags.valid_applicable},
                {"valid_holds", r.flags.valid_holds},
                {"lemma3_ok", r.flags.lemma3_ok},
                {"phase4_entry_ok", r.flags.phase4_entry_ok}};
  j["ok"] = r.flags.all_ok();
  return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace cool
