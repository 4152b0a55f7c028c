// Command-line front end: single runs (JSON out), strategy/seed sweeps
// and exponent sweeps (CSV + JSON summary).

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cool/run.hpp"

using namespace cool;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("COOL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("COOL_SEED", "not a valid unsigned integer");
    }
  }
  return 0;
}

std::set<ProcId> last_t_ids(int n, int t) {
  std::set<ProcId> out;
  for (ProcId id = n - t + 1; id <= n; ++id) out.insert(id);
  return out;
}

MessageValue parse_hex_message(const std::string& hex, std::int64_t ell) {
  try {
    return MessageValue::from_hex(hex, ell);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--input", "invalid hex payload");
  }
}

// input spec: all-equal:<hex> | split:<hexA>,<hexB>[,countA] | random
std::map<ProcId, MessageValue> build_inputs(const std::string& spec, int n,
                                            const std::set<ProcId>& faulty, std::int64_t ell,
                                            Rng& rng) {
  std::vector<ProcId> honest;
  for (ProcId id = 1; id <= n; ++id)
    if (!faulty.count(id)) honest.push_back(id);

  std::map<ProcId, MessageValue> inputs;
  if (spec == "random") {
    for (ProcId id : honest) inputs.emplace(id, MessageValue::random(ell, rng));
    return inputs;
  }
  if (spec.rfind("all-equal:", 0) == 0) {
    const MessageValue m = parse_hex_message(spec.substr(10), ell);
    for (ProcId id : honest) inputs.emplace(id, m);
    return inputs;
  }
  if (spec.rfind("split:", 0) == 0) {
    const std::string body = spec.substr(6);
    const auto comma1 = body.find(',');
    if (comma1 == std::string::npos)
      throw CLI::ValidationError("--input", "split needs two hex payloads");
    const auto comma2 = body.find(',', comma1 + 1);
    const std::string hex_a = body.substr(0, comma1);
    const std::string hex_b = comma2 == std::string::npos
                                  ? body.substr(comma1 + 1)
                                  : body.substr(comma1 + 1, comma2 - comma1 - 1);
    std::size_t count_a = (honest.size() + 1) / 2;
    if (comma2 != std::string::npos) count_a = std::stoul(body.substr(comma2 + 1));
    if (count_a > honest.size())
      throw CLI::ValidationError("--input", "split count exceeds the honest population");
    const MessageValue a = parse_hex_message(hex_a, ell);
    const MessageValue b = parse_hex_message(hex_b, ell);
    for (std::size_t i = 0; i < honest.size(); ++i)
      inputs.emplace(honest[i], i < count_a ? a : b);
    return inputs;
  }
  throw CLI::ValidationError("--input", "expected all-equal:<hex>, split:<hexA>,<hexB>[,countA] or random");
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  os << text;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task) {
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 16u);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
    });
  for (auto& th : pool) th.join();
}

struct RunArgs {
  std::string mode = "ba";
  int n = 0;
  int t = 0;
  std::int64_t ell = 0;
  int w = 16;
  std::string adversary = "silent";
  std::string input = "random";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out = "-";
  std::string transcript_path;
  ProcId leader = 1;
  std::string leader_value_hex;
  std::uint64_t committee_seed = 0;
  bool committee_seed_given = false;
};

int cmd_run(const RunArgs& args) {
  const std::uint64_t seed = args.seed_given ? args.seed : default_seed();
  Rng rng(splitmix64(seed ^ 0xc001ULL));

  if (args.n < 3 * args.t + 1)
    throw CLI::ValidationError("--n", "resilience requires n >= 3t+1");

  const bool committee = args.mode == "ba-committee";
  const CodeParams params = committee
                                ? committee_params(args.n, args.t, args.ell, args.w,
                                                   args.committee_seed_given
                                                       ? std::optional<std::uint64_t>(args.committee_seed)
                                                       : std::nullopt)
                                      .params
                                : derive(args.n, args.t, args.ell, args.w);

  const auto faulty = last_t_ids(args.n, args.t);
  MessageValue base = MessageValue::random(args.ell, rng);
  if (args.input.rfind("all-equal:", 0) == 0)
    base = parse_hex_message(args.input.substr(10), args.ell);

  std::map<ProcId, MessageValue> inputs;
  CodeParams full_params = committee ? derive(args.n, args.t, args.ell, args.w) : params;
  if (args.adversary == "consistency" && committee)
    throw CLI::ValidationError("--adversary", "the consistency topology needs the plain ba mode");
  auto adversary = make_adversary(args.adversary, full_params, faulty, seed, base,
                                  args.adversary == "consistency" ? &inputs : nullptr);
  if (args.adversary != "consistency")
    inputs = build_inputs(args.input, args.n, faulty, args.ell, rng);

  RunOptions options{.seed = seed, .record_transcript = !args.transcript_path.empty()};
  if (args.committee_seed_given) options.committee_seed = args.committee_seed;

  Transcript transcript;
  Transcript* tr = options.record_transcript ? &transcript : nullptr;
  RunRecord rec;
  if (args.mode == "ba") {
    rec = run_ba(inputs, *adversary, params, options, tr);
  } else if (args.mode == "bb") {
    const MessageValue leader_value = args.leader_value_hex.empty()
                                          ? base
                                          : parse_hex_message(args.leader_value_hex, args.ell);
    rec = run_bb(args.leader, leader_value, *adversary, params, options, tr);
  } else if (committee) {
    rec = run_ba_committee(inputs, *adversary, args.n, args.t, args.ell, args.w, options, tr);
  } else {
    throw CLI::ValidationError("--mode", "expected ba, bb or ba-committee");
  }

  write_text(args.out, to_json(rec, 2));
  if (tr) {
    std::ostringstream os;
    transcript.write(os);
    write_text(args.transcript_path, os.str());
  }
  return rec.flags.all_ok() ? 0 : 1;
}

struct SweepArgs {
  std::vector<int> n_list;
  double alpha = 1.0;
  double delta = 1.0;
  int w = 16;
  std::vector<std::string> strategies{"silent"};
  int seeds = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string csv = "-";
  std::string summary;
};

int cmd_sweep(const SweepArgs& args) {
  if (args.n_list.empty()) throw CLI::ValidationError("--n", "empty sweep schedule");
  std::vector<std::string> strategies = args.strategies;
  if (strategies.size() == 1 && strategies[0] == "all") strategies = adversary_names();
  const std::uint64_t base_seed = args.seed_given ? args.seed : default_seed();

  struct Job {
    int n;
    int t;
    std::int64_t ell;
    std::string strategy;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int n : args.n_list) {
    const auto ell = static_cast<std::int64_t>(std::ceil(std::pow(double(n), args.alpha)));
    const auto t_raw = static_cast<std::int64_t>(std::floor(std::pow(double(n), args.delta)));
    const int t = static_cast<int>(std::min<std::int64_t>(n - 1, t_raw) / 3);
    for (const auto& strategy : strategies)
      for (int s = 0; s < args.seeds; ++s)
        jobs.push_back({n, t, std::max<std::int64_t>(ell, 1), strategy,
                        base_seed + static_cast<std::uint64_t>(s)});
  }

  std::vector<RunRecord> records(jobs.size());
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    try {
      const CodeParams params = derive(job.n, job.t, job.ell, 16);
      const auto faulty = last_t_ids(job.n, job.t);
      Rng rng(splitmix64(job.seed * 7919ULL + static_cast<std::uint64_t>(job.n)));
      const MessageValue base = MessageValue::random(job.ell, rng);
      std::map<ProcId, MessageValue> inputs;
      auto adversary = make_adversary(job.strategy, params, faulty, job.seed, base,
                                      job.strategy == "consistency" ? &inputs : nullptr);
      if (job.strategy != "consistency")
        for (ProcId id = 1; id <= job.n; ++id)
          if (!faulty.count(id)) inputs.emplace(id, base);
      records[i] = run_ba(inputs, *adversary, params, {.seed = job.seed});
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      failed = true;
      if (first_error.empty()) first_error = e.what();
    }
  });
  if (failed) throw std::runtime_error("sweep execution failed: " + first_error);

  std::ostringstream csv;
  csv << csv_header() << '\n';
  for (const RunRecord& rec : records) csv << csv_row(rec) << '\n';
  write_text(args.csv, csv.str());

  const ExponentEstimate est = estimate_exponent(records, args.alpha, args.delta);
  double k_min = 1e300, k_max = 0;
  for (const RunRecord& rec : records) {
    const double k = fitted_bound_constant(rec);
    k_min = std::min(k_min, k);
    k_max = std::max(k_max, k);
  }
  nlohmann::ordered_json summary;
  summary["alpha"] = est.alpha;
  summary["delta"] = est.delta;
  summary["points"] = est.points;
  summary["beta_hat_excl_obc"] = est.beta_hat;
  summary["beta_hat_incl_obc"] = est.beta_hat_with_obc;
  summary["fit_residual"] = est.residual;
  summary["bound_constant_min"] = k_min;
  summary["bound_constant_max"] = k_max;
  if (!args.summary.empty()) write_text(args.summary, summary.dump(2));
  if (args.csv != "-" && args.summary.empty()) std::cout << summary.dump(2) << '\n';

  bool all_ok = true;
  for (const RunRecord& rec : records) all_ok = all_ok && rec.flags.all_ok();
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded Byzantine agreement simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "execute one agreement and write a JSON record");
  run->add_option("--mode", run_args.mode, "ba | bb | ba-committee")
      ->check(CLI::IsMember({"ba", "bb", "ba-committee"}));
  run->add_option("--n", run_args.n, "processor count")->required();
  run->add_option("--t", run_args.t, "faulty bound")->required();
  run->add_option("--l", run_args.ell, "message length in bits")->required();
  run->add_option("--w", run_args.w, "field width (4, 8 or 16)");
  run->add_option("--adversary", run_args.adversary, "silent | random | validity | consistency | equivocator");
  run->add_option("--input", run_args.input, "all-equal:<hex> | split:<hexA>,<hexB>[,countA] | random");
  auto* seed_opt = run->add_option("--seed", run_args.seed, "deterministic seed (fallback: COOL_SEED)");
  run->add_option("--out", run_args.out, "JSON output path, - for stdout");
  run->add_option("--transcript", run_args.transcript_path, "write the message transcript here");
  run->add_option("--leader", run_args.leader, "leader id (bb mode)");
  run->add_option("--leader-value", run_args.leader_value_hex, "leader value hex (bb mode)");
  auto* cseed_opt = run->add_option("--committee-seed", run_args.committee_seed,
                                    "seeded committee selection (ba-committee mode)");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "run a schedule of executions; CSV + summary");
  sweep->add_option("--n", sweep_args.n_list, "processor counts, e.g. --n 16 31 61 121")
      ->required()
      ->delimiter(',');
  sweep->add_option("--alpha", sweep_args.alpha, "message size exponent: l = ceil(n^alpha)");
  sweep->add_option("--delta", sweep_args.delta, "faulty size exponent: t = floor(min(n-1, n^delta)/3)");
  sweep->add_option("--strategies", sweep_args.strategies, "strategy list or 'all'")->delimiter(',');
  sweep->add_option("--seeds", sweep_args.seeds, "seeds per configuration")->check(CLI::PositiveNumber);
  auto* sweep_seed_opt = sweep->add_option("--seed", sweep_args.seed, "base seed");
  sweep->add_option("--csv", sweep_args.csv, "CSV output path, - for stdout");
  sweep->add_option("--summary", sweep_args.summary, "exponent summary JSON path");

  try {
    app.parse(argc, argv);
    run_args.seed_given = seed_opt->count() > 0;
    run_args.committee_seed_given = cseed_opt->count() > 0;
    sweep_args.seed_given = sweep_seed_opt->count() > 0;
    if (run->parsed()) return cmd_run(run_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ProtocolViolation& e) {
    std::cerr << "protocol invariant violated: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
