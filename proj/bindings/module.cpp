// Python bindings for the main operations: parameter derivation, the
// coding layer, collision crafting, and the three simulation drivers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cool/run.hpp"

namespace py = pybind11;
using namespace cool;

namespace {

MessageValue to_message(const py::bytes& data, std::int64_t ell) {
  const std::string raw = data;
  std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
  if (static_cast<std::int64_t>(bytes.size()) != (ell + 7) / 8)
    throw std::invalid_argument("payload must be exactly ceil(ell/8) bytes");
  return MessageValue(std::move(bytes), ell);
}

py::bytes from_message(const MessageValue& m) {
  return py::bytes(reinterpret_cast<const char*>(m.bytes.data()), m.bytes.size());
}

MessageBlock to_block(const std::vector<std::vector<FieldElem>>& columns) {
  if (columns.empty()) throw std::invalid_argument("block needs at least one column");
  const int k = static_cast<int>(columns.size());
  const int m = static_cast<int>(columns[0].size());
  MessageBlock block = MessageBlock::zeros(k, m);
  for (int j = 1; j <= k; ++j) {
    if (static_cast<int>(columns[static_cast<std::size_t>(j - 1)].size()) != m)
      throw std::invalid_argument("ragged block");
    for (int s = 0; s < m; ++s)
      block.cell(j, s) = columns[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(s)];
  }
  return block;
}

std::vector<std::vector<FieldElem>> from_block(const MessageBlock& block) {
  std::vector<std::vector<FieldElem>> columns;
  for (int j = 1; j <= block.k; ++j) columns.push_back(block.column(j).stripes);
  return columns;
}

py::dict record_to_dict_impl(const RunRecord& rec) {
  py::dict bits;
  bits["b1"] = rec.bits.b1;
  bits["b2"] = rec.bits.b2;
  bits["b3"] = rec.bits.b3;
  bits["b4"] = rec.bits.b4;
  bits["b5"] = rec.bits.b5;
  bits["b6"] = rec.bits.b6;
  bits["obc_bits"] = rec.bits.obc_bits;
  bits["leader_bits"] = rec.bits.leader_bits;
  bits["dissemination_bits"] = rec.bits.dissemination_bits;
  bits["total"] = rec.bits.total();
  bits["total_excl_obc"] = rec.bits.total_excl_obc();

  py::dict outputs;
  for (const auto& [id, value] : rec.outputs) {
    if (value)
      outputs[py::int_(id)] = from_message(*value);
    else
      outputs[py::int_(id)] = py::none();
  }

  py::dict flags;
  flags["terminated"] = rec.flags.terminated;
  flags["consistent"] = rec.flags.consistent;
  flags["valid_applicable"] = rec.flags.valid_applicable;
  flags["valid_holds"] = rec.flags.valid_holds;
  flags["lemma3_ok"] = rec.flags.lemma3_ok;
  flags["phase4_entry_ok"] = rec.flags.phase4_entry_ok;

  py::dict out;
  out["mode"] = rec.mode;
  out["adversary"] = rec.adversary;
  out["seed"] = rec.seed;
  out["n"] = rec.n;
  out["t"] = rec.t;
  out["l"] = rec.ell;
  out["w"] = rec.w;
  out["k"] = rec.k;
  out["c"] = rec.c;
  out["m"] = rec.m;
  out["rounds_total"] = rec.rounds_total;
  out["bits"] = bits;
  out["outputs"] = outputs;
  out["flags"] = flags;
  out["ok"] = rec.flags.all_ok();
  return out;
}

std::set<ProcId> default_faulty(int n, int t) {
  std::set<ProcId> out;
  for (ProcId id = n - t + 1; id <= n; ++id) out.insert(id);
  return out;
}

std::map<ProcId, MessageValue> convert_inputs(int n, std::int64_t ell,
                                              const std::set<ProcId>& faulty,
                                              const std::optional<std::map<int, py::bytes>>& inputs,
                                              const std::optional<py::bytes>& base,
                                              std::uint64_t seed) {
  std::map<ProcId, MessageValue> out;
  if (inputs) {
    for (const auto& [id, data] : *inputs) out.emplace(id, to_message(data, ell));
    return out;
  }
  Rng rng(splitmix64(seed ^ 0x9ab1ULL));
  const MessageValue value = base ? to_message(*base, ell) : MessageValue::random(ell, rng);
  for (ProcId id = 1; id <= n; ++id)
    if (!faulty.count(id)) out.emplace(id, value);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "coded Byzantine agreement: coding layer and simulation drivers";

  py::class_<CodeParams>(m, "CodeParams")
      .def_readonly("n", &CodeParams::n)
      .def_readonly("t", &CodeParams::t)
      .def_readonly("l", &CodeParams::ell)
      .def_readonly("k", &CodeParams::k)
      .def_readonly("c", &CodeParams::c)
      .def_readonly("w", &CodeParams::w)
      .def_readonly("m", &CodeParams::m)
      .def_property_readonly("correction_capacity", &CodeParams::correction_capacity)
      .def("__repr__", [](const CodeParams& p) {
        return "CodeParams(n=" + std::to_string(p.n) + ", t=" + std::to_string(p.t) +
               ", l=" + std::to_string(p.ell) + ", k=" + std::to_string(p.k) +
               ", c=" + std::to_string(p.c) + ", w=" + std::to_string(p.w) +
               ", m=" + std::to_string(p.m) + ")";
      });

  m.def("derive_params", &derive, py::arg("n"), py::arg("t"), py::arg("l"), py::arg("w") = 16,
        "Derive (k, c, m) for an (n, t) network on l-bit messages.");

  m.def(
      "committee",
      [](int n, int t, std::int64_t ell, int w, std::optional<std::uint64_t> seed) {
        const auto sel = committee_params(n, t, ell, w, seed);
        return py::make_tuple(sel.members, sel.params);
      },
      py::arg("n"), py::arg("t"), py::arg("l"), py::arg("w") = 16, py::arg("seed") = py::none(),
      "Pick the 3t+1 committee and its parameters (requires n > 3t+1).");

  m.def(
      "gf_mul",
      [](int w, FieldElem a, FieldElem b) { return Field::of(w).mul(a, b); },
      py::arg("w"), py::arg("a"), py::arg("b"));
  m.def(
      "gf_inv", [](int w, FieldElem a) { return Field::of(w).inv(a); }, py::arg("w"),
      py::arg("a"));
  m.def(
      "gf_add", [](FieldElem a, FieldElem b) { return Field::add(a, b); }, py::arg("a"),
      py::arg("b"));

  m.def(
      "lagrange_vector",
      [](int w, int i, int k) { return lagrange_vector(Field::of(w), i, k).coeffs; },
      py::arg("w"), py::arg("i"), py::arg("k"),
      "Row i of the code's generator over GF(2^w).");

  m.def(
      "encode",
      [](int w, const std::vector<std::vector<FieldElem>>& block, int i) {
        return encode(Field::of(w), to_block(block), i).stripes;
      },
      py::arg("w"), py::arg("block"), py::arg("i"),
      "Encode a k x m block (list of k columns) at label i.");

  m.def(
      "decode",
      [](int w, const std::vector<std::pair<int, std::vector<FieldElem>>>& observations, int k,
         int max_errors) -> std::optional<std::vector<std::vector<FieldElem>>> {
        std::vector<std::pair<int, Symbol>> obs;
        obs.reserve(observations.size());
        for (const auto& [idx, stripes] : observations) obs.emplace_back(idx, Symbol{stripes});
        const auto block = decode(Field::of(w), obs, k, max_errors);
        if (!block) return std::nullopt;
        return from_block(*block);
      },
      py::arg("w"), py::arg("observations"), py::arg("k"), py::arg("max_errors"),
      "Error-correcting decode; None when no codeword is within range.");

  m.def(
      "stripe",
      [](const py::bytes& data, const CodeParams& params) {
        return from_block(stripe_message(to_message(data, params.ell), params));
      },
      py::arg("data"), py::arg("params"));

  m.def(
      "unstripe",
      [](const std::vector<std::vector<FieldElem>>& block, const CodeParams& params) {
        return from_message(unstripe_message(to_block(block), params));
      },
      py::arg("block"), py::arg("params"));

  m.def(
      "craft_colliding_messages",
      [](const CodeParams& params, const std::set<ProcId>& collision_ids, const py::bytes& base) {
        const auto [m1, m2] = craft_colliding_messages(params, collision_ids,
                                                       to_message(base, params.ell));
        return py::make_tuple(from_message(m1), from_message(m2));
      },
      py::arg("params"), py::arg("collision_ids"), py::arg("base"),
      "Two messages whose encodings agree at every collision id.");

  m.def("adversaries", [] { return adversary_names(); });

  m.def(
      "run_ba",
      [](int n, int t, std::int64_t ell, const std::string& adversary, std::uint64_t seed, int w,
         std::optional<std::map<int, py::bytes>> inputs, std::optional<py::bytes> base) {
        const CodeParams params = derive(n, t, ell, w);
        const auto faulty = default_faulty(n, t);
        Rng rng(splitmix64(seed ^ 0x77aaULL));
        const MessageValue base_value =
            base ? to_message(*base, ell) : MessageValue::random(ell, rng);
        std::map<ProcId, MessageValue> honest_inputs;
        auto adv = make_adversary(adversary, params, faulty, seed, base_value,
                                  adversary == "consistency" ? &honest_inputs : nullptr);
        if (adversary != "consistency")
          honest_inputs = convert_inputs(n, ell, faulty, inputs, base, seed);
        return record_to_dict_impl(run_ba(honest_inputs, *adv, params, {.seed = seed}));
      },
      py::arg("n"), py::arg("t"), py::arg("l"), py::arg("adversary") = "silent",
      py::arg("seed") = 0, py::arg("w") = 16, py::arg("inputs") = py::none(),
      py::arg("base") = py::none(),
      "One agreement run; faulty ids are the last t. Returns the run record.");

  m.def(
      "run_bb",
      [](int n, int t, std::int64_t ell, ProcId leader, const py::bytes& leader_value,
         const std::string& adversary, std::uint64_t seed, int w) {
        const CodeParams params = derive(n, t, ell, w);
        const auto faulty = default_faulty(n, t);
        auto adv = make_adversary(adversary, params, faulty, seed,
                                  to_message(leader_value, ell), nullptr);
        return record_to_dict_impl(
            run_bb(leader, to_message(leader_value, ell), *adv, params, {.seed = seed}));
      },
      py::arg("n"), py::arg("t"), py::arg("l"), py::arg("leader"), py::arg("leader_value"),
      py::arg("adversary") = "silent", py::arg("seed") = 0, py::arg("w") = 16,
      "One broadcast run; a faulty leader equivocates by default.");

  m.def(
      "run_ba_committee",
      [](int n, int t, std::int64_t ell, const std::string& adversary, std::uint64_t seed, int w,
         std::optional<std::map<int, py::bytes>> inputs, std::optional<py::bytes> base) {
        const auto faulty = default_faulty(n, t);
        const CodeParams params = committee_params(n, t, ell, w).params;
        auto adv = make_adversary(adversary, params, faulty, seed,
                                  base ? to_message(*base, ell) : MessageValue::zeros(ell),
                                  nullptr);
        const auto honest_inputs = convert_inputs(n, ell, faulty, inputs, base, seed);
        return record_to_dict_impl(
            run_ba_committee(honest_inputs, *adv, n, t, ell, w, {.seed = seed}));
      },
      py::arg("n"), py::arg("t"), py::arg("l"), py::arg("adversary") = "silent",
      py::arg("seed") = 0, py::arg("w") = 16, py::arg("inputs") = py::none(),
      py::arg("base") = py::none(),
      "Committee-based run for n > 3t+1.");
}
