#include "compact/json_io.hpp"

namespace compact {

using nlohmann::ordered_json;

ordered_json to_json(const ScreeningConfig& config) {
  ordered_json j;
  j["label"] = config.label();
  j["eps1"] = config.eps1;
  j["eps2"] = config.eps2;
  j["eps3"] = config.eps3;
  j["max_order"] = config.max_order;
  j["include_quadruples"] = config.include_quadruples;
  j["eps_q"] = config.quadruple_threshold();
  j["delta_floor"] = config.delta_floor;
  return j;
}

ordered_json to_json(const ScreeningLedger& ledger) {
  ordered_json j;
  j["config"] = to_json(ledger.config);
  j["counts"] = {{"doubles", ledger.n_doubles()},
                 {"scatterers", ledger.scatterers.size()},
                 {"triples", ledger.n_triples()},
                 {"singles", ledger.n_singles()},
                 {"quadruples", ledger.quadruples.size()},
                 {"n_params", ledger.n_doubles() + ledger.n_triples() + ledger.n_singles() + ledger.quadruples.size()}};
  j["mp2_correlation_screened"] = mp2_energy(ledger.doubles);

  auto& doubles = j["doubles"] = ordered_json::array();
  for (const auto& d : ledger.doubles) {
    doubles.push_back({{"indices", d.indices}, {"v", d.v}, {"delta", d.delta}, {"t1st", d.t1st}});
  }
  auto& scatterers = j["scatterers"] = ordered_json::array();
  for (const auto& s : ledger.scatterers) {
    scatterers.push_back({{"creation", s.creation},
                          {"annihilation", s.annihilation},
                          {"kind", s.kind == ScattererKind::hole_contractible ? "hole_contractible"
                                                                              : "particle_contractible"},
                          {"contractible_index", s.contractible_index},
                          {"v", s.v},
                          {"delta", s.delta},
                          {"s1st", s.s1st}});
  }
  auto& triples = j["triples"] = ordered_json::array();
  for (const auto& t : ledger.triples) {
    ordered_json pathways = ordered_json::array();
    for (const auto& p : t.pathways) {
      pathways.push_back({{"scatterer", p.scatterer}, {"cluster", p.cluster}, {"contribution", p.contribution}});
    }
    triples.push_back({{"indices", t.indices},
                       {"delta", t.delta},
                       {"total", t.total},
                       {"selected", t.selected},
                       {"pathways", std::move(pathways)}});
  }
  auto& singles = j["singles"] = ordered_json::array();
  for (const auto& s : ledger.singles) singles.push_back({{"indices", s.indices}, {"contribution", s.contribution}});
  auto& quadruples = j["quadruples"] = ordered_json::array();
  for (const auto& q : ledger.quadruples) {
    quadruples.push_back({{"indices", q.indices},
                          {"scatterer", q.scatterer},
                          {"triple", q.triple},
                          {"cluster", q.cluster},
                          {"contribution", q.contribution},
                          {"total", q.total}});
  }
  return j;
}

ordered_json to_json(const Generator& gen) {
  return {{"slot", gen.param_slot},
          {"kind", to_string(gen.kind)},
          {"creation", gen.creation},
          {"annihilation", gen.annihilation},
          {"label", gen.label()}};
}

ordered_json to_json(const Ansatz& ansatz) {
  ordered_json j;
  j["method"] = ansatz.method;
  j["n_params"] = ansatz.n_params();
  auto& pool = j["pool"] = ordered_json::array();
  for (const auto& g : ansatz.pool) pool.push_back(to_json(g));
  auto& blocks = j["blocks"] = ordered_json::array();
  for (const auto& b : ansatz.blocks) {
    ordered_json sigmas = ordered_json::array();
    for (const auto& s : b.sigmas) sigmas.push_back(to_json(s));
    blocks.push_back({{"rank", b.block_rank}, {"tau", to_json(b.tau)}, {"sigmas", std::move(sigmas)}});
  }
  auto& tail = j["singles_tail"] = ordered_json::array();
  for (const auto& g : ansatz.singles_tail) tail.push_back(to_json(g));
  j["initial_params"] = ansatz.initial_params;
  return j;
}

ordered_json to_json(const ResourceCount& rc) {
  return {{"n_params", rc.n_params}, {"n_cnot", rc.n_cnot}, {"n_pauli_rotations", rc.n_pauli_rotations}};
}

ordered_json to_json(const ScanRecord& r) {
  return {{"geometry_label", r.geometry_label},
          {"fcidump_path", r.fcidump_path},
          {"method", r.method},
          {"status", r.status},
          {"message", r.message},
          {"e_hf", r.e_hf},
          {"e_mp2", r.e_mp2},
          {"e_vqe", r.e_vqe},
          {"e_fci", r.e_fci},
          {"error_vs_fci", r.error_vs_fci},
          {"n_params", r.n_params},
          {"n_cnot", r.n_cnot},
          {"n_function_evals", r.n_function_evals},
          {"final_overlap", r.final_overlap}};
}

}  // namespace compact
