#include "compact/ansatz.hpp"

#include "compact/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace compact {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::cluster_single: return "cluster_single";
    case GeneratorKind::cluster_double: return "cluster_double";
    case GeneratorKind::cluster_triple: return "cluster_triple";
    case GeneratorKind::scatterer: return "scatterer";
  }
  return "unknown";
}

FermionOperator Generator::kappa() const { return FermionOperator::antihermitian(creation, annihilation); }

std::string Generator::label() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& op : excitation_string(creation, annihilation)) {
    out << (first ? "" : " ") << 'a' << (op.dagger ? "+" : "") << op.orbital;
    first = false;
  }
  return out.str();
}

std::size_t Ansatz::n_params() const {
  std::size_t n = pool.size() + singles_tail.size();
  for (const auto& b : blocks) n += 1 + b.sigmas.size();
  return n;
}

std::vector<Generator> Ansatz::generators() const {
  std::vector<Generator> out(pool.begin(), pool.end());
  for (const auto& b : blocks) {
    out.push_back(b.tau);
    out.insert(out.end(), b.sigmas.begin(), b.sigmas.end());
  }
  out.insert(out.end(), singles_tail.begin(), singles_tail.end());
  return out;
}

namespace {

Generator make_generator(GeneratorKind kind, std::vector<int> creation, std::vector<int> annihilation,
                         std::size_t& slot) {
  return {kind, std::move(creation), std::move(annihilation), slot++};
}

Generator scatterer_generator(const std::array<int, 4>& idx, std::size_t& slot) {
  return make_generator(GeneratorKind::scatterer, {idx[0], idx[1]}, {idx[2], idx[3]}, slot);
}

double seed_double(const IntegralSystem& sys, int a, int b, int i, int j) {
  const double v = sys.v(a, b, i, j);
  const double delta = sys.orbital_energy(i) + sys.orbital_energy(j) - sys.orbital_energy(a) - sys.orbital_energy(b);
  return std::abs(delta) < 1e-10 ? 0.0 : v / delta;
}

std::vector<std::pair<int, int>> spin_allowed_singles(const IntegralSystem& sys) {
  std::vector<std::pair<int, int>> out;
  for (int a : sys.virtuals()) {
    for (int i : sys.occupied()) {
      if (sys.spin(a) == sys.spin(i)) out.emplace_back(a, i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Ascending k-subsets of `pool`.
void subsets(const std::vector<int>& pool, std::size_t k, std::size_t start, std::vector<int>& current,
             std::vector<std::vector<int>>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t x = start; x < pool.size(); ++x) {
    current.push_back(pool[x]);
    subsets(pool, k, x + 1, current, out);
    current.pop_back();
  }
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> spin_allowed(const IntegralSystem& sys, std::size_t rank) {
  std::vector<int> vir = sys.virtuals(), occ = sys.occupied();
  std::sort(vir.begin(), vir.end());
  std::sort(occ.begin(), occ.end());
  std::vector<std::vector<int>> ps, hs;
  std::vector<int> scratch;
  subsets(vir, rank, 0, scratch, ps);
  subsets(occ, rank, 0, scratch, hs);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (const auto& p : ps) {
    for (const auto& h : hs) {
      if (conserves_sz(sys, p, h)) out.emplace_back(p, h);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Ansatz assemble_compact(const ScreeningLedger& ledger, bool seed_scatterers) {
  Ansatz ansatz;
  ansatz.method = ledger.config.label();
  std::size_t slot = 0;
  std::size_t rank = 0;
  for (const auto& plan : plan_blocks(ledger)) {
    OperatorBlock block;
    block.block_rank = rank++;
    block.tau = make_generator(GeneratorKind::cluster_double, {plan.cluster[0], plan.cluster[1]},
                               {plan.cluster[2], plan.cluster[3]}, slot);
    for (const auto* t : plan.triples) block.sigmas.push_back(scatterer_generator(t->selected_pathway().scatterer, slot));
    for (const auto* q : plan.quadruples) block.sigmas.push_back(scatterer_generator(q->scatterer, slot));
    ansatz.blocks.push_back(std::move(block));
  }
  for (const auto& s : ledger.singles) {
    ansatz.singles_tail.push_back(make_generator(GeneratorKind::cluster_single, {s.indices[0]}, {s.indices[1]}, slot));
  }
  ansatz.initial_params = initial_parameters(ansatz, ledger, seed_scatterers);
  return ansatz;
}

std::vector<double> initial_parameters(const Ansatz& ansatz, const ScreeningLedger& ledger, bool seed_scatterers) {
  std::map<std::array<int, 4>, double> doubles, scatterers;
  for (const auto& d : ledger.doubles) doubles[d.indices] = d.t1st;
  for (const auto& s : ledger.scatterers) scatterers[s.indices()] = s.s1st;
  std::vector<double> params(ansatz.n_params(), 0.0);
  for (const auto& g : ansatz.generators()) {
    if (g.param_slot >= params.size()) throw LedgerInconsistencyError("parameter slot out of range");
    if (g.creation.size() != 2) continue;
    const std::array<int, 4> key{g.creation[0], g.creation[1], g.annihilation[0], g.annihilation[1]};
    if (g.kind == GeneratorKind::cluster_double) {
      const auto it = doubles.find(key);
      if (it == doubles.end()) throw LedgerInconsistencyError("block double missing from the ledger");
      params[g.param_slot] = it->second;
    } else if (g.kind == GeneratorKind::scatterer && seed_scatterers) {
      const auto it = scatterers.find(key);
      if (it != scatterers.end()) params[g.param_slot] = it->second;
    }
  }
  return params;
}

Ansatz assemble_uccsd(const IntegralSystem& sys) {
  Ansatz ansatz;
  ansatz.method = "uccsd";
  std::size_t slot = 0;
  for (const auto& [a, i] : spin_allowed_singles(sys)) {
    ansatz.pool.push_back(make_generator(GeneratorKind::cluster_single, {a}, {i}, slot));
    ansatz.initial_params.push_back(0.0);
  }
  for (const auto& [p, h] : spin_allowed(sys, 2)) {
    ansatz.pool.push_back(make_generator(GeneratorKind::cluster_double, p, h, slot));
    ansatz.initial_params.push_back(seed_double(sys, p[0], p[1], h[0], h[1]));
  }
  return ansatz;
}

Ansatz assemble_uccsdt(const IntegralSystem& sys) {
  Ansatz ansatz = assemble_uccsd(sys);
  ansatz.method = "uccsdt";
  std::size_t slot = ansatz.pool.size();
  for (const auto& [p, h] : spin_allowed(sys, 3)) {
    ansatz.pool.push_back(make_generator(GeneratorKind::cluster_triple, p, h, slot));
    ansatz.initial_params.push_back(0.0);
  }
  return ansatz;
}

std::string circuit_ir(const Ansatz& ansatz) {
  std::ostringstream out;
  for (const auto& g : ansatz.generators()) out << g.param_slot << ' ' << to_string(g.kind) << ' ' << g.label() << '\n';
  return out.str();
}

}  // namespace compact
