#pragma once

#include "compact/fcidump.hpp"
#include "compact/fermion.hpp"
#include "compact/screening.hpp"

#include <string>
#include <vector>

namespace compact {

enum class GeneratorKind {
  cluster_single,
  cluster_double,
  cluster_triple,  ///< only in the static UCCSDT pool
  scatterer,
};

std::string to_string(GeneratorKind kind);

/// kappa = S - S^dagger with S = a^+_{c0} a^+_{c1} ... a_{d1} a_{d0}.
struct Generator {
  GeneratorKind kind = GeneratorKind::cluster_double;
  std::vector<int> creation;
  std::vector<int> annihilation;
  std::size_t param_slot = 0;

  FermionOperator kappa() const;
  /// e.g. "a+4 a+10 a3 a1" for creation {4,10}, annihilation {1,3}.
  std::string label() const;
};

struct OperatorBlock {
  Generator tau;
  std::vector<Generator> sigmas;  ///< applied after tau, in order
  std::size_t block_rank = 0;
};

/// Disentangled unitary. Application order (first acts on the reference first):
/// the static pool, then blocks 0..N-1 (tau followed by its sigmas), then the singles tail.
struct Ansatz {
  std::string method;
  std::vector<Generator> pool;
  std::vector<OperatorBlock> blocks;
  std::vector<Generator> singles_tail;
  std::vector<double> initial_params;

  std::size_t n_params() const;
  /// Every generator in application order; generator k has param_slot k.
  std::vector<Generator> generators() const;
};

/// Doubles blocks in descending |t1st| with their scatterers, singles as the tail.
/// Doubles are seeded with t1st; scatterer slots with s1st when seed_scatterers,
/// otherwise zero; singles with zero.
Ansatz assemble_compact(const ScreeningLedger& ledger, bool seed_scatterers = false);

/// All spin-allowed singles then doubles in lexicographic order, doubles seeded with t1st.
Ansatz assemble_uccsd(const IntegralSystem& sys);
/// UCCSD followed by all spin-allowed triples (seeded at zero).
Ansatz assemble_uccsdt(const IntegralSystem& sys);

/// Initial vector for a COMPACT ansatz from a ledger.
std::vector<double> initial_parameters(const Ansatz& ansatz, const ScreeningLedger& ledger,
                                       bool seed_scatterers = false);

/// One generator per line: "slot kind label".
std::string circuit_ir(const Ansatz& ansatz);

}  // namespace compact
