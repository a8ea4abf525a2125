#pragma once

#include "compact/ansatz.hpp"
#include "compact/fci.hpp"
#include "compact/simulator.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace compact {

struct VqeOptions {
  double grad_tol = 1e-7;  ///< on the gradient infinity-norm
  std::size_t max_function_evals = 10000;
  std::size_t trace_every = 1;
  int lbfgs_memory = 10;

  void validate() const;
};

struct TracePoint {
  std::size_t eval_index = 0;
  double energy = 0.0;
  std::optional<double> overlap;
};

struct VqeResult {
  double energy = 0.0;
  std::vector<double> params;
  std::size_t n_function_evals = 0;
  std::vector<TracePoint> trace;
  bool converged = false;
  double gradient_norm = 0.0;  ///< infinity-norm at the returned parameters
  std::optional<double> final_overlap;
  std::string termination;
};

/// Quasi-Newton minimisation from ansatz.initial_params. Never throws on optimizer
/// failure; the best point seen is returned with converged = false.
VqeResult run_vqe(const Ansatz& ansatz, const IntegralSystem& sys, const VqeOptions& options,
                  const FciResult* fci = nullptr);

/// Same, with a precompiled circuit and Hamiltonian.
VqeResult run_vqe(const AnsatzCircuit& circuit, const Statevector& reference, const PauliOperator& hamiltonian,
                  std::vector<double> initial, const VqeOptions& options, const FciResult* fci = nullptr);

/// "eval_index,energy,overlap" rows; overlap left empty when unavailable.
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

}  // namespace compact
