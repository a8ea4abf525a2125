#include "compact/vqe.hpp"

#include "compact/errors.hpp"

#include <ceres/gradient_problem.h>
#include <ceres/gradient_problem_solver.h>
#include <ceres/iteration_callback.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace compact {

void VqeOptions::validate() const {
  if (!(grad_tol > 0.0)) throw Error("grad_tol must be positive");
  if (max_function_evals == 0) throw Error("max_function_evals must be positive");
  if (trace_every == 0) throw Error("trace_every must be positive");
  if (lbfgs_memory <= 0) throw Error("L-BFGS memory must be positive");
}

namespace {

double inf_norm(const std::vector<double>& g) {
  double m = 0.0;
  for (double v : g) m = std::max(m, std::abs(v));
  return m;
}

struct Tracker {
  Tracker(const AnsatzCircuit& c, const Statevector& r, const PauliOperator& h, const FciResult* f,
          const VqeOptions& o, VqeResult& res)
      : circuit(&c), reference(&r), hamiltonian(&h), fci(f), options(&o), result(&res) {}

  const AnsatzCircuit* circuit;
  const Statevector* reference;
  const PauliOperator* hamiltonian;
  const FciResult* fci;
  const VqeOptions* options;
  VqeResult* result;
  double best_energy = std::numeric_limits<double>::infinity();
  double best_gradient_norm = 0.0;
  std::optional<double> best_overlap;

  EnergyGradient evaluate(const double* x) {
    std::span<const double> params(x, circuit->n_params);
    EnergyGradient eg = energy_and_gradient(*circuit, *reference, params, *hamiltonian);
    const std::size_t index = result->n_function_evals++;
    std::optional<double> overlap;
    if (fci) overlap = overlap_with_fci(eg.state, *fci);
    if (index % options->trace_every == 0) result->trace.push_back({index, eg.energy, overlap});
    if (eg.energy < best_energy) {
      best_energy = eg.energy;
      best_gradient_norm = inf_norm(eg.gradient);
      best_overlap = overlap;
      result->params.assign(params.begin(), params.end());
    }
    return eg;
  }
};

class EnergyFunction final : public ceres::FirstOrderFunction {
 public:
  explicit EnergyFunction(Tracker& tracker) : tracker_(tracker) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    if (tracker_.result->n_function_evals >= tracker_.options->max_function_evals) return false;
    const EnergyGradient eg = tracker_.evaluate(parameters);
    *cost = eg.energy;
    if (gradient) std::copy(eg.gradient.begin(), eg.gradient.end(), gradient);
    return true;
  }
  int NumParameters() const override { return static_cast<int>(tracker_.circuit->n_params); }

 private:
  Tracker& tracker_;
};

class BudgetCallback final : public ceres::IterationCallback {
 public:
  explicit BudgetCallback(const Tracker& tracker) : tracker_(tracker) {}
  ceres::CallbackReturnType operator()(const ceres::IterationSummary&) override {
    return tracker_.result->n_function_evals >= tracker_.options->max_function_evals ? ceres::SOLVER_ABORT
                                                                                     : ceres::SOLVER_CONTINUE;
  }

 private:
  const Tracker& tracker_;
};

}  // namespace

VqeResult run_vqe(const AnsatzCircuit& circuit, const Statevector& reference, const PauliOperator& hamiltonian,
                  std::vector<double> initial, const VqeOptions& options, const FciResult* fci) {
  options.validate();
  if (initial.size() != circuit.n_params) throw DimensionError("initial vector length differs from the ansatz");
  VqeResult result;
  Tracker tracker(circuit, reference, hamiltonian, fci, options, result);

  if (circuit.n_params == 0) {
    const EnergyGradient eg = tracker.evaluate(initial.data());
    result.energy = eg.energy;
    result.converged = true;
    result.final_overlap = tracker.best_overlap;
    result.termination = "no parameters";
    return result;
  }

  ceres::GradientProblemSolver::Options solver_options;
  solver_options.line_search_direction_type = ceres::LBFGS;
  solver_options.line_search_type = ceres::WOLFE;
  solver_options.max_lbfgs_rank = options.lbfgs_memory;
  solver_options.max_num_iterations = static_cast<int>(std::min<std::size_t>(options.max_function_evals, 1000000));
  solver_options.gradient_tolerance = options.grad_tol;
  solver_options.function_tolerance = 1e-16;
  solver_options.parameter_tolerance = 1e-16;
  solver_options.logging_type = ceres::SILENT;
  solver_options.minimizer_progress_to_stdout = false;
  BudgetCallback budget(tracker);
  solver_options.callbacks.push_back(&budget);

  ceres::GradientProblem problem(new EnergyFunction(tracker));
  ceres::GradientProblemSolver::Summary summary;
  std::vector<double> x = initial;
  ceres::Solve(solver_options, problem, x.data(), &summary);

  result.energy = tracker.best_energy;
  result.gradient_norm = tracker.best_gradient_norm;
  result.final_overlap = tracker.best_overlap;
  result.converged = summary.termination_type == ceres::CONVERGENCE || result.gradient_norm < options.grad_tol;
  result.termination = summary.message;
  return result;
}

VqeResult run_vqe(const Ansatz& ansatz, const IntegralSystem& sys, const VqeOptions& options, const FciResult* fci) {
  const int n_qubits = static_cast<int>(sys.n_spin_orbitals());
  const AnsatzCircuit circuit = compile_ansatz(ansatz, n_qubits);
  const Statevector reference = prepare_reference(sys);
  const PauliOperator hamiltonian(jw_map_hamiltonian(sys));
  return run_vqe(circuit, reference, hamiltonian, ansatz.initial_params, options, fci);
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << "eval_index,energy,overlap\n";
  char buf[96];
  for (const auto& t : trace) {
    std::snprintf(buf, sizeof buf, "%zu,%.15g,", t.eval_index, t.energy);
    out << buf;
    if (t.overlap) {
      std::snprintf(buf, sizeof buf, "%.15g", *t.overlap);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace compact
