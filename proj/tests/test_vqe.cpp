#include "compact/errors.hpp"
#include "compact/vqe.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace compact;

TEST(Vqe, ZeroParameterAnsatz) {
  const auto sys = oracle::load_system("lih_1.600.fcidump");
  const VqeResult r = run_vqe(Ansatz{}, sys, VqeOptions{});
  EXPECT_NEAR(r.energy, sys.hf_energy(), 1e-10);
  EXPECT_EQ(r.n_function_evals, 1u);
  EXPECT_TRUE(r.params.empty());
  EXPECT_TRUE(r.converged);
}

TEST(Vqe, H2ReachesFci) {
  const auto sys = oracle::load_system("h2_0.735.fcidump");
  const FciResult fci = fci_ground_state(sys);
  for (const Ansatz& a : {assemble_uccsd(sys), assemble_compact(run_screening(sys, ScreeningConfig{}))}) {
    const VqeResult r = run_vqe(a, sys, VqeOptions{}, &fci);
    EXPECT_NEAR(r.energy, fci.energy, 1e-9);
    EXPECT_TRUE(r.converged) << r.termination;
    ASSERT_TRUE(r.final_overlap.has_value());
    EXPECT_NEAR(*r.final_overlap, 1.0, 1e-8);
  }
}

TEST(Vqe, TraceAndVariationalBound) {
  const auto sys = oracle::load_system("lih_4.000.fcidump");
  const FciResult fci = fci_ground_state(sys);
  const Ansatz a = assemble_compact(run_screening(sys, ScreeningConfig::from_compact(5, 5, 4)));
  const VqeResult r = run_vqe(a, sys, VqeOptions{}, &fci);
  ASSERT_EQ(r.trace.size(), r.n_function_evals);
  double best = r.trace.front().energy;
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    EXPECT_EQ(r.trace[k].eval_index, k);
    EXPECT_GE(r.trace[k].energy, fci.energy - 1e-9);
    best = std::min(best, r.trace[k].energy);
  }
  EXPECT_EQ(r.energy, best);
  EXPECT_GE(r.energy, fci.energy - 1e-9);
  EXPECT_LT(r.energy, sys.hf_energy());

  const VqeResult again = run_vqe(a, sys, VqeOptions{}, &fci);
  EXPECT_EQ(again.params, r.params);
  EXPECT_EQ(again.energy, r.energy);
  EXPECT_EQ(again.n_function_evals, r.n_function_evals);
}

TEST(Vqe, EvaluationBudget) {
  const auto sys = oracle::load_system("lih_1.600.fcidump");
  VqeOptions opts;
  opts.max_function_evals = 5;
  const VqeResult r = run_vqe(assemble_uccsd(sys), sys, opts);
  EXPECT_LE(r.n_function_evals, 5u);
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.termination.empty());
  EXPECT_LE(r.energy, sys.hf_energy() + 1e-12);
}

TEST(Vqe, OptionValidation) {
  VqeOptions opts;
  opts.grad_tol = 0.0;
  EXPECT_THROW(opts.validate(), Error);
  opts = VqeOptions{};
  opts.max_function_evals = 0;
  EXPECT_THROW(opts.validate(), Error);
}

TEST(Vqe, TraceCsv) {
  std::ostringstream out;
  write_trace_csv(out, {{0, -1.5, 0.25}, {1, -1.75, std::nullopt}});
  EXPECT_EQ(out.str(), "eval_index,energy,overlap\n0,-1.5,0.25\n1,-1.75,\n");
}
