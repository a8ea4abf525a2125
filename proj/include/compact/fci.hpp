#pragma once

#include "compact/fcidump.hpp"
#include "compact/fermion.hpp"
#include "compact/simulator.hpp"

#include <Eigen/Dense>

#include <vector>

namespace compact {

struct FciResult {
  double energy = 0.0;
  Statevector ground_state;
  int n_electrons = 0;
  int ms2 = 0;
  /// Orthonormal basis of the ground manifold (states within 1e-8 of the minimum).
  std::vector<Statevector> ground_manifold;
  double residual = 0.0;
  std::size_t sector_dimension = 0;
};

/// Determinants with the reference's alpha and beta occupation counts, ascending.
std::vector<Determinant> sector_determinants(const IntegralSystem& sys);

/// Hamiltonian on the sector built from second-quantized matrix elements.
Eigen::MatrixXd sector_hamiltonian(const IntegralSystem& sys, const std::vector<Determinant>& basis);

/// Lowest eigenpair in the reference's particle-number and Sz sector.
FciResult fci_ground_state(const IntegralSystem& sys, std::size_t max_spin_orbitals = 16);

/// Probability weight of `state` in the FCI ground manifold.
double overlap_with_fci(const Statevector& state, const FciResult& fci);

}  // namespace compact
