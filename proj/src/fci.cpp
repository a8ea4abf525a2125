#include "compact/fci.hpp"

#include "compact/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace compact {

std::vector<Determinant> sector_determinants(const IntegralSystem& sys) {
  const int n = static_cast<int>(sys.n_spatial_orbitals());
  int n_alpha = 0, n_beta = 0;
  for (int i : sys.occupied()) (sys.spin(i) == 0 ? n_alpha : n_beta)++;
  const Determinant alpha_mask = (Determinant{1} << n) - 1;
  std::vector<Determinant> basis;
  const Determinant dim = Determinant{1} << (2 * n);
  for (Determinant d = 0; d < dim; ++d) {
    if (std::popcount(d & alpha_mask) == n_alpha && std::popcount(d >> n) == n_beta) basis.push_back(d);
  }
  return basis;
}

Eigen::MatrixXd sector_hamiltonian(const IntegralSystem& sys, const std::vector<Determinant>& basis) {
  const int n = static_cast<int>(sys.n_spin_orbitals());
  std::unordered_map<Determinant, Eigen::Index> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = static_cast<Eigen::Index>(k);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim) * sys.core_energy();

  for (Eigen::Index col = 0; col < dim; ++col) {
    const Determinant det = basis[static_cast<std::size_t>(col)];
    auto accumulate = [&](std::span<const Ladder> ops, double value) {
      const auto r = apply_string(ops, det);
      if (!r) return;
      const auto it = index.find(r->det);
      if (it != index.end()) h(it->second, col) += r->sign * value;
    };
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const double v = sys.h1(p, q);
        if (v == 0.0) continue;
        const Ladder ops[] = {{p, true}, {q, false}};
        accumulate(ops, v);
      }
    }
    for (int r = 0; r < n; ++r) {
      if (!(det & bit(r))) continue;
      for (int s = r + 1; s < n; ++s) {
        if (!(det & bit(s))) continue;
        for (int p = 0; p < n; ++p) {
          for (int q = p + 1; q < n; ++q) {
            const double v = sys.v(p, q, r, s);
            if (v == 0.0) continue;
            const Ladder ops[] = {{p, true}, {q, true}, {s, false}, {r, false}};
            accumulate(ops, v);
          }
        }
      }
    }
  }
  return h;
}

FciResult fci_ground_state(const IntegralSystem& sys, std::size_t max_spin_orbitals) {
  if (sys.n_spin_orbitals() > max_spin_orbitals) {
    throw CapacityError("FCI limited to " + std::to_string(max_spin_orbitals) + " spin-orbitals");
  }
  const auto basis = sector_determinants(sys);
  const Eigen::MatrixXd h = sector_hamiltonian(sys, basis);
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10) throw HermiticityError("sector Hamiltonian is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw Error("sector diagonalization failed");

  FciResult out;
  out.sector_dimension = basis.size();
  out.energy = solver.eigenvalues()[0];
  out.n_electrons = static_cast<int>(sys.n_electrons());
  out.ms2 = 0;
  const int n_qubits = static_cast<int>(sys.n_spin_orbitals());
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (solver.eigenvalues()[k] - out.energy > 1e-8) break;
    Statevector v(n_qubits, 0, n_qubits);
    v.amplitudes().setZero();
    const Eigen::VectorXd col = solver.eigenvectors().col(k);
    for (std::size_t b = 0; b < basis.size(); ++b) v.amplitudes()[static_cast<Eigen::Index>(basis[b])] = col[static_cast<Eigen::Index>(b)];
    out.ground_manifold.push_back(std::move(v));
  }
  out.ground_state = out.ground_manifold.front();
  out.residual = (h * solver.eigenvectors().col(0) - out.energy * solver.eigenvectors().col(0)).norm();
  return out;
}

double overlap_with_fci(const Statevector& state, const FciResult& fci) {
  if (state.n_qubits() != fci.ground_state.n_qubits()) throw DimensionError("state and FCI qubit counts differ");
  double w = 0.0;
  for (const auto& g : fci.ground_manifold) w += std::norm(g.amplitudes().dot(state.amplitudes()));
  return std::clamp(w, 0.0, 1.0);
}

}  // namespace compact
