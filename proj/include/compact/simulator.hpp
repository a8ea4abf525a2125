#pragma once

#include "compact/ansatz.hpp"
#include "compact/fcidump.hpp"
#include "compact/pauli.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace compact {

/// Dense amplitudes; basis index bit q is the occupation of qubit q.
class Statevector {
 public:
  static constexpr int kDefaultMaxQubits = 20;

  Statevector() = default;
  /// |bits>, throwing CapacityError beyond max_qubits.
  Statevector(int n_qubits, std::uint64_t bits, int max_qubits = kDefaultMaxQubits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() noexcept { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  void require_normalized(double tolerance = 1e-10) const;

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amplitudes_;
};

/// Hartree-Fock determinant in blocked order.
Statevector prepare_reference(const IntegralSystem& sys, int max_qubits = Statevector::kDefaultMaxQubits);

/// exp(theta * c P) for a purely imaginary c = i b: cos(theta b) + i sin(theta b) P.
struct Rotation {
  PauliString pauli;
  double b = 0.0;
};

/// Image of one generator, rotations in canonical term order.
struct CompiledGenerator {
  std::size_t slot = 0;
  std::vector<Rotation> rotations;
  /// True when the rotations commute, so their product is the exact exponential.
  bool exact = true;
};

CompiledGenerator compile_generator(const PauliSum& image, std::size_t slot = 0);
/// Applies exp(theta * kappa) as the product of its rotations.
void apply_generator(Statevector& state, const CompiledGenerator& gen, double theta);
void apply_generator(Statevector& state, const PauliSum& image, double theta);
/// state <- exp(theta b i P) state.
void apply_rotation(Eigen::VectorXcd& amps, const Rotation& r, double theta);

/// Hermitian operator grouped by X mask for fast application.
class PauliOperator {
 public:
  explicit PauliOperator(const PauliSum& sum);
  int n_qubits() const noexcept { return n_qubits_; }
  /// out = H in.
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  /// <psi|H|psi>, throwing HermiticityError on an imaginary residue above tolerance.
  double expectation(const Statevector& state, double tolerance = 1e-10) const;

 private:
  struct ZTerm {
    std::uint64_t z;
    Complex coefficient;  ///< includes i^{n_y}
  };
  struct Group {
    std::uint64_t x;
    std::vector<ZTerm> terms;
  };
  int n_qubits_ = 0;
  std::vector<Group> groups_;
};

double expectation(const Statevector& state, const PauliSum& hamiltonian);

/// Ansatz compiled to rotations, generator k bound to parameter slot k.
struct AnsatzCircuit {
  int n_qubits = 0;
  std::vector<CompiledGenerator> generators;
  bool exact = true;
  std::size_t n_params = 0;
};

AnsatzCircuit compile_ansatz(const Ansatz& ansatz, int n_qubits);

Statevector prepare_state(const AnsatzCircuit& circuit, const Statevector& reference, std::span<const double> params);

struct EnergyGradient {
  double energy = 0.0;
  std::vector<double> gradient;
  Statevector state;
};

/// Energy by a forward sweep, gradient by a reverse sweep with three registers.
EnergyGradient energy_and_gradient(const AnsatzCircuit& circuit, const Statevector& reference,
                                   std::span<const double> params, const PauliOperator& hamiltonian);

/// Expectation of the total number operator.
double number_expectation(const Statevector& state);

}  // namespace compact
