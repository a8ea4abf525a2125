#pragma once

#include "compact/ansatz.hpp"
#include "compact/fcidump.hpp"
#include "compact/fermion.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <string>

namespace compact {

using Complex = std::complex<double>;

/// Tensor product of single-qubit Paulis. Qubit q carries X when only bit q of
/// x is set, Z when only bit q of z is set and Y when both are set.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  int weight() const noexcept;
  int n_y() const noexcept;
  char letter(int qubit) const noexcept;
  /// Letter string with qubit 0 leftmost, e.g. "XIYZ".
  std::string to_string(int n_qubits) const;
  static PauliString from_string(const std::string& letters);

  bool operator==(const PauliString&) const = default;
};

/// Product a * b = phase * c; returns {c, phase}.
std::pair<PauliString, Complex> multiply(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b) noexcept;

/// Orders strings as their letter strings compare (qubit 0 most significant, I < X < Y < Z).
struct PauliOrder {
  bool operator()(const PauliString& a, const PauliString& b) const noexcept;
};

class PauliSum {
 public:
  using Terms = std::map<PauliString, Complex, PauliOrder>;
  static constexpr double kDropTolerance = 1e-14;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}
  static PauliSum identity(int n_qubits, Complex coefficient = 1.0);

  int n_qubits() const noexcept { return n_qubits_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add(const PauliString& p, Complex c);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum operator*(const PauliSum& other) const;
  PauliSum operator*(Complex scalar) const;
  PauliSum adjoint() const;
  /// Drops terms with |coefficient| <= tolerance.
  PauliSum simplified(double tolerance = kDropTolerance) const;
  std::string to_string() const;

 private:
  int n_qubits_ = 0;
  Terms terms_;
};

/// Jordan-Wigner image of one ladder operator:
/// a_p^+ = (X_p - iY_p)/2 Z_{<p}, a_p = (X_p + iY_p)/2 Z_{<p}.
PauliSum jw_ladder(const Ladder& op, int n_qubits);
PauliSum jw_map(const FermionOperator& op, int n_qubits);
PauliSum jw_map_generator(const Generator& gen, int n_qubits);
/// H = E_core + sum h_pq a_p^+ a_q + sum_{p<q, r<s} <pq||rs> a_p^+ a_q^+ a_s a_r.
PauliSum jw_map_hamiltonian(const IntegralSystem& sys);

bool mutually_commuting(const PauliSum& sum);

struct ResourceCount {
  std::size_t n_params = 0;
  std::size_t n_cnot = 0;
  std::size_t n_pauli_rotations = 0;

  ResourceCount& operator+=(const ResourceCount& other);
  bool operator==(const ResourceCount&) const = default;
};

/// CNOT staircase: 2 (w - 1) CNOTs per weight-w rotation, no cancellation between rotations.
std::size_t staircase_cnots(const PauliString& p);
ResourceCount count_resources(const Ansatz& ansatz, int n_qubits);

/// One "exp(theta_k * (c) P)" line per rotation, in application order.
std::string rotation_listing(const Ansatz& ansatz, int n_qubits);

}  // namespace compact
