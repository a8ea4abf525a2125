#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace compact {

/// Chemist-notation two-electron integrals (ij|kl) over spatial orbitals.
///
/// Only the canonical representative i>=j, k>=l, (ij)>=(kl) is stored; every
/// access folds the requested index quadruple onto it, so all eight
/// permutational images are always consistent.
class ChemistEri {
 public:
  ChemistEri() = default;
  explicit ChemistEri(std::size_t n_orbitals);

  std::size_t n_orbitals() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return values_[canonical_index(i, j, k, l)];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, std::size_t l, double value) {
    values_[canonical_index(i, j, k, l)] = value;
  }

  /// Position of the canonical representative in the packed storage.
  std::size_t canonical_index(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const noexcept;
  std::size_t packed_size() const noexcept { return values_.size(); }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Contents of an FCIDUMP file, still in spatial orbitals.
struct FcidumpData {
  std::size_t n_orbitals = 0;
  std::size_t n_electrons = 0;
  int ms2 = 0;
  std::vector<int> orbital_symmetries;
  Eigen::MatrixXd one_body;
  ChemistEri two_body;
  double core_energy = 0.0;
  /// Values of `e i 0 0 0` records, when the writer emitted them.
  std::vector<std::optional<double>> orbital_energies;
};

FcidumpData parse_fcidump(std::istream& in);
FcidumpData parse_fcidump(const std::string& text);
FcidumpData read_fcidump(const std::filesystem::path& path);

/// Writes every nonzero canonical entry (|v| > 1e-15) with 17 significant digits.
std::string write_fcidump(const FcidumpData& data);

/// Spin-orbital view of a closed-shell system in blocked order: spin-orbital p < n
/// is spatial orbital p with alpha spin, p >= n is spatial orbital p - n with beta spin.
class IntegralSystem {
 public:
  std::size_t n_spin_orbitals() const noexcept { return n_spin_; }
  std::size_t n_spatial_orbitals() const noexcept { return n_spin_ / 2; }
  std::size_t n_electrons() const noexcept { return n_electrons_; }
  const std::vector<int>& occupied() const noexcept { return occupied_; }
  const std::vector<int>& virtuals() const noexcept { return virtual_; }
  bool is_occupied(int p) const { return occupied_mask_.at(static_cast<std::size_t>(p)); }
  /// Spin label of a spin-orbital: 0 for alpha, 1 for beta.
  int spin(int p) const noexcept { return static_cast<std::size_t>(p) < n_spatial_orbitals() ? 0 : 1; }

  const std::vector<double>& orbital_energy() const noexcept { return orbital_energy_; }
  double orbital_energy(int p) const { return orbital_energy_.at(static_cast<std::size_t>(p)); }
  const Eigen::MatrixXd& h1() const noexcept { return h1_; }
  double h1(int p, int q) const { return h1_(p, q); }
  /// Antisymmetrized integral <pq||rs> = <pq|rs> - <pq|sr>.
  double v(int p, int q, int r, int s) const noexcept {
    const std::size_t n = n_spin_;
    return v_[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }
  double core_energy() const noexcept { return core_energy_; }

  /// E_HF = E_core + sum_i h_ii + 1/2 sum_ij <ij||ij>.
  double hf_energy() const;
  /// Diagnostics collected during construction (e.g. orbital-energy mismatches).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend IntegralSystem to_spin_orbitals(const FcidumpData& data, std::size_t n_frozen_spatial);

  std::size_t n_spin_ = 0;
  std::size_t n_electrons_ = 0;
  std::vector<int> occupied_;
  std::vector<int> virtual_;
  std::vector<bool> occupied_mask_;
  std::vector<double> orbital_energy_;
  Eigen::MatrixXd h1_;
  std::vector<double> v_;
  double core_energy_ = 0.0;
  std::vector<std::string> warnings_;
};

/// Expands spatial integrals to blocked spin orbitals and recomputes orbital
/// energies from the Fock diagonal. Frozen cores must be folded upstream, so
/// n_frozen_spatial > 0 is rejected.
IntegralSystem to_spin_orbitals(const FcidumpData& data, std::size_t n_frozen_spatial = 0);

/// sum over holes of eps minus sum over particles of eps.
double mp_denominator(const IntegralSystem& sys, std::span<const int> holes, std::span<const int> particles);

}  // namespace compact
