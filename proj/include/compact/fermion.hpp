#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace compact {

/// Occupation bitstring; bit p set means spin-orbital p is occupied.
using Determinant = std::uint64_t;

/// One ladder operator: creation (a_p^dagger) when `dagger`, annihilation otherwise.
struct Ladder {
  int orbital = 0;
  bool dagger = false;
  auto operator<=>(const Ladder&) const = default;
};

/// Result of applying an operator string to a determinant.
struct StringAction {
  Determinant det = 0;
  int sign = 1;
};

/// Applies the product ops[0] ops[1] ... ops[n-1] to |det> (rightmost acts first),
/// using the Jordan-Wigner phase convention: a_p picks up (-1)^(number of
/// occupied orbitals below p). Returns nullopt when the string annihilates det.
std::optional<StringAction> apply_string(std::span<const Ladder> ops, Determinant det);

/// a^dagger_{c0} a^dagger_{c1} ... a_{d_{k-1}} ... a_{d0}: the hole-particle
/// convention used for cluster operators, e.g. {a,b},{i,j} -> a_a^+ a_b^+ a_j a_i.
std::vector<Ladder> excitation_string(std::span<const int> creation, std::span<const int> annihilation);

/// Phase of the canonical excited determinant relative to the string that builds
/// it from `reference`: returns s such that excitation_string(c, d)|ref> = s |target>.
std::optional<StringAction> excite(Determinant reference, std::span<const int> creation, std::span<const int> annihilation);

inline Determinant bit(int p) { return Determinant{1} << p; }
std::vector<int> set_bits(Determinant det);

/// Symbolic second-quantized operator with real coefficients, kept in normal
/// order (creators left in descending orbital order, then annihilators in
/// descending order). Used for algebraic checks such as commutators.
class FermionOperator {
 public:
  using Term = std::vector<Ladder>;

  FermionOperator() = default;
  static FermionOperator identity(double coefficient = 1.0);
  static FermionOperator string(std::vector<Ladder> ops, double coefficient = 1.0);
  /// Cluster-type string minus its adjoint.
  static FermionOperator antihermitian(std::span<const int> creation, std::span<const int> annihilation);

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator-=(const FermionOperator& other);
  FermionOperator operator*(const FermionOperator& other) const;
  FermionOperator operator+(const FermionOperator& other) const;
  FermionOperator operator-(const FermionOperator& other) const;
  FermionOperator adjoint() const;

  /// Rewrites every term in canonical normal order and merges coefficients.
  FermionOperator normal_ordered(double drop_tolerance = 1e-14) const;
  bool is_zero(double tolerance = 1e-12) const;
  const std::map<Term, double>& terms() const noexcept { return terms_; }
  std::string to_string() const;

 private:
  std::map<Term, double> terms_;
};

FermionOperator commutator(const FermionOperator& a, const FermionOperator& b);

}  // namespace compact
