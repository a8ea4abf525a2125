#include "compact/pauli.hpp"

#include "compact/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace compact {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int letter_code(const PauliString& p, int q) {
  const bool x = (p.x >> q) & 1U, z = (p.z >> q) & 1U;
  return x ? (z ? 2 : 1) : (z ? 3 : 0);
}

}  // namespace

int PauliString::weight() const noexcept { return std::popcount(x | z); }
int PauliString::n_y() const noexcept { return std::popcount(x & z); }

char PauliString::letter(int qubit) const noexcept { return "IXYZ"[letter_code(*this, qubit)]; }

std::string PauliString::to_string(int n_qubits) const {
  std::string s;
  for (int q = 0; q < n_qubits; ++q) s += letter(q);
  return s;
}

PauliString PauliString::from_string(const std::string& letters) {
  if (letters.size() > 64) throw MappingError("Pauli strings are limited to 64 qubits");
  PauliString p;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    const std::uint64_t b = std::uint64_t{1} << q;
    switch (letters[q]) {
      case 'I': break;
      case 'X': p.x |= b; break;
      case 'Y': p.x |= b; p.z |= b; break;
      case 'Z': p.z |= b; break;
      default: throw MappingError(std::string("invalid Pauli letter '") + letters[q] + "'");
    }
  }
  return p;
}

std::pair<PauliString, Complex> multiply(const PauliString& a, const PauliString& b) {
  const std::uint64_t ay = a.x & a.z, ax = a.x & ~a.z, az = a.z & ~a.x;
  const std::uint64_t by = b.x & b.z, bx = b.x & ~b.z, bz = b.z & ~b.x;
  // XY = iZ, YZ = iX, ZX = iY; reversed orders pick up -i.
  const int plus = std::popcount(ax & by) + std::popcount(ay & bz) + std::popcount(az & bx);
  const int minus = std::popcount(ay & bx) + std::popcount(az & by) + std::popcount(ax & bz);
  const int power = ((plus - minus) % 4 + 4) % 4;
  return {{a.x ^ b.x, a.z ^ b.z}, kIPowers[power]};
}

bool commutes(const PauliString& a, const PauliString& b) noexcept {
  return (std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1) == 0;
}

bool PauliOrder::operator()(const PauliString& a, const PauliString& b) const noexcept {
  const std::uint64_t diff = (a.x ^ b.x) | (a.z ^ b.z);
  if (diff == 0) return false;
  const int q = std::countr_zero(diff);
  return letter_code(a, q) < letter_code(b, q);
}

PauliSum PauliSum::identity(int n_qubits, Complex coefficient) {
  PauliSum s(n_qubits);
  s.add({}, coefficient);
  return s;
}

void PauliSum::add(const PauliString& p, Complex c) { terms_[p] += c; }

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  n_qubits_ = std::max(n_qubits_, other.n_qubits_);
  for (const auto& [p, c] : other.terms_) terms_[p] += c;
  return *this;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  PauliSum out(std::max(n_qubits_, other.n_qubits_));
  for (const auto& [pa, ca] : terms_) {
    for (const auto& [pb, cb] : other.terms_) {
      const auto [pc, phase] = multiply(pa, pb);
      out.terms_[pc] += ca * cb * phase;
    }
  }
  return out;
}

PauliSum PauliSum::operator*(Complex scalar) const {
  PauliSum out = *this;
  for (auto& [p, c] : out.terms_) c *= scalar;
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out = *this;
  for (auto& [p, c] : out.terms_) c = std::conj(c);
  return out;
}

PauliSum PauliSum::simplified(double tolerance) const {
  PauliSum out(n_qubits_);
  for (const auto& [p, c] : terms_) {
    if (std::abs(c) > tolerance) out.terms_.emplace(p, c);
  }
  return out;
}

std::string PauliSum::to_string() const {
  std::ostringstream out;
  for (const auto& [p, c] : terms_) out << '(' << c.real() << ',' << c.imag() << ") " << p.to_string(n_qubits_) << '\n';
  return out.str();
}

PauliSum jw_ladder(const Ladder& op, int n_qubits) {
  if (op.orbital < 0 || op.orbital >= n_qubits || n_qubits > 64) {
    throw MappingError("orbital index " + std::to_string(op.orbital) + " outside " + std::to_string(n_qubits) +
                       " qubits");
  }
  const std::uint64_t b = std::uint64_t{1} << op.orbital;
  const std::uint64_t chain = b - 1;
  PauliSum s(n_qubits);
  s.add({b, chain}, 0.5);
  s.add({b, chain | b}, Complex(0.0, op.dagger ? -0.5 : 0.5));
  return s;
}

namespace {

PauliSum jw_product(std::span<const Ladder> ops, double coefficient, int n_qubits) {
  PauliSum out = PauliSum::identity(n_qubits, coefficient);
  for (const auto& op : ops) out = out * jw_ladder(op, n_qubits);
  return out;
}

}  // namespace

PauliSum jw_map(const FermionOperator& op, int n_qubits) {
  PauliSum out(n_qubits);
  for (const auto& [term, c] : op.terms()) out += jw_product(term, c, n_qubits);
  return out.simplified();
}

PauliSum jw_map_generator(const Generator& gen, int n_qubits) {
  for (int p : gen.creation) {
    if (p < 0 || p >= n_qubits) throw MappingError("generator index " + std::to_string(p) + " overflows register");
  }
  for (int p : gen.annihilation) {
    if (p < 0 || p >= n_qubits) throw MappingError("generator index " + std::to_string(p) + " overflows register");
  }
  return jw_map(gen.kappa(), n_qubits);
}

PauliSum jw_map_hamiltonian(const IntegralSystem& sys) {
  const int n = static_cast<int>(sys.n_spin_orbitals());
  PauliSum h = PauliSum::identity(n, sys.core_energy());
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const double hpq = sys.h1(p, q);
      if (std::abs(hpq) < 1e-15) continue;
      const Ladder ops[] = {{p, true}, {q, false}};
      h += jw_product(ops, hpq, n);
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        for (int s = r + 1; s < n; ++s) {
          const double v = sys.v(p, q, r, s);
          if (std::abs(v) < 1e-15) continue;
          const Ladder ops[] = {{p, true}, {q, true}, {s, false}, {r, false}};
          h += jw_product(ops, v, n);
        }
      }
    }
  }
  return h.simplified();
}

bool mutually_commuting(const PauliSum& sum) {
  for (auto a = sum.terms().begin(); a != sum.terms().end(); ++a) {
    for (auto b = std::next(a); b != sum.terms().end(); ++b) {
      if (!commutes(a->first, b->first)) return false;
    }
  }
  return true;
}

ResourceCount& ResourceCount::operator+=(const ResourceCount& other) {
  n_params += other.n_params;
  n_cnot += other.n_cnot;
  n_pauli_rotations += other.n_pauli_rotations;
  return *this;
}

std::size_t staircase_cnots(const PauliString& p) {
  const int w = p.weight();
  return w > 1 ? static_cast<std::size_t>(2 * (w - 1)) : 0;
}

ResourceCount count_resources(const Ansatz& ansatz, int n_qubits) {
  ResourceCount rc;
  rc.n_params = ansatz.n_params();
  for (const auto& g : ansatz.generators()) {
    for (const auto& [p, c] : jw_map_generator(g, n_qubits).terms()) {
      ++rc.n_pauli_rotations;
      rc.n_cnot += staircase_cnots(p);
    }
  }
  return rc;
}

std::string rotation_listing(const Ansatz& ansatz, int n_qubits) {
  std::ostringstream out;
  char buf[64];
  for (const auto& g : ansatz.generators()) {
    for (const auto& [p, c] : jw_map_generator(g, n_qubits).terms()) {
      std::snprintf(buf, sizeof buf, "%+.6gi", c.imag());
      out << "exp(theta_" << g.param_slot << " * " << buf << " " << p.to_string(n_qubits) << ")\n";
    }
  }
  return out.str();
}

}  // namespace compact
