#include "compact/simulator.hpp"

#include "compact/errors.hpp"

#include <bit>
#include <cmath>
#include <map>

namespace compact {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

inline double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

}  // namespace

Statevector::Statevector(int n_qubits, std::uint64_t bits, int max_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > max_qubits || n_qubits > 30) {
    throw CapacityError("statevector of " + std::to_string(n_qubits) + " qubits exceeds the cap of " +
                        std::to_string(max_qubits));
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (bits >= dim) throw StateError("basis state outside the register");
  amplitudes_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  amplitudes_[static_cast<Eigen::Index>(bits)] = 1.0;
}

void Statevector::require_normalized(double tolerance) const {
  if (std::abs(norm() - 1.0) > tolerance) throw StateError("state is not normalized (norm " + std::to_string(norm()) + ")");
}

Statevector prepare_reference(const IntegralSystem& sys, int max_qubits) {
  std::uint64_t bits = 0;
  for (int i : sys.occupied()) bits |= std::uint64_t{1} << i;
  return Statevector(static_cast<int>(sys.n_spin_orbitals()), bits, max_qubits);
}

CompiledGenerator compile_generator(const PauliSum& image, std::size_t slot) {
  CompiledGenerator gen;
  gen.slot = slot;
  for (const auto& [p, c] : image.terms()) {
    if (std::abs(c.real()) > 1e-12) throw HermiticityError("generator image is not anti-hermitian");
    gen.rotations.push_back({p, c.imag()});
  }
  gen.exact = mutually_commuting(image);
  return gen;
}

void apply_rotation(Eigen::VectorXcd& amps, const Rotation& r, double theta) {
  const double angle = theta * r.b;
  const double c = std::cos(angle), s = std::sin(angle);
  const Complex iy = kIPowers[r.pauli.n_y() & 3];
  const std::uint64_t x = r.pauli.x, z = r.pauli.z;
  const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
  if (x == 0) {
    const Complex plus(c, s), minus(c, -s);
    for (std::uint64_t y = 0; y < dim; ++y) amps[y] *= (std::popcount(y & z) & 1) ? minus : plus;
    return;
  }
  const std::uint64_t low = x & (~x + 1);
  const Complex is = Complex(0.0, s) * iy;
  for (std::uint64_t y = 0; y < dim; ++y) {
    if (y & low) continue;
    const std::uint64_t u = y ^ x;
    const Complex ay = amps[y], au = amps[u];
    amps[y] = c * ay + is * parity_sign(u & z) * au;
    amps[u] = c * au + is * parity_sign(y & z) * ay;
  }
}

void apply_generator(Statevector& state, const CompiledGenerator& gen, double theta) {
  state.require_normalized();
  for (const auto& r : gen.rotations) apply_rotation(state.amplitudes(), r, theta);
}

void apply_generator(Statevector& state, const PauliSum& image, double theta) {
  apply_generator(state, compile_generator(image), theta);
}

PauliOperator::PauliOperator(const PauliSum& sum) : n_qubits_(sum.n_qubits()) {
  std::map<std::uint64_t, std::vector<ZTerm>> by_x;
  for (const auto& [p, c] : sum.terms()) by_x[p.x].push_back({p.z, c * kIPowers[p.n_y() & 3]});
  for (auto& [x, terms] : by_x) groups_.push_back({x, std::move(terms)});
}

void PauliOperator::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  if (in.size() != (Eigen::Index{1} << n_qubits_)) throw DimensionError("operator and state dimensions differ");
  out = Eigen::VectorXcd::Zero(in.size());
  const std::uint64_t dim = static_cast<std::uint64_t>(in.size());
  for (const auto& g : groups_) {
    for (std::uint64_t y = 0; y < dim; ++y) {
      const Complex a = in[y];
      if (a == Complex(0.0, 0.0)) continue;
      Complex coef = 0.0;
      for (const auto& t : g.terms) coef += parity_sign(y & t.z) * t.coefficient;
      out[y ^ g.x] += coef * a;
    }
  }
}

double PauliOperator::expectation(const Statevector& state, double tolerance) const {
  Eigen::VectorXcd h;
  apply(state.amplitudes(), h);
  const Complex e = state.amplitudes().dot(h);
  if (std::abs(e.imag()) > tolerance) {
    throw HermiticityError("expectation value has imaginary part " + std::to_string(e.imag()));
  }
  return e.real();
}

double expectation(const Statevector& state, const PauliSum& hamiltonian) {
  return PauliOperator(hamiltonian).expectation(state);
}

AnsatzCircuit compile_ansatz(const Ansatz& ansatz, int n_qubits) {
  AnsatzCircuit circuit;
  circuit.n_qubits = n_qubits;
  circuit.n_params = ansatz.n_params();
  for (const auto& g : ansatz.generators()) {
    circuit.generators.push_back(compile_generator(jw_map_generator(g, n_qubits), g.param_slot));
    circuit.exact = circuit.exact && circuit.generators.back().exact;
  }
  return circuit;
}

Statevector prepare_state(const AnsatzCircuit& circuit, const Statevector& reference, std::span<const double> params) {
  if (params.size() != circuit.n_params) throw DimensionError("parameter vector length differs from the ansatz");
  if (reference.n_qubits() != circuit.n_qubits) throw DimensionError("reference and circuit qubit counts differ");
  reference.require_normalized();
  Statevector state = reference;
  for (const auto& g : circuit.generators) {
    for (const auto& r : g.rotations) apply_rotation(state.amplitudes(), r, params[g.slot]);
  }
  return state;
}

EnergyGradient energy_and_gradient(const AnsatzCircuit& circuit, const Statevector& reference,
                                   std::span<const double> params, const PauliOperator& hamiltonian) {
  EnergyGradient out;
  out.state = prepare_state(circuit, reference, params);
  Eigen::VectorXcd lambda;
  hamiltonian.apply(out.state.amplitudes(), lambda);
  const Complex e = out.state.amplitudes().dot(lambda);
  if (std::abs(e.imag()) > 1e-10) throw HermiticityError("energy has an imaginary part");
  out.energy = e.real();
  out.gradient.assign(circuit.n_params, 0.0);

  Eigen::VectorXcd psi = out.state.amplitudes();
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  for (auto g = circuit.generators.rbegin(); g != circuit.generators.rend(); ++g) {
    const double theta = params[g->slot];
    for (auto r = g->rotations.rbegin(); r != g->rotations.rend(); ++r) {
      // d/dtheta of the rotation is i b P times the rotated state.
      const Complex iy = kIPowers[r->pauli.n_y() & 3];
      const std::uint64_t x = r->pauli.x, z = r->pauli.z;
      Complex acc = 0.0;
      for (std::uint64_t y = 0; y < dim; ++y) acc += std::conj(lambda[y ^ x]) * parity_sign(y & z) * psi[y];
      out.gradient[g->slot] += 2.0 * (Complex(0.0, r->b) * iy * acc).real();
      apply_rotation(psi, *r, -theta);
      apply_rotation(lambda, *r, -theta);
    }
  }
  return out;
}

double number_expectation(const Statevector& state) {
  double n = 0.0;
  const auto& a = state.amplitudes();
  for (Eigen::Index y = 0; y < a.size(); ++y) n += std::norm(a[y]) * std::popcount(static_cast<std::uint64_t>(y));
  return n;
}

}  // namespace compact
