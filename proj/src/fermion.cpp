#include "compact/fermion.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace compact {

std::optional<StringAction> apply_string(std::span<const Ladder> ops, Determinant det) {
  int sign = 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const Determinant mask = bit(it->orbital);
    const bool occupied = (det & mask) != 0;
    if (it->dagger == occupied) return std::nullopt;
    if (std::popcount(det & (mask - 1)) & 1) sign = -sign;
    det ^= mask;
  }
  return StringAction{det, sign};
}

std::vector<Ladder> excitation_string(std::span<const int> creation, std::span<const int> annihilation) {
  std::vector<Ladder> ops;
  ops.reserve(creation.size() + annihilation.size());
  for (int c : creation) ops.push_back({c, true});
  for (auto it = annihilation.rbegin(); it != annihilation.rend(); ++it) ops.push_back({*it, false});
  return ops;
}

std::optional<StringAction> excite(Determinant reference, std::span<const int> creation,
                                   std::span<const int> annihilation) {
  const auto ops = excitation_string(creation, annihilation);
  return apply_string(ops, reference);
}

std::vector<int> set_bits(Determinant det) {
  std::vector<int> out;
  while (det) {
    out.push_back(std::countr_zero(det));
    det &= det - 1;
  }
  return out;
}

namespace {

// Bubble sort into canonical order; a_p a_q^+ = delta_pq - a_q^+ a_p spawns the
// contracted term, which is ordered recursively.
void normal_order_term(FermionOperator::Term term, double coefficient,
                       std::map<FermionOperator::Term, double>& out) {
  for (std::size_t i = 1; i < term.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      const Ladder left = term[j - 1];
      const Ladder right = term[j];
      if (right.dagger && !left.dagger) {
        if (right.orbital == left.orbital) {
          FermionOperator::Term reduced;
          reduced.reserve(term.size() - 2);
          for (std::size_t k = 0; k < term.size(); ++k) {
            if (k != j - 1 && k != j) reduced.push_back(term[k]);
          }
          normal_order_term(std::move(reduced), coefficient, out);
        }
        std::swap(term[j - 1], term[j]);
        coefficient = -coefficient;
      } else if (right.dagger == left.dagger) {
        if (right.orbital == left.orbital) return;
        if (right.orbital > left.orbital) {
          std::swap(term[j - 1], term[j]);
          coefficient = -coefficient;
        }
      }
    }
  }
  out[term] += coefficient;
}

}  // namespace

FermionOperator FermionOperator::identity(double coefficient) {
  FermionOperator op;
  op.terms_[{}] = coefficient;
  return op;
}

FermionOperator FermionOperator::string(std::vector<Ladder> ops, double coefficient) {
  FermionOperator op;
  op.terms_[std::move(ops)] = coefficient;
  return op;
}

FermionOperator FermionOperator::antihermitian(std::span<const int> creation, std::span<const int> annihilation) {
  const auto t = string(excitation_string(creation, annihilation));
  return t - t.adjoint();
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  for (const auto& [term, c] : other.terms_) terms_[term] += c;
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& other) {
  for (const auto& [term, c] : other.terms_) terms_[term] -= c;
  return *this;
}

FermionOperator FermionOperator::operator+(const FermionOperator& other) const {
  FermionOperator out = *this;
  out += other;
  return out;
}

FermionOperator FermionOperator::operator-(const FermionOperator& other) const {
  FermionOperator out = *this;
  out -= other;
  return out;
}

FermionOperator FermionOperator::operator*(const FermionOperator& other) const {
  FermionOperator out;
  for (const auto& [lt, lc] : terms_) {
    for (const auto& [rt, rc] : other.terms_) {
      Term joined = lt;
      joined.insert(joined.end(), rt.begin(), rt.end());
      out.terms_[joined] += lc * rc;
    }
  }
  return out;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& [term, c] : terms_) {
    Term adj(term.rbegin(), term.rend());
    for (auto& op : adj) op.dagger = !op.dagger;
    out.terms_[adj] += c;
  }
  return out;
}

FermionOperator FermionOperator::normal_ordered(double drop_tolerance) const {
  std::map<Term, double> ordered;
  for (const auto& [term, c] : terms_) normal_order_term(term, c, ordered);
  FermionOperator out;
  for (auto& [term, c] : ordered) {
    if (std::abs(c) > drop_tolerance) out.terms_.emplace(term, c);
  }
  return out;
}

bool FermionOperator::is_zero(double tolerance) const {
  for (const auto& [term, c] : normal_ordered(0.0).terms_) {
    if (std::abs(c) > tolerance) return false;
  }
  return true;
}

std::string FermionOperator::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [term, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c;
    for (const auto& op : term) out << " a" << (op.dagger ? "+" : "") << op.orbital;
  }
  return first ? "0" : out.str();
}

FermionOperator commutator(const FermionOperator& a, const FermionOperator& b) {
  return (a * b - b * a).normal_ordered();
}

}  // namespace compact
