#pragma once

#include "compact/fcidump.hpp"

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace compact {

/// Thresholds of the perturbative screening cascade.
struct ScreeningConfig {
  double eps1 = 1e-5;  ///< first-order doubles, |t1| > eps1
  double eps2 = 1e-5;  ///< scatterers, |v/Delta_local| > eps2
  double eps3 = 1e-4;  ///< resultant triples and singles
  int max_order = 2;
  bool include_quadruples = false;
  std::optional<double> eps_q;  ///< third-order threshold, falls back to eps3
  /// When positive, |Delta| is clamped to at least this value instead of
  /// raising DegeneracyError.
  double delta_floor = 0.0;

  /// COMPACT(a,b,c) naming: eps_k = 10^-k.
  static ScreeningConfig from_compact(double a, double b, double c);
  std::string label() const;
  double quadruple_threshold() const { return eps_q.value_or(eps3); }
  void validate() const;
};

/// First-order double a_a^+ a_b^+ a_j a_i with indices stored as (a, b, i, j),
/// a < b and i < j.
struct DoublesCandidate {
  std::array<int, 4> indices{};
  double v = 0.0;      ///< <ab||ij>
  double delta = 0.0;  ///< eps_i + eps_j - eps_a - eps_b
  double t1st = 0.0;   ///< v / delta

  std::array<int, 2> particles() const { return {indices[0], indices[1]}; }
  std::array<int, 2> holes() const { return {indices[2], indices[3]}; }
};

enum class ScattererKind {
  hole_contractible,      ///< creation {particle, hole}, destruction {hole, hole}
  particle_contractible,  ///< creation {particle, particle}, destruction {hole, particle}
};

/// Two-body string a_p^+ a_q^+ a_s a_r (p < q, r < s, four distinct
/// spin-orbitals) of net one-hole-one-particle excitation rank. It annihilates
/// the reference and only acts after a double has vacated its contractible index.
struct Scatterer {
  std::array<int, 2> creation{};
  std::array<int, 2> annihilation{};
  ScattererKind kind = ScattererKind::hole_contractible;
  double v = 0.0;
  double delta = 0.0;  ///< sum eps(annihilation) - sum eps(creation)
  double s1st = 0.0;
  int contractible_index = -1;

  std::array<int, 4> indices() const { return {creation[0], creation[1], annihilation[0], annihilation[1]}; }
};

/// One (scatterer, double) route into a triple.
struct Pathway {
  std::array<int, 4> scatterer{};
  std::array<int, 4> cluster{};  ///< (a, b, i, j) of the double
  double contribution = 0.0;
};

/// Triple (a, b, c, i, j, k), a < b < c, i < j < k.
struct TripleCandidate {
  std::array<int, 6> indices{};
  double delta = 0.0;
  std::vector<Pathway> pathways;
  double total = 0.0;
  std::size_t selected = 0;

  const Pathway& selected_pathway() const { return pathways.at(selected); }
};

/// Single (a, i).
struct SinglesCandidate {
  std::array<int, 2> indices{};
  double contribution = 0.0;
};

/// Third-order route: scatterer nu applied on the composite of a triple's selected pathway.
struct QuadruplePathway {
  std::array<int, 8> indices{};  ///< four particles then four holes, each ascending
  std::array<int, 4> scatterer{};
  std::array<int, 6> triple{};
  std::array<int, 4> cluster{};  ///< double owning the operator block
  double contribution = 0.0;     ///< this route alone
  double total = 0.0;            ///< summed over all routes to this quadruple
};

struct ScreeningLedger {
  ScreeningConfig config;
  std::vector<DoublesCandidate> doubles;
  std::vector<Scatterer> scatterers;
  std::vector<TripleCandidate> triples;
  std::vector<SinglesCandidate> singles;
  std::vector<QuadruplePathway> quadruples;

  std::size_t n_doubles() const noexcept { return doubles.size(); }
  std::size_t n_singles() const noexcept { return singles.size(); }
  /// Triples whose |total| passed eps3; each contributes one scatterer generator.
  std::size_t n_triples() const noexcept { return triples.size(); }
};

/// Every spin-allowed canonical double, unthresholded.
std::vector<DoublesCandidate> enumerate_doubles(const IntegralSystem& sys, double delta_floor = 0.0);

/// Doubles with |t1st| > eps1 in descending |t1st|; ties put the lexicographically
/// smaller index tuple later.
std::vector<DoublesCandidate> screen_doubles(const IntegralSystem& sys, double eps1, double delta_floor = 0.0);

/// sum over canonical tuples of v^2 / Delta.
double mp2_energy(std::span<const DoublesCandidate> doubles);

/// Unique 2h1p and 2p1h orbital tuples (sorted ascending) drawn from the doubles.
std::set<std::array<int, 3>> build_orbital_tuple_set(std::span<const DoublesCandidate> doubles);

std::vector<Scatterer> enumerate_scatterers(const IntegralSystem& sys, double delta_floor = 0.0);
std::vector<Scatterer> screen_scatterers(const IntegralSystem& sys, std::span<const DoublesCandidate> doubles,
                                         double eps2, double delta_floor = 0.0);

std::vector<TripleCandidate> screen_triples(const IntegralSystem& sys, std::span<const DoublesCandidate> doubles,
                                            std::span<const Scatterer> scatterers, double eps3,
                                            double delta_floor = 0.0);

/// Two-body strings of net one-hole-one-particle de-excitation rank (four
/// distinct spin-orbitals, nonzero integral) that feed the singles.
struct DeexcitationString {
  std::array<int, 2> creation{};
  std::array<int, 2> annihilation{};
  double v = 0.0;
};
std::vector<DeexcitationString> enumerate_deexcitations(const IntegralSystem& sys);

std::vector<SinglesCandidate> screen_singles(const IntegralSystem& sys, std::span<const DoublesCandidate> doubles,
                                             double eps3, double delta_floor = 0.0);

/// Eight-index tuples already simulated by pairs of scatterers sharing an operator block.
std::set<std::array<int, 8>> fortuitous_quadruples(const IntegralSystem& sys,
                                                    std::span<const DoublesCandidate> doubles,
                                                    std::span<const TripleCandidate> triples);

std::vector<QuadruplePathway> screen_quadruples(const IntegralSystem& sys, std::span<const DoublesCandidate> doubles,
                                                std::span<const TripleCandidate> triples,
                                                std::span<const Scatterer> scatterers, double eps_q,
                                                double delta_floor = 0.0);

/// Full cascade up to config.max_order.
ScreeningLedger run_screening(const IntegralSystem& sys, const ScreeningConfig& config);

/// Triples attached to one double, in the order their scatterers enter the block.
struct BlockPlan {
  std::array<int, 4> cluster{};
  std::vector<const TripleCandidate*> triples;
  std::vector<const QuadruplePathway*> quadruples;
};
/// Groups the ledger by operator block, blocks in ledger-double order.
std::vector<BlockPlan> plan_blocks(const ScreeningLedger& ledger);

/// Canonical block order: descending |t1st|, ties put the smaller tuple later.
void sort_doubles(std::vector<DoublesCandidate>& doubles);

/// Orders magnitudes with a relative resolution of ~1e-12 so values equal up to
/// rounding compare equal and fall through to the index tie-break.
double magnitude_key(double value);

/// Net Sz (in units of 1/2) and particle-number change of a string.
bool conserves_sz(const IntegralSystem& sys, std::span<const int> creation, std::span<const int> annihilation);

}  // namespace compact
