#include "compact/screening.hpp"

#include "compact/errors.hpp"
#include "compact/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>

namespace compact {

namespace {

constexpr double kDegenerateDelta = 1e-10;
constexpr double kZeroIntegral = 1e-14;

template <std::size_t N>
std::string tuple_text(const std::array<int, N>& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < N; ++k) s += (k ? "," : "") + std::to_string(t[k]);
  return s + ")";
}

/// Applies the floor or the degeneracy policy; nullopt means "skip, numerator negligible".
std::optional<double> guard_denominator(double delta, double numerator, double threshold, double floor,
                                        const std::string& what) {
  if (floor > 0.0 && std::abs(delta) < floor) return std::copysign(floor, delta != 0.0 ? delta : -1.0);
  if (std::abs(delta) < kDegenerateDelta) {
    if (std::abs(numerator) > threshold) {
      throw DegeneracyError("degenerate denominator " + std::to_string(delta) + " for " + what +
                            " (use --delta-floor to clamp)");
    }
    return std::nullopt;
  }
  return delta;
}

Determinant reference_determinant(const IntegralSystem& sys) {
  Determinant det = 0;
  for (int i : sys.occupied()) det |= bit(i);
  return det;
}

/// Splits an excited determinant into ascending particles and holes.
void split_excitation(const IntegralSystem& sys, Determinant ref, Determinant det, std::vector<int>& particles,
                      std::vector<int>& holes) {
  particles.clear();
  holes.clear();
  for (int p : set_bits(det & ~ref)) particles.push_back(p);
  for (int h : set_bits(ref & ~det)) holes.push_back(h);
  (void)sys;
}

bool descending_then_larger_first(double lhs_mag, double rhs_mag, const auto& lhs_tuple, const auto& rhs_tuple) {
  const double a = magnitude_key(lhs_mag), b = magnitude_key(rhs_mag);
  if (a != b) return a > b;
  return lhs_tuple > rhs_tuple;
}

}  // namespace

ScreeningConfig ScreeningConfig::from_compact(double a, double b, double c) {
  ScreeningConfig cfg;
  cfg.eps1 = std::pow(10.0, -a);
  cfg.eps2 = std::pow(10.0, -b);
  cfg.eps3 = std::pow(10.0, -c);
  return cfg;
}

std::string ScreeningConfig::label() const {
  auto neglog = [](double e) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", -std::log10(e));
    return std::string(buf);
  };
  return "compact(" + neglog(eps1) + "," + neglog(eps2) + "," + neglog(eps3) + ")";
}

void ScreeningConfig::validate() const {
  if (!(eps1 > 0.0) || !(eps2 > 0.0) || !(eps3 > 0.0)) throw Error("screening thresholds must be positive");
  if (eps_q && !(*eps_q > 0.0)) throw Error("quadruple threshold must be positive");
  if (max_order < 1 || max_order > 3) throw Error("max_order must be 1, 2 or 3");
  if (delta_floor < 0.0) throw Error("delta floor must be non-negative");
}

double magnitude_key(double value) {
  const double a = std::abs(value);
  if (a == 0.0 || !std::isfinite(a)) return a;
  int exponent = 0;
  const double mantissa = std::frexp(a, &exponent);
  constexpr double scale = 1099511627776.0;  // 2^40
  return std::ldexp(std::round(mantissa * scale) / scale, exponent);
}

bool conserves_sz(const IntegralSystem& sys, std::span<const int> creation, std::span<const int> annihilation) {
  if (creation.size() != annihilation.size()) return false;
  int sz = 0;
  for (int p : creation) sz += sys.spin(p) == 0 ? 1 : -1;
  for (int p : annihilation) sz -= sys.spin(p) == 0 ? 1 : -1;
  return sz == 0;
}

void sort_doubles(std::vector<DoublesCandidate>& doubles) {
  std::sort(doubles.begin(), doubles.end(), [](const DoublesCandidate& l, const DoublesCandidate& r) {
    return descending_then_larger_first(l.t1st, r.t1st, l.indices, r.indices);
  });
}

std::vector<DoublesCandidate> enumerate_doubles(const IntegralSystem& sys, double delta_floor) {
  std::vector<DoublesCandidate> out;
  const auto& occ = sys.occupied();
  const auto& vir = sys.virtuals();
  for (std::size_t x = 0; x < occ.size(); ++x) {
    for (std::size_t y = x + 1; y < occ.size(); ++y) {
      const int i = std::min(occ[x], occ[y]), j = std::max(occ[x], occ[y]);
      for (std::size_t u = 0; u < vir.size(); ++u) {
        for (std::size_t w = u + 1; w < vir.size(); ++w) {
          const int a = std::min(vir[u], vir[w]), b = std::max(vir[u], vir[w]);
          const std::array<int, 2> cr{a, b}, an{i, j};
          if (!conserves_sz(sys, cr, an)) continue;
          DoublesCandidate d;
          d.indices = {a, b, i, j};
          d.v = sys.v(a, b, i, j);
          const auto delta = guard_denominator(mp_denominator(sys, an, cr), d.v, 0.0, delta_floor,
                                               "double " + tuple_text(d.indices));
          d.delta = delta.value_or(0.0);
          d.t1st = delta ? d.v / *delta : 0.0;
          out.push_back(d);
        }
      }
    }
  }
  return out;
}

std::vector<DoublesCandidate> screen_doubles(const IntegralSystem& sys, double eps1, double delta_floor) {
  if (!(eps1 > 0.0)) throw Error("eps1 must be positive");
  std::vector<DoublesCandidate> out;
  const auto& occ = sys.occupied();
  const auto& vir = sys.virtuals();
  for (std::size_t x = 0; x < occ.size(); ++x) {
    for (std::size_t y = x + 1; y < occ.size(); ++y) {
      const int i = std::min(occ[x], occ[y]), j = std::max(occ[x], occ[y]);
      for (std::size_t u = 0; u < vir.size(); ++u) {
        for (std::size_t w = u + 1; w < vir.size(); ++w) {
          const int a = std::min(vir[u], vir[w]), b = std::max(vir[u], vir[w]);
          const std::array<int, 2> cr{a, b}, an{i, j};
          if (!conserves_sz(sys, cr, an)) continue;
          const double v = sys.v(a, b, i, j);
          if (std::abs(v) < kZeroIntegral) continue;
          const auto delta = guard_denominator(mp_denominator(sys, an, cr), v, eps1, delta_floor,
                                               "double " + tuple_text(std::array<int, 4>{a, b, i, j}));
          if (!delta) continue;
          const double t = v / *delta;
          if (std::abs(t) > eps1) out.push_back({{a, b, i, j}, v, *delta, t});
        }
      }
    }
  }
  sort_doubles(out);
  return out;
}

double mp2_energy(std::span<const DoublesCandidate> doubles) {
  double e = 0.0;
  for (const auto& d : doubles) {
    if (d.delta != 0.0) e += d.v * d.v / d.delta;
  }
  return e;
}

std::set<std::array<int, 3>> build_orbital_tuple_set(std::span<const DoublesCandidate> doubles) {
  std::set<std::array<int, 3>> tuples;
  for (const auto& d : doubles) {
    const auto [a, b, i, j] = d.indices;
    for (std::array<int, 3> t : {std::array<int, 3>{i, j, a}, {i, j, b}, {a, b, i}, {a, b, j}}) {
      std::sort(t.begin(), t.end());
      tuples.insert(t);
    }
  }
  return tuples;
}

std::vector<Scatterer> enumerate_scatterers(const IntegralSystem& sys, double delta_floor) {
  std::vector<Scatterer> out;
  const int n = static_cast<int>(sys.n_spin_orbitals());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        for (int s = r + 1; s < n; ++s) {
          if (s == p || s == q) continue;
          const int holes_created = int(sys.is_occupied(p)) + int(sys.is_occupied(q));
          const int holes_destroyed = int(sys.is_occupied(r)) + int(sys.is_occupied(s));
          Scatterer sc;
          sc.creation = {p, q};
          sc.annihilation = {r, s};
          if (holes_created == 1 && holes_destroyed == 2) {
            sc.kind = ScattererKind::hole_contractible;
            sc.contractible_index = sys.is_occupied(p) ? p : q;
          } else if (holes_created == 0 && holes_destroyed == 1) {
            sc.kind = ScattererKind::particle_contractible;
            sc.contractible_index = sys.is_occupied(r) ? s : r;
          } else {
            continue;
          }
          if (!conserves_sz(sys, sc.creation, sc.annihilation)) continue;
          sc.v = sys.v(p, q, r, s);
          if (std::abs(sc.v) < kZeroIntegral) continue;
          const auto delta = guard_denominator(mp_denominator(sys, sc.annihilation, sc.creation), sc.v, 0.0,
                                               delta_floor, "scatterer " + tuple_text(sc.indices()));
          if (!delta) continue;
          sc.delta = *delta;
          sc.s1st = sc.v / sc.delta;
          out.push_back(sc);
        }
      }
    }
  }
  return out;
}

std::vector<Scatterer> screen_scatterers(const IntegralSystem& sys, std::span<const DoublesCandidate> doubles,
                                         double eps2, double delta_floor) {
  if (!(eps2 > 0.0)) throw Error("eps2 must be positive");
  std::set<int> created_holes, created_particles;
  for (const auto& d : doubles) {
    created_particles.insert(d.indices[0]);
    created_particles.insert(d.indices[1]);
    created_holes.insert(d.indices[2]);
    created_holes.insert(d.indices[3]);
  }
  std::vector<Scatterer> out;
  const int n = static_cast<int>(sys.n_spin_orbitals());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        for (int s = r + 1; s < n; ++s) {
          if (s == p || s == q) continue;
          const int holes_created = int(sys.is_occupied(p)) + int(sys.is_occupied(q));
          const int holes_destroyed = int(sys.is_occupied(r)) + int(sys.is_occupied(s));
          Scatterer sc;
          sc.creation = {p, q};
          sc.annihilation = {r, s};
          if (holes_created == 1 && holes_destroyed == 2) {
            sc.kind = ScattererKind::hole_contractible;
            sc.contractible_index = sys.is_occupied(p) ? p : q;
            if (!created_holes.contains(sc.contractible_index)) continue;
          } else if (holes_created == 0 && holes_destroyed == 1) {
            sc.kind = ScattererKind::particle_contractible;
            sc.contractible_index = sys.is_occupied(r) ? s : r;
            if (!created_particles.contains(sc.contractible_index)) continue;
          } else {
            continue;
          }
          if (!conserves_sz(sys, sc.creation, sc.annihilation)) continue;
          sc.v = sys.v(p, q, r, s);
          if (std::abs(sc.v) < kZeroIntegral) continue;
          const auto delta = guard_denominator(mp_denominator(sys, sc.annihilation, sc.creation), sc.v, eps2,
                                               delta_floor, "scatterer " + tuple_text(sc.indices()));
          if (!delta) continue;
          sc.delta = *delta;
          sc.s1st = sc.v / sc.delta;
          if (std::abs(sc.s1st) > eps2) out.push_back(sc);
        }
      }
    }
  }
  return out;
}

std::vector<TripleCandidate> screen_triples(const IntegralSystem& sys, std::span<const DoublesCandidate> doubles,
                                            std::span<const Scatterer> scatterers, double eps3,
                                            double delta_floor) {
  if (!(eps3 > 0.0)) throw Error("eps3 must be positive");
  const Determinant ref = reference_determinant(sys);
  const auto tuple_set = build_orbital_tuple_set(doubles);
  std::map<std::array<int, 6>, TripleCandidate> accumulated;
  std::vector<int> particles, holes;

  for (const auto& d : doubles) {
    const auto cluster = excite(ref, d.particles(), d.holes());
    if (!cluster) continue;
    for (const auto& sc : scatterers) {
      const auto& idx = d.indices;
      if (std::find(idx.begin(), idx.end(), sc.contractible_index) == idx.end()) continue;
      const auto ops = excitation_string(sc.creation, sc.annihilation);
      const auto scattered = apply_string(ops, cluster->det);
      if (!scattered) continue;
      split_excitation(sys, ref, scattered->det, particles, holes);
      if (particles.size() != 3 || holes.size() != 3) {
        throw LedgerInconsistencyError("scatterer on a double did not produce a triple");
      }
      const std::array<int, 6> key{particles[0], particles[1], particles[2], holes[0], holes[1], holes[2]};
      const auto canonical = excite(ref, particles, holes);
      const int phase = cluster->sign * scattered->sign * canonical->sign;
      const double numerator = sc.v * d.t1st * phase;

      auto [it, inserted] = accumulated.try_emplace(key);
      TripleCandidate& t = it->second;
      if (inserted) {
        t.indices = key;
        const auto delta = guard_denominator(mp_denominator(sys, holes, particles), numerator, 0.0, delta_floor,
                                             "triple " + tuple_text(key));
        t.delta = delta.value_or(0.0);
      }
      if (t.delta == 0.0) continue;
      t.pathways.push_back({sc.indices(), d.indices, numerator / t.delta});
    }
  }

  std::vector<TripleCandidate> out;
  for (auto& [key, t] : accumulated) {
    if (t.pathways.empty()) continue;
    // Orbital-tuple prune: a 2h1p or 2p1h subset must come from a screened double.
    bool has_tuple = false;
    const std::array<int, 3> p{key[0], key[1], key[2]}, h{key[3], key[4], key[5]};
    for (int x = 0; x < 3 && !has_tuple; ++x) {
      for (int y = x + 1; y < 3 && !has_tuple; ++y) {
        for (int z = 0; z < 3 && !has_tuple; ++z) {
          std::array<int, 3> hhp{h[x], h[y], p[z]}, pph{p[x], p[y], h[z]};
          std::sort(hhp.begin(), hhp.end());
          std::sort(pph.begin(), pph.end());
          has_tuple = tuple_set.contains(hhp) || tuple_set.contains(pph);
        }
      }
    }
    if (!has_tuple) continue;

    std::sort(t.pathways.begin(), t.pathways.end(), [](const Pathway& l, const Pathway& r) {
      return std::tie(l.scatterer, l.cluster) < std::tie(r.scatterer, r.cluster);
    });
    t.total = 0.0;
    for (const auto& pw : t.pathways) t.total += pw.contribution;
    if (!(std::abs(t.total) > eps3)) continue;
    // Largest individual product wins; on equal magnitude the smaller tuple wins.
    std::size_t best = 0;
    for (std::size_t k = 1; k < t.pathways.size(); ++k) {
      if (magnitude_key(t.pathways[k].contribution) > magnitude_key(t.pathways[best].contribution)) best = k;
    }
    t.selected = best;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<DeexcitationString> enumerate_deexcitations(const IntegralSystem& sys) {
  std::vector<DeexcitationString> out;
  const int n = static_cast<int>(sys.n_spin_orbitals());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        for (int s = r + 1; s < n; ++s) {
          if (s == p || s == q) continue;
          const int holes_created = int(sys.is_occupied(p)) + int(sys.is_occupied(q));
          const int holes_destroyed = int(sys.is_occupied(r)) + int(sys.is_occupied(s));
          // {particle, hole} <- {particle, particle} or {hole, hole} <- {hole, particle}
          const bool pattern = (holes_created == 1 && holes_destroyed == 0) ||
                               (holes_created == 2 && holes_destroyed == 1);
          if (!pattern) continue;
          const std::array<int, 2> cr{p, q}, an{r, s};
          if (!conserves_sz(sys, cr, an)) continue;
          const double v = sys.v(p, q, r, s);
          if (std::abs(v) < kZeroIntegral) continue;
          out.push_back({cr, an, v});
        }
      }
    }
  }
  return out;
}

std::vector<SinglesCandidate> screen_singles(const IntegralSystem& sys, std::span<const DoublesCandidate> doubles,
                                             double eps3, double delta_floor) {
  if (!(eps3 > 0.0)) throw Error("eps3 must be positive");
  const Determinant ref = reference_determinant(sys);
  const auto partners = enumerate_deexcitations(sys);
  std::map<std::array<int, 2>, double> numerators;
  std::vector<int> particles, holes;
  for (const auto& d : doubles) {
    const auto cluster = excite(ref, d.particles(), d.holes());
    if (!cluster) continue;
    for (const auto& de : partners) {
      const auto ops = excitation_string(de.creation, de.annihilation);
      const auto result = apply_string(ops, cluster->det);
      if (!result) continue;
      split_excitation(sys, ref, result->det, particles, holes);
      if (particles.size() != 1 || holes.size() != 1) {
        throw LedgerInconsistencyError("de-excitation on a double did not produce a single");
      }
      const auto canonical = excite(ref, particles, holes);
      numerators[{particles[0], holes[0]}] += de.v * d.t1st * cluster->sign * result->sign * canonical->sign;
    }
  }
  std::vector<SinglesCandidate> out;
  for (const auto& [key, num] : numerators) {
    const std::array<int, 1> h{key[1]}, p{key[0]};
    const auto delta = guard_denominator(mp_denominator(sys, h, p), num, 0.0, delta_floor,
                                         "single " + tuple_text(key));
    if (!delta) continue;
    const double c = num / *delta;
    if (std::abs(c) > eps3) out.push_back({key, c});
  }
  std::sort(out.begin(), out.end(), [](const SinglesCandidate& l, const SinglesCandidate& r) {
    return descending_then_larger_first(l.contribution, r.contribution, l.indices, r.indices);
  });
  return out;
}

namespace {

struct GroupedBlock {
  std::array<int, 4> cluster{};
  std::vector<const TripleCandidate*> triples;
};

/// Blocks in canonical double order, each with its triples in scatterer application order.
std::vector<GroupedBlock> group_triples(std::vector<DoublesCandidate> doubles,
                                        std::span<const TripleCandidate> triples) {
  sort_doubles(doubles);
  std::vector<GroupedBlock> blocks;
  std::map<std::array<int, 4>, std::size_t> owner;
  for (const auto& d : doubles) {
    owner[d.indices] = blocks.size();
    blocks.push_back({d.indices, {}});
  }
  for (const auto& t : triples) {
    const auto it = owner.find(t.selected_pathway().cluster);
    if (it == owner.end()) {
      throw LedgerInconsistencyError("triple " + tuple_text(t.indices) + " selects double " +
                                     tuple_text(t.selected_pathway().cluster) + " absent from the doubles list");
    }
    blocks[it->second].triples.push_back(&t);
  }
  for (auto& b : blocks) {
    std::sort(b.triples.begin(), b.triples.end(), [](const TripleCandidate* l, const TripleCandidate* r) {
      return descending_then_larger_first(l->selected_pathway().contribution, r->selected_pathway().contribution,
                                          std::tie(l->selected_pathway().scatterer, l->indices),
                                          std::tie(r->selected_pathway().scatterer, r->indices));
    });
  }
  return blocks;
}

std::array<int, 8> quadruple_key(const std::vector<int>& particles, const std::vector<int>& holes) {
  return {particles[0], particles[1], particles[2], particles[3], holes[0], holes[1], holes[2], holes[3]};
}

}  // namespace

std::set<std::array<int, 8>> fortuitous_quadruples(const IntegralSystem& sys,
                                                    std::span<const DoublesCandidate> doubles,
                                                    std::span<const TripleCandidate> triples) {
  const Determinant ref = reference_determinant(sys);
  std::set<std::array<int, 8>> out;
  std::vector<int> particles, holes;
  const auto blocks = group_triples({doubles.begin(), doubles.end()}, triples);
  for (const auto& b : blocks) {
    const std::array<int, 2> bp{b.cluster[0], b.cluster[1]}, bh{b.cluster[2], b.cluster[3]};
    const auto cluster = excite(ref, bp, bh);
    if (!cluster) continue;
    for (std::size_t first = 0; first < b.triples.size(); ++first) {
      const auto& s1 = b.triples[first]->selected_pathway().scatterer;
      const auto ops1 = excitation_string(std::array<int, 2>{s1[0], s1[1]}, std::array<int, 2>{s1[2], s1[3]});
      const auto composite = apply_string(ops1, cluster->det);
      if (!composite) continue;
      for (std::size_t later = first + 1; later < b.triples.size(); ++later) {
        const auto& s2 = b.triples[later]->selected_pathway().scatterer;
        const auto ops2 = excitation_string(std::array<int, 2>{s2[0], s2[1]}, std::array<int, 2>{s2[2], s2[3]});
        const auto nested = apply_string(ops2, composite->det);
        if (!nested) continue;
        split_excitation(sys, ref, nested->det, particles, holes);
        if (particles.size() == 4 && holes.size() == 4) out.insert(quadruple_key(particles, holes));
      }
    }
  }
  return out;
}

std::vector<QuadruplePathway> screen_quadruples(const IntegralSystem& sys, std::span<const DoublesCandidate> doubles,
                                                std::span<const TripleCandidate> triples,
                                                std::span<const Scatterer> scatterers, double eps_q,
                                                double delta_floor) {
  if (!(eps_q > 0.0)) throw Error("quadruple threshold must be positive");
  const Determinant ref = reference_determinant(sys);
  const auto excluded = fortuitous_quadruples(sys, doubles, triples);

  struct Accumulator {
    double delta = 0.0;
    double total = 0.0;
    std::vector<QuadruplePathway> routes;
  };
  std::map<std::array<int, 8>, Accumulator> acc;
  std::vector<int> particles, holes;

  for (const auto& t : triples) {
    const std::vector<int> tp{t.indices[0], t.indices[1], t.indices[2]};
    const std::vector<int> th{t.indices[3], t.indices[4], t.indices[5]};
    const auto composite = excite(ref, tp, th);
    if (!composite) continue;
    for (const auto& nu : scatterers) {
      if (std::find(t.indices.begin(), t.indices.end(), nu.contractible_index) == t.indices.end()) continue;
      const auto ops = excitation_string(nu.creation, nu.annihilation);
      const auto nested = apply_string(ops, composite->det);
      if (!nested) continue;
      split_excitation(sys, ref, nested->det, particles, holes);
      if (particles.size() != 4 || holes.size() != 4) continue;
      const auto key = quadruple_key(particles, holes);
      const auto canonical = excite(ref, particles, holes);
      const double numerator = nu.v * t.total * composite->sign * nested->sign * canonical->sign;
      auto [it, inserted] = acc.try_emplace(key);
      if (inserted) {
        const auto delta = guard_denominator(mp_denominator(sys, holes, particles), numerator, 0.0, delta_floor,
                                             "quadruple " + tuple_text(key));
        it->second.delta = delta.value_or(0.0);
      }
      if (it->second.delta == 0.0) continue;
      QuadruplePathway route;
      route.indices = key;
      route.scatterer = nu.indices();
      route.triple = t.indices;
      route.cluster = t.selected_pathway().cluster;
      route.contribution = numerator / it->second.delta;
      it->second.routes.push_back(route);
      it->second.total += route.contribution;
    }
  }

  std::vector<QuadruplePathway> out;
  for (auto& [key, a] : acc) {
    if (a.routes.empty() || !(std::abs(a.total) > eps_q) || excluded.contains(key)) continue;
    std::sort(a.routes.begin(), a.routes.end(), [](const QuadruplePathway& l, const QuadruplePathway& r) {
      return std::tie(l.scatterer, l.triple) < std::tie(r.scatterer, r.triple);
    });
    std::size_t best = 0;
    for (std::size_t k = 1; k < a.routes.size(); ++k) {
      if (magnitude_key(a.routes[k].contribution) > magnitude_key(a.routes[best].contribution)) best = k;
    }
    QuadruplePathway chosen = a.routes[best];
    chosen.total = a.total;
    out.push_back(chosen);
  }
  return out;
}

ScreeningLedger run_screening(const IntegralSystem& sys, const ScreeningConfig& config) {
  config.validate();
  ScreeningLedger ledger;
  ledger.config = config;
  ledger.doubles = screen_doubles(sys, config.eps1, config.delta_floor);
  if (config.max_order >= 2) {
    ledger.scatterers = screen_scatterers(sys, ledger.doubles, config.eps2, config.delta_floor);
    ledger.triples = screen_triples(sys, ledger.doubles, ledger.scatterers, config.eps3, config.delta_floor);
    ledger.singles = screen_singles(sys, ledger.doubles, config.eps3, config.delta_floor);
  }
  if (config.max_order >= 3 && config.include_quadruples) {
    ledger.quadruples = screen_quadruples(sys, ledger.doubles, ledger.triples, ledger.scatterers,
                                          config.quadruple_threshold(), config.delta_floor);
  }
  return ledger;
}

std::vector<BlockPlan> plan_blocks(const ScreeningLedger& ledger) {
  const auto grouped = group_triples(ledger.doubles, ledger.triples);
  std::vector<BlockPlan> plans;
  std::map<std::array<int, 4>, std::size_t> owner;
  for (const auto& g : grouped) {
    owner[g.cluster] = plans.size();
    plans.push_back({g.cluster, g.triples, {}});
  }
  for (const auto& q : ledger.quadruples) {
    const auto it = owner.find(q.cluster);
    if (it == owner.end()) {
      throw LedgerInconsistencyError("quadruple pathway refers to double " + tuple_text(q.cluster) +
                                     " absent from the doubles list");
    }
    plans[it->second].quadruples.push_back(&q);
  }
  for (auto& p : plans) {
    std::sort(p.quadruples.begin(), p.quadruples.end(), [](const QuadruplePathway* l, const QuadruplePathway* r) {
      return descending_then_larger_first(l->total, r->total, std::tie(l->scatterer, l->indices),
                                          std::tie(r->scatterer, r->indices));
    });
  }
  return plans;
}

}  // namespace compact
