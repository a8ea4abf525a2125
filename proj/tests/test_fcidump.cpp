#include "compact/errors.hpp"
#include "compact/fcidump.hpp"
#include "compact/screening.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

using namespace compact;

namespace {

const char* kH2Header = " &FCI NORB=2,NELEC=2,MS2=0,\n  ORBSYM=1,1,\n  ISYM=1,\n &END\n";

std::string read_fixture(const std::string& name) {
  std::ifstream in(oracle::fixture(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Fcidump, CoreEnergyIsNuclearRepulsionOfH2) {
  const FcidumpData data = read_fcidump(oracle::fixture("h2_0.735.fcidump"));
  const double bohr = 0.529177210903;
  EXPECT_NEAR(data.core_energy, 1.0 / (0.735 / bohr), 1e-9);
  EXPECT_EQ(data.n_orbitals, 2u);
  EXPECT_EQ(data.n_electrons, 2u);
}

TEST(Fcidump, EmptyBodyGivesZeroTensors) {
  const FcidumpData data = parse_fcidump(std::string(kH2Header));
  EXPECT_EQ(data.core_energy, 0.0);
  EXPECT_EQ(data.one_body.cwiseAbs().maxCoeff(), 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(data.two_body(i, j, j, i), 0.0);
}

TEST(Fcidump, IndexBeyondNorbIsRejected) {
  EXPECT_THROW(parse_fcidump(std::string(kH2Header) + "0.5 3 1 0 0\n"), IndexError);
}

TEST(Fcidump, MalformedInputReportsLine) {
  try {
    parse_fcidump(std::string(kH2Header) + "0.5 1 1 0 0\nbogus 1 1 1 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6);
  }
  EXPECT_THROW(parse_fcidump(std::string("NORB=2\n")), ParseError);
  EXPECT_THROW(parse_fcidump(std::string(" &FCI NORB=2,NELEC=2,MS2=0\n")), ParseError);
}

TEST(Fcidump, FortranExponentsAndSlashTerminator) {
  const FcidumpData data = parse_fcidump(std::string(" &FCI NORB=2,NELEC=2,MS2=0 /\n 1.5D-01 1 1 1 1\n -2.0E+00 2 1 0 0\n 7.0d-1 0 0 0 0\n"));
  EXPECT_DOUBLE_EQ(data.two_body(0, 0, 0, 0), 0.15);
  EXPECT_DOUBLE_EQ(data.one_body(1, 0), -2.0);
  EXPECT_DOUBLE_EQ(data.one_body(0, 1), -2.0);
  EXPECT_DOUBLE_EQ(data.core_energy, 0.7);
}

TEST(Fcidump, ConflictingDuplicateIsConsistencyError) {
  EXPECT_THROW(parse_fcidump(std::string(kH2Header) + "0.5 2 1 1 1\n0.6 1 2 1 1\n"), ConsistencyError);
  EXPECT_NO_THROW(parse_fcidump(std::string(kH2Header) + "0.5 2 1 1 1\n0.5 1 1 1 2\n"));
}

TEST(Fcidump, EightfoldSymmetryOfChemistIntegrals) {
  const FcidumpData data = read_fcidump(oracle::fixture("lih_1.600.fcidump"));
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> idx(0, data.n_orbitals - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t i = idx(rng), j = idx(rng), k = idx(rng), l = idx(rng);
    const double v = data.two_body(i, j, k, l);
    EXPECT_EQ(v, data.two_body(j, i, k, l));
    EXPECT_EQ(v, data.two_body(i, j, l, k));
    EXPECT_EQ(v, data.two_body(k, l, i, j));
    EXPECT_EQ(v, data.two_body(l, k, j, i));
  }
}

TEST(Fcidump, RoundTripPreservesEntries) {
  const FcidumpData a = read_fcidump(oracle::fixture("bh_2.000.fcidump"));
  const FcidumpData b = parse_fcidump(write_fcidump(a));
  ASSERT_EQ(a.n_orbitals, b.n_orbitals);
  EXPECT_NEAR(a.core_energy, b.core_energy, 1e-12);
  EXPECT_LT((a.one_body - b.one_body).cwiseAbs().maxCoeff(), 1e-12);
  const std::size_t n = a.n_orbitals;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l <= k; ++l) EXPECT_NEAR(a.two_body(i, j, k, l), b.two_body(i, j, k, l), 1e-12);
}

TEST(Fcidump, SpinOrbitalCounts) {
  const IntegralSystem h2 = oracle::load_system("h2_0.735.fcidump");
  EXPECT_EQ(h2.n_spin_orbitals(), 4u);
  EXPECT_EQ(h2.occupied(), (std::vector<int>{0, 2}));
  EXPECT_EQ(h2.virtuals(), (std::vector<int>{1, 3}));

  const IntegralSystem lih = oracle::load_system("lih_1.600.fcidump");
  EXPECT_EQ(lih.n_spin_orbitals(), 12u);
  EXPECT_EQ(lih.n_electrons(), 4u);

  const IntegralSystem h2o = oracle::load_system("h2o_1.0re.fcidump");
  EXPECT_EQ(h2o.n_spin_orbitals(), 12u);
  EXPECT_EQ(h2o.n_electrons(), 8u);
}

TEST(Fcidump, UnsupportedSystemsAreRejected) {
  const FcidumpData data = read_fcidump(oracle::fixture("h2_0.735.fcidump"));
  EXPECT_THROW(to_spin_orbitals(data, 1), UnsupportedSystemError);
  FcidumpData odd = data;
  odd.n_electrons = 1;
  EXPECT_THROW(to_spin_orbitals(odd), UnsupportedSystemError);
  FcidumpData triplet = data;
  triplet.ms2 = 2;
  EXPECT_THROW(to_spin_orbitals(triplet), UnsupportedSystemError);
}

TEST(Fcidump, AntisymmetrizedIntegralsMatchChemistOracle) {
  const FcidumpData data = read_fcidump(oracle::fixture("lih_2.000.fcidump"));
  const IntegralSystem sys = to_spin_orbitals(data);
  const int n = static_cast<int>(sys.n_spin_orbitals());
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> idx(0, n - 1);
  for (int trial = 0; trial < 500; ++trial) {
    const int p = idx(rng), q = idx(rng), r = idx(rng), s = idx(rng);
    const double v = sys.v(p, q, r, s);
    EXPECT_NEAR(v, oracle::antisymmetrized(data, p, q, r, s), 1e-14);
    EXPECT_NEAR(v, -sys.v(q, p, r, s), 1e-14);
    EXPECT_NEAR(v, -sys.v(p, q, s, r), 1e-14);
    EXPECT_NEAR(v, sys.v(r, s, p, q), 1e-14);
  }
}

TEST(Fcidump, SpinFlipSymmetry) {
  const IntegralSystem sys = oracle::load_system("h2o_1.6re.fcidump");
  const int n = static_cast<int>(sys.n_spatial_orbitals());
  auto flip = [n](int p) { return p < n ? p + n : p - n; };
  for (int p = 0; p < 2 * n; ++p) {
    for (int q = 0; q < 2 * n; ++q) {
      EXPECT_EQ(sys.h1(p, q), sys.h1(flip(p), flip(q)));
      for (int r = 0; r < 2 * n; r += 3)
        for (int s = 0; s < 2 * n; s += 2) EXPECT_NEAR(sys.v(p, q, r, s), sys.v(flip(p), flip(q), flip(r), flip(s)), 1e-15);
    }
  }
}

TEST(Fcidump, HartreeFockAndOrbitalEnergies) {
  const FcidumpData data = read_fcidump(oracle::fixture("lih_1.600.fcidump"));
  const IntegralSystem sys = to_spin_orbitals(data);
  const auto eps = oracle::spatial_orbital_energies(data);
  const int n = static_cast<int>(data.n_orbitals);
  for (int p = 0; p < 2 * n; ++p) EXPECT_NEAR(sys.orbital_energy(p), eps[p % n], 1e-12);
  // Generator-reported RHF energy of the fixture.
  EXPECT_NEAR(sys.hf_energy(), -7.8618647698, 1e-8);
}

TEST(Fcidump, MpDenominator) {
  const IntegralSystem h2 = oracle::load_system("h2_0.735.fcidump");
  EXPECT_EQ(mp_denominator(h2, {}, {}), 0.0);
  const std::vector<int> holes{0, 2}, particles{1, 3};
  EXPECT_NEAR(mp_denominator(h2, holes, particles), 2.0 * (h2.orbital_energy(0) - h2.orbital_energy(1)), 1e-14);
  const std::vector<int> repeated{0, 0};
  EXPECT_THROW(mp_denominator(h2, repeated, particles), InvalidExcitationError);
  const std::vector<int> outside{0, 9};
  EXPECT_THROW(mp_denominator(h2, outside, particles), IndexError);

  const FcidumpData data = read_fcidump(oracle::fixture("lih_1.600.fcidump"));
  const IntegralSystem lih = to_spin_orbitals(data);
  const auto eps = oracle::spatial_orbital_energies(data);
  const auto doubles = enumerate_doubles(lih);
  const auto lowest = std::min_element(doubles.begin(), doubles.end(), [](const auto& a, const auto& b) {
    return std::abs(a.delta) < std::abs(b.delta);
  });
  const int n = 6;
  const auto [a, b, i, j] = lowest->indices;
  EXPECT_NEAR(lowest->delta, eps[i % n] + eps[j % n] - eps[a % n] - eps[b % n], 1e-12);
}

TEST(Fcidump, Mp2InvariantUnderLinePermutation) {
  const std::string text = read_fixture("lih_3.000.fcidump");
  const auto end = text.find("&END");
  const auto body_start = text.find('\n', end) + 1;
  std::vector<std::string> lines;
  std::istringstream body(text.substr(body_start));
  for (std::string line; std::getline(body, line);) lines.push_back(line);
  std::mt19937 rng(3);
  std::shuffle(lines.begin(), lines.end(), rng);
  std::string shuffled = text.substr(0, body_start);
  for (const auto& l : lines) shuffled += l + "\n";
  const double e1 = mp2_energy(enumerate_doubles(to_spin_orbitals(parse_fcidump(text))));
  const double e2 = mp2_energy(enumerate_doubles(to_spin_orbitals(parse_fcidump(shuffled))));
  EXPECT_NEAR(e1, e2, 1e-13);
}
