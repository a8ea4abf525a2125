#include "compact/errors.hpp"
#include "compact/fci.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <bit>

using namespace compact;

TEST(Fci, H2Ordering) {
  const auto sys = oracle::load_system("h2_0.735.fcidump");
  const FciResult fci = fci_ground_state(sys);
  EXPECT_LT(fci.energy, mp2_energy(enumerate_doubles(sys)) + sys.hf_energy() + 1e-12);
  EXPECT_LT(fci.energy, sys.hf_energy());
  EXPECT_EQ(fci.sector_dimension, 4u);
  EXPECT_EQ(fci.n_electrons, 2);
  EXPECT_EQ(fci.ms2, 0);
  EXPECT_LT(fci.residual, 1e-9);
}

TEST(Fci, SectorDeterminants) {
  const auto sys = oracle::load_system("lih_1.600.fcidump");
  const auto basis = sector_determinants(sys);
  EXPECT_EQ(basis.size(), 15u * 15u);
  EXPECT_TRUE(std::is_sorted(basis.begin(), basis.end()));
  for (auto d : basis) {
    EXPECT_EQ(std::popcount(d & 0x3fu), 2);
    EXPECT_EQ(std::popcount(d >> 6), 2);
  }
}

TEST(Fci, CoreOnlyHamiltonian) {
  FcidumpData data = parse_fcidump(std::string(" &FCI NORB=2,NELEC=2,MS2=0 &END\n -3.5 0 0 0 0\n"));
  const FciResult fci = fci_ground_state(to_spin_orbitals(data));
  EXPECT_NEAR(fci.energy, -3.5, 1e-14);
  EXPECT_EQ(fci.ground_manifold.size(), fci.sector_dimension);
}

TEST(Fci, SectorMatrixMatchesQubitHamiltonian) {
  const auto sys = oracle::load_system("bh_2.000.fcidump");
  const auto basis = sector_determinants(sys);
  const Eigen::MatrixXd h = sector_hamiltonian(sys, basis);
  EXPECT_LT((h - h.transpose()).norm(), 1e-12);
  const PauliOperator op(jw_map_hamiltonian(sys));
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(1 << 12), out;
  for (std::size_t c = 0; c < basis.size(); c += 7) {
    in.setZero();
    in[static_cast<Eigen::Index>(basis[c])] = 1.0;
    op.apply(in, out);
    for (std::size_t r = 0; r < basis.size(); ++r)
      ASSERT_NEAR(out[static_cast<Eigen::Index>(basis[r])].real(), h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)), 1e-12);
  }
}

TEST(Fci, GroundStateProperties) {
  for (const char* name : {"lih_1.600.fcidump", "bh_3.000.fcidump", "h2o_2.4re.fcidump"}) {
    const auto sys = oracle::load_system(name);
    const FciResult fci = fci_ground_state(sys);
    EXPECT_LT(fci.residual, 1e-9) << name;
    EXPECT_LT(fci.energy, sys.hf_energy()) << name;
    const Statevector& psi = fci.ground_state;
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_NEAR(number_expectation(psi), static_cast<double>(sys.n_electrons()), 1e-10);
    const int n = static_cast<int>(sys.n_spin_orbitals());
    double sz = 0.0;
    for (Eigen::Index y = 0; y < psi.amplitudes().size(); ++y) {
      const auto bits = static_cast<std::uint64_t>(y);
      const int na = std::popcount(bits & ((std::uint64_t{1} << (n / 2)) - 1));
      const int nb = std::popcount(bits >> (n / 2));
      sz += std::norm(psi.amplitudes()[y]) * 0.5 * (na - nb);
    }
    EXPECT_NEAR(sz, 0.0, 1e-10);
    EXPECT_NEAR(expectation(psi, jw_map_hamiltonian(sys)), fci.energy, 1e-9);
  }
}

TEST(Fci, Overlap) {
  const auto sys = oracle::load_system("lih_1.600.fcidump");
  const FciResult fci = fci_ground_state(sys);
  EXPECT_NEAR(overlap_with_fci(fci.ground_state, fci), 1.0, 1e-12);
  Statevector phased = fci.ground_state;
  phased.amplitudes() *= std::polar(1.0, 0.7);
  EXPECT_NEAR(overlap_with_fci(phased, fci), 1.0, 1e-12);
  Statevector outside(12, 0b111);
  EXPECT_NEAR(overlap_with_fci(outside, fci), 0.0, 1e-15);
  const double hf = overlap_with_fci(prepare_reference(sys), fci);
  EXPECT_GT(hf, 0.5);
  EXPECT_LT(hf, 1.0);
  EXPECT_THROW(overlap_with_fci(Statevector(4, 0), fci), DimensionError);
}

TEST(Fci, Capacity) {
  const auto sys = oracle::load_system("lih_1.600.fcidump");
  EXPECT_THROW(fci_ground_state(sys, 10), CapacityError);
}
