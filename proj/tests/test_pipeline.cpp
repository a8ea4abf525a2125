#include "compact/errors.hpp"
#include "compact/json_io.hpp"
#include "compact/pipeline.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace compact;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("compact_pipeline_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(MethodSpec, Parse) {
  EXPECT_EQ(MethodSpec::parse("uccsd").kind, MethodSpec::Kind::uccsd);
  EXPECT_EQ(MethodSpec::parse("uccsdt").kind, MethodSpec::Kind::uccsdt);
  const MethodSpec c = MethodSpec::parse("compact(5, 5, 4)");
  EXPECT_EQ(c.kind, MethodSpec::Kind::compact);
  EXPECT_DOUBLE_EQ(c.screening.eps1, 1e-5);
  EXPECT_DOUBLE_EQ(c.screening.eps3, 1e-4);
  EXPECT_EQ(c.label(), MethodSpec::parse(c.label()).label());
  EXPECT_THROW(MethodSpec::parse("ccsd"), Error);
  EXPECT_THROW(MethodSpec::parse("compact(5,5)"), Error);
  EXPECT_THROW(MethodSpec::parse("compact(a,5,4)"), Error);
}

TEST(Manifest, JsonAndCsv) {
  const auto dir = scratch_dir();
  {
    std::ofstream(dir / "scan.json") << R"json({"methods": ["uccsd", "compact(5,5,4)"],
      "geometries": [{"label": "r1", "fcidump": "a.fcidump"}, {"label": "r2", "fcidump": "/abs/b.fcidump"}],
      "vqe": {"grad_tol": 1e-6, "max_function_evals": 50},
      "screening": {"delta_floor": 1e-3}})json";
    std::ofstream(dir / "scan.csv") << "geometry_label,fcidump_path\nr1,a.fcidump\r\n\nr2,/abs/b.fcidump\n";
  }
  const ScanManifest m = parse_manifest(dir / "scan.json");
  ASSERT_EQ(m.methods.size(), 2u);
  EXPECT_DOUBLE_EQ(m.methods[1].screening.delta_floor, 1e-3);
  EXPECT_DOUBLE_EQ(m.methods[1].screening.eps2, 1e-5);
  ASSERT_EQ(m.geometries.size(), 2u);
  EXPECT_EQ(m.geometries[0].fcidump, dir / "a.fcidump");
  EXPECT_EQ(m.geometries[1].fcidump, std::filesystem::path("/abs/b.fcidump"));
  EXPECT_DOUBLE_EQ(m.vqe.grad_tol, 1e-6);
  EXPECT_EQ(m.vqe.max_function_evals, 50u);

  const ScanManifest c = parse_manifest(dir / "scan.csv");
  EXPECT_TRUE(c.methods.empty());
  ASSERT_EQ(c.geometries.size(), 2u);
  EXPECT_EQ(c.geometries[0].label, "r1");
  EXPECT_EQ(c.geometries[0].fcidump, dir / "a.fcidump");

  EXPECT_THROW(parse_manifest_json("{not json", dir), Error);
  EXPECT_THROW(parse_manifest_json(R"({"geometries": [{"label": "x"}]})", dir), Error);
  EXPECT_THROW(parse_manifest_json(R"({"methods": ["bogus"]})", dir), Error);
  EXPECT_THROW(parse_manifest(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}

TEST(Scan, EmptyManifestWritesHeaderOnly) {
  std::ostringstream out;
  write_scan_csv(out, run_scan(ScanManifest{}, 4));
  EXPECT_EQ(out.str(), std::string(kScanCsvHeader) + "\n");
}

TEST(Scan, OrderDeterminismAndErrors) {
  ScanManifest m;
  m.methods = {MethodSpec::parse("uccsd"), MethodSpec::parse("compact")};
  m.geometries = {{"h2", oracle::fixture("h2_0.735.fcidump")},
                  {"broken", oracle::fixture("does_not_exist.fcidump")},
                  {"h2 again", oracle::fixture("h2_0.735.fcidump")}};
  const auto serial = run_scan(m, 1);
  const auto parallel = run_scan(m, 4);
  ASSERT_EQ(serial.size(), 6u);
  std::ostringstream a, b;
  write_scan_csv(a, serial);
  write_scan_csv(b, parallel);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(count_lines(a.str()), 7u);

  EXPECT_EQ(serial[0].geometry_label, "h2");
  EXPECT_EQ(serial[0].method, "uccsd");
  EXPECT_EQ(serial[1].method, m.methods[1].label());
  EXPECT_EQ(serial[2].status, "error");
  EXPECT_EQ(serial[3].status, "error");
  EXPECT_FALSE(serial[2].message.empty());
  EXPECT_EQ(serial[4].geometry_label, "h2 again");
  for (std::size_t k : {0u, 1u, 4u, 5u}) {
    const ScanRecord& r = serial[k];
    EXPECT_EQ(r.status, "ok");
    EXPECT_NEAR(r.error_vs_fci, r.e_vqe - r.e_fci, 1e-15);
    EXPECT_GE(r.error_vs_fci, -1e-9);
    EXPECT_LE(r.e_vqe, r.e_hf);
    EXPECT_NEAR(r.e_vqe, r.e_fci, 1e-8);
  }
  EXPECT_EQ(serial[0].n_params, 3u);
  EXPECT_EQ(serial[1].n_params, 1u);
  EXPECT_NE(a.str().find("\nh2 again,"), std::string::npos);
}

TEST(Pipeline, RecordFields) {
  VqeOptions opts;
  const RunOutput out = run_pipeline("lih", oracle::fixture("lih_4.000.fcidump"), MethodSpec::parse("compact(5,5,4)"), opts);
  const ScanRecord& r = out.record;
  const auto sys = oracle::load_system("lih_4.000.fcidump");
  EXPECT_NEAR(r.e_hf, sys.hf_energy(), 1e-12);
  EXPECT_NEAR(r.e_mp2, sys.hf_energy() + mp2_energy(enumerate_doubles(sys)), 1e-12);
  EXPECT_EQ(r.n_params, out.vqe.params.size());
  EXPECT_EQ(r.n_function_evals, out.vqe.n_function_evals);
  EXPECT_GT(r.final_overlap, 0.99);
  EXPECT_LE(r.final_overlap, 1.0);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("n_params").get<std::size_t>(), r.n_params);
  EXPECT_EQ(j.at("status").get<std::string>(), r.status);
}
