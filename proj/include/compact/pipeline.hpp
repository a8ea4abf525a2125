#pragma once

#include "compact/ansatz.hpp"
#include "compact/pauli.hpp"
#include "compact/screening.hpp"
#include "compact/vqe.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace compact {

struct MethodSpec {
  enum class Kind { uccsd, uccsdt, compact };
  Kind kind = Kind::uccsd;
  ScreeningConfig screening;  ///< used by compact only

  /// "uccsd", "uccsdt", "compact" (default thresholds) or "compact(a,b,c)".
  static MethodSpec parse(const std::string& text);
  std::string label() const;
};

struct BuiltAnsatz {
  Ansatz ansatz;
  std::optional<ScreeningLedger> ledger;
};

BuiltAnsatz build_ansatz(const IntegralSystem& sys, const MethodSpec& method);

/// One (geometry, method) cell of a scan.
struct ScanRecord {
  std::string geometry_label;
  std::string fcidump_path;
  std::string method;
  std::string status = "ok";  ///< ok | not_converged | error
  std::string message;
  double e_hf = 0.0;
  double e_mp2 = 0.0;
  double e_vqe = 0.0;
  double e_fci = 0.0;
  double error_vs_fci = 0.0;
  std::size_t n_params = 0;
  std::size_t n_cnot = 0;
  std::size_t n_function_evals = 0;
  double final_overlap = 0.0;
};

struct RunOutput {
  ScanRecord record;
  VqeResult vqe;
};

/// Full pipeline on one geometry: integrals, ansatz, resources, FCI and VQE.
RunOutput run_pipeline(const std::string& geometry_label, const std::filesystem::path& fcidump,
                       const MethodSpec& method, const VqeOptions& options);

/// HF plus the MP2 correlation energy over every double.
double mp2_total_energy(const IntegralSystem& sys, double delta_floor = 0.0);

struct ManifestGeometry {
  std::string label;
  std::filesystem::path fcidump;
};

struct ScanManifest {
  std::vector<MethodSpec> methods;
  std::vector<ManifestGeometry> geometries;
  VqeOptions vqe;
};

/// JSON manifest; relative fcidump paths resolve against the manifest's directory.
ScanManifest parse_manifest(const std::filesystem::path& path);
ScanManifest parse_manifest_json(const std::string& text, const std::filesystem::path& base_dir);
/// Two-column CSV "geometry_label,fcidump_path" with a header row; methods supplied separately.
std::vector<ManifestGeometry> parse_geometry_csv(const std::string& text, const std::filesystem::path& base_dir);

/// Cells in manifest order (geometry-major); failures are recorded, never thrown.
std::vector<ScanRecord> run_scan(const ScanManifest& manifest, unsigned n_workers);

extern const char* const kScanCsvHeader;
void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records);

}  // namespace compact
