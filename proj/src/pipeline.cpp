#include "compact/pipeline.hpp"

#include "compact/errors.hpp"
#include "compact/fci.hpp"

#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

namespace compact {

namespace {

double parse_number(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Error("invalid number '" + text + "'");
  return value;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

}  // namespace

MethodSpec MethodSpec::parse(const std::string& text) {
  MethodSpec m;
  if (text == "uccsd") return m;
  if (text == "uccsdt") {
    m.kind = Kind::uccsdt;
    return m;
  }
  m.kind = Kind::compact;
  if (text == "compact") return m;
  static const std::regex pattern(R"(compact\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*([^,\s)]+)\s*\))");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) throw Error("unknown method '" + text + "'");
  m.screening = ScreeningConfig::from_compact(parse_number(match[1]), parse_number(match[2]), parse_number(match[3]));
  return m;
}

std::string MethodSpec::label() const {
  switch (kind) {
    case Kind::uccsd: return "uccsd";
    case Kind::uccsdt: return "uccsdt";
    case Kind::compact: return screening.label();
  }
  return "unknown";
}

BuiltAnsatz build_ansatz(const IntegralSystem& sys, const MethodSpec& method) {
  switch (method.kind) {
    case MethodSpec::Kind::uccsd: return {assemble_uccsd(sys), std::nullopt};
    case MethodSpec::Kind::uccsdt: return {assemble_uccsdt(sys), std::nullopt};
    case MethodSpec::Kind::compact: {
      ScreeningLedger ledger = run_screening(sys, method.screening);
      Ansatz ansatz = assemble_compact(ledger);
      return {std::move(ansatz), std::move(ledger)};
    }
  }
  throw Error("unknown method");
}

double mp2_total_energy(const IntegralSystem& sys, double delta_floor) {
  return sys.hf_energy() + mp2_energy(enumerate_doubles(sys, delta_floor));
}

RunOutput run_pipeline(const std::string& geometry_label, const std::filesystem::path& fcidump,
                       const MethodSpec& method, const VqeOptions& options) {
  RunOutput out;
  ScanRecord& r = out.record;
  r.geometry_label = geometry_label;
  r.fcidump_path = fcidump.string();
  r.method = method.label();

  const IntegralSystem sys = to_spin_orbitals(read_fcidump(fcidump));
  const int n_qubits = static_cast<int>(sys.n_spin_orbitals());
  r.e_hf = sys.hf_energy();
  r.e_mp2 = mp2_total_energy(sys, method.screening.delta_floor);

  const BuiltAnsatz built = build_ansatz(sys, method);
  const ResourceCount rc = count_resources(built.ansatz, n_qubits);
  r.n_params = rc.n_params;
  r.n_cnot = rc.n_cnot;

  const FciResult fci = fci_ground_state(sys);
  r.e_fci = fci.energy;
  out.vqe = run_vqe(built.ansatz, sys, options, &fci);
  r.e_vqe = out.vqe.energy;
  r.error_vs_fci = r.e_vqe - r.e_fci;
  r.n_function_evals = out.vqe.n_function_evals;
  r.final_overlap = out.vqe.final_overlap.value_or(0.0);
  if (!out.vqe.converged) {
    r.status = "not_converged";
    r.message = out.vqe.termination;
  }
  return out;
}

ScanManifest parse_manifest_json(const std::string& text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("manifest is not valid JSON: ") + e.what());
  }
  ScanManifest m;
  try {
    ScreeningConfig screening;
    if (j.contains("screening")) {
      const auto& s = j.at("screening");
      screening.max_order = s.value("max_order", screening.max_order);
      screening.include_quadruples = s.value("include_quadruples", screening.include_quadruples);
      screening.delta_floor = s.value("delta_floor", screening.delta_floor);
      if (s.contains("eps_q")) screening.eps_q = s.at("eps_q").get<double>();
    }
    for (const auto& name : j.value("methods", nlohmann::json::array())) {
      MethodSpec spec = MethodSpec::parse(name.get<std::string>());
      const ScreeningConfig thresholds = spec.screening;
      spec.screening = screening;
      spec.screening.eps1 = thresholds.eps1;
      spec.screening.eps2 = thresholds.eps2;
      spec.screening.eps3 = thresholds.eps3;
      spec.screening.validate();
      m.methods.push_back(spec);
    }
    for (const auto& g : j.value("geometries", nlohmann::json::array())) {
      std::filesystem::path p = g.at("fcidump").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      m.geometries.push_back({g.at("label").get<std::string>(), p});
    }
    if (j.contains("vqe")) {
      const auto& v = j.at("vqe");
      m.vqe.grad_tol = v.value("grad_tol", m.vqe.grad_tol);
      m.vqe.max_function_evals = v.value("max_function_evals", m.vqe.max_function_evals);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed manifest: ") + e.what());
  }
  m.vqe.validate();
  return m;
}

std::vector<ManifestGeometry> parse_geometry_csv(const std::string& text, const std::filesystem::path& base_dir) {
  std::vector<ManifestGeometry> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("manifest row without a comma: '" + line + "'");
    if (header) {
      header = false;
      if (line.substr(0, comma) == "geometry_label") continue;
    }
    std::filesystem::path p = line.substr(comma + 1);
    if (p.is_relative()) p = base_dir / p;
    out.push_back({line.substr(0, comma), p});
  }
  return out;
}

ScanManifest parse_manifest(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const auto base = path.parent_path();
  if (path.extension() == ".csv") {
    ScanManifest m;
    m.geometries = parse_geometry_csv(text, base);
    return m;
  }
  return parse_manifest_json(text, base);
}

std::vector<ScanRecord> run_scan(const ScanManifest& manifest, unsigned n_workers) {
  const std::size_t n_cells = manifest.geometries.size() * manifest.methods.size();
  std::vector<ScanRecord> records(n_cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < n_cells; cell = next++) {
      const auto& geometry = manifest.geometries[cell / manifest.methods.size()];
      const auto& method = manifest.methods[cell % manifest.methods.size()];
      try {
        records[cell] = run_pipeline(geometry.label, geometry.fcidump, method, manifest.vqe).record;
      } catch (const std::exception& e) {
        ScanRecord& r = records[cell];
        r = ScanRecord{};
        r.geometry_label = geometry.label;
        r.fcidump_path = geometry.fcidump.string();
        r.method = method.label();
        r.status = "error";
        r.message = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(n_workers, static_cast<unsigned>(std::max<std::size_t>(n_cells, 1))));
  std::vector<std::jthread> pool;
  for (unsigned k = 0; k + 1 < n; ++k) pool.emplace_back(worker);
  worker();
  pool.clear();
  return records;
}

const char* const kScanCsvHeader =
    "geometry_label,fcidump_path,method,status,e_hf,e_mp2,e_vqe,e_fci,error_vs_fci,n_params,n_cnot,"
    "n_function_evals,final_overlap,message";

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
  out << kScanCsvHeader << '\n';
  for (const auto& r : records) {
    out << csv_field(r.geometry_label) << ',' << csv_field(r.fcidump_path) << ',' << csv_field(r.method) << ','
        << r.status << ',';
    if (r.status == "error") {
      out << ",,,,,,,,,";
    } else {
      out << number(r.e_hf) << ',' << number(r.e_mp2) << ',' << number(r.e_vqe) << ',' << number(r.e_fci) << ','
          << number(r.error_vs_fci) << ',' << r.n_params << ',' << r.n_cnot << ',' << r.n_function_evals << ','
          << number(r.final_overlap) << ',';
    }
    out << csv_field(r.message) << '\n';
  }
}

}  // namespace compact
