#include "compact/errors.hpp"
#include "compact/fci.hpp"
#include "compact/json_io.hpp"
#include "compact/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace compact;

constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;

struct ScreeningFlags {
  std::string compact;
  std::optional<double> eps1, eps2, eps3, eps_q;
  int max_order = 2;
  bool quadruples = false;
  double delta_floor = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--compact", compact, "thresholds as negative logs, e.g. 5,5,4");
    cmd->add_option("--eps1", eps1, "doubles threshold");
    cmd->add_option("--eps2", eps2, "scatterer threshold");
    cmd->add_option("--eps3", eps3, "triples and singles threshold");
    cmd->add_option("--eps-q", eps_q, "quadruples threshold (defaults to eps3)");
    cmd->add_option("--max-order", max_order, "screening order")->check(CLI::Range(1, 3));
    cmd->add_flag("--quadruples", quadruples, "include third-order scatterers (needs --max-order 3)");
    cmd->add_option("--delta-floor", delta_floor, "clamp |Delta| from below instead of failing on degeneracy");
  }

  ScreeningConfig config() const {
    ScreeningConfig cfg;
    if (!compact.empty()) {
      cfg = MethodSpec::parse("compact(" + compact + ")").screening;
    }
    if (eps1) cfg.eps1 = *eps1;
    if (eps2) cfg.eps2 = *eps2;
    if (eps3) cfg.eps3 = *eps3;
    cfg.eps_q = eps_q;
    cfg.max_order = max_order;
    cfg.include_quadruples = quadruples;
    cfg.delta_floor = delta_floor;
    cfg.validate();
    return cfg;
  }
};

MethodSpec method_from(const std::string& method, const ScreeningFlags& flags) {
  MethodSpec spec = MethodSpec::parse(method);
  if (spec.kind == MethodSpec::Kind::compact && method == "compact") spec.screening = flags.config();
  else if (spec.kind == MethodSpec::Kind::compact) {
    const ScreeningConfig thresholds = spec.screening;
    spec.screening = flags.config();
    spec.screening.eps1 = thresholds.eps1;
    spec.screening.eps2 = thresholds.eps2;
    spec.screening.eps3 = thresholds.eps3;
  }
  spec.screening.delta_floor = flags.delta_floor;
  return spec;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

void print_ledger_summary(const ScreeningLedger& ledger) {
  std::printf("screening %s\n", ledger.config.label().c_str());
  std::printf("  doubles N_D     %zu\n", ledger.n_doubles());
  std::printf("  scatterers      %zu\n", ledger.scatterers.size());
  std::printf("  triples         %zu\n", ledger.n_triples());
  std::printf("  singles N_S     %zu\n", ledger.n_singles());
  if (!ledger.quadruples.empty()) std::printf("  quadruples      %zu\n", ledger.quadruples.size());
  std::printf("  MP2 (screened)  %.10f\n", mp2_energy(ledger.doubles));
  if (ledger.doubles.empty()) std::fprintf(stderr, "warning: empty ansatz, no double passed eps1\n");
  if (!ledger.triples.empty()) {
    std::printf("  %-22s %-16s %-14s %s\n", "triple", "scatterer", "double", "contribution");
    auto tuple = [](const auto& t) {
      std::string s;
      for (int v : t) s += (s.empty() ? "" : ",") + std::to_string(v);
      return s;
    };
    for (const auto& t : ledger.triples) {
      const auto& p = t.selected_pathway();
      std::printf("  %-22s %-16s %-14s %+.3e\n", tuple(t.indices).c_str(), tuple(p.scatterer).c_str(),
                  tuple(p.cluster).c_str(), p.contribution);
    }
  }
}

int cmd_screen(const std::string& fcidump, const ScreeningFlags& flags, const std::string& out_path,
               const std::string& ansatz_path, const std::string& circuit_path) {
  const IntegralSystem sys = to_spin_orbitals(read_fcidump(fcidump));
  for (const auto& w : sys.warnings()) std::fprintf(stderr, "warning: %s\n", w.c_str());
  const ScreeningLedger ledger = run_screening(sys, flags.config());
  print_ledger_summary(ledger);
  const Ansatz ansatz = assemble_compact(ledger);
  std::printf("  parameters      %zu\n", ansatz.n_params());
  if (!out_path.empty()) write_file(out_path, to_json(ledger).dump(2) + "\n");
  if (!ansatz_path.empty()) write_file(ansatz_path, to_json(ansatz).dump(2) + "\n");
  if (!circuit_path.empty()) write_file(circuit_path, circuit_ir(ansatz));
  return 0;
}

int cmd_run(const std::string& fcidump, const std::string& label, const MethodSpec& method, const VqeOptions& options,
            const std::string& out_path, const std::string& trace_path) {
  const RunOutput run = run_pipeline(label.empty() ? fcidump : label, fcidump, method, options);
  const std::string json = to_json(run.record).dump(2) + "\n";
  if (out_path.empty()) std::cout << json;
  else write_file(out_path, json);
  if (!trace_path.empty()) {
    std::ostringstream trace;
    write_trace_csv(trace, run.vqe.trace);
    write_file(trace_path, trace.str());
  }
  if (!run.vqe.converged) {
    std::fprintf(stderr, "warning: optimizer did not converge: %s\n", run.vqe.termination.c_str());
    return kExitNotConverged;
  }
  return 0;
}

int cmd_scan(const std::string& manifest_path, const std::vector<std::string>& methods, const ScreeningFlags& flags,
             const VqeOptions& options, unsigned jobs, const std::string& out_path) {
  ScanManifest manifest = parse_manifest(manifest_path);
  if (manifest.methods.empty() || !methods.empty()) {
    manifest.methods.clear();
    for (const auto& m : methods) manifest.methods.push_back(method_from(m, flags));
    manifest.vqe = options;
  }
  const auto records = run_scan(manifest, jobs);
  std::ostringstream csv;
  write_scan_csv(csv, records);
  if (out_path.empty()) std::cout << csv.str();
  else write_file(out_path, csv.str());
  for (const auto& r : records) {
    if (r.status == "error") std::fprintf(stderr, "error: %s / %s: %s\n", r.geometry_label.c_str(), r.method.c_str(), r.message.c_str());
  }
  return 0;
}

int cmd_fci(const std::string& fcidump) {
  const IntegralSystem sys = to_spin_orbitals(read_fcidump(fcidump));
  const FciResult fci = fci_ground_state(sys);
  std::printf("E_HF   %.12f\n", sys.hf_energy());
  std::printf("E_MP2  %.12f\n", mp2_total_energy(sys));
  std::printf("E_FCI  %.12f\n", fci.energy);
  std::printf("sector dimension %zu, degeneracy %zu, residual %.2e\n", fci.sector_dimension, fci.ground_manifold.size(),
              fci.residual);
  return 0;
}

int cmd_resources(const std::string& fcidump, const MethodSpec& method, const std::string& listing_path) {
  const IntegralSystem sys = to_spin_orbitals(read_fcidump(fcidump));
  const BuiltAnsatz built = build_ansatz(sys, method);
  const int n_qubits = static_cast<int>(sys.n_spin_orbitals());
  const ResourceCount rc = count_resources(built.ansatz, n_qubits);
  std::printf("method %s\nqubits %d\nparameters %zu\npauli_rotations %zu\ncnots %zu\n", method.label().c_str(),
              n_qubits, rc.n_params, rc.n_pauli_rotations, rc.n_cnot);
  if (!listing_path.empty()) write_file(listing_path, rotation_listing(built.ansatz, n_qubits));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MBPT-screened compact ansatz construction and statevector VQE"};
  app.require_subcommand(1);

  std::string fcidump, method = "compact", out, trace, label, manifest, ansatz_out, circuit_out, listing;
  std::vector<std::string> methods;
  VqeOptions vqe;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  ScreeningFlags screen_flags, run_flags, scan_flags, res_flags;

  auto* screen = app.add_subcommand("screen", "run the perturbative screening and print the ledger summary");
  screen->add_option("--fcidump", fcidump, "integral file")->required()->check(CLI::ExistingFile);
  screen->add_option("--out", out, "ledger JSON output");
  screen->add_option("--ansatz", ansatz_out, "ansatz JSON output");
  screen->add_option("--circuit", circuit_out, "generator listing output");
  screen_flags.attach(screen);

  auto add_vqe = [&](CLI::App* cmd) {
    cmd->add_option("--grad-tol", vqe.grad_tol, "gradient infinity-norm tolerance");
    cmd->add_option("--max-evals", vqe.max_function_evals, "function evaluation budget");
  };

  auto* run = app.add_subcommand("run", "full pipeline on one geometry");
  run->add_option("--fcidump", fcidump, "integral file")->required()->check(CLI::ExistingFile);
  run->add_option("--method", method, "uccsd | uccsdt | compact | compact(a,b,c)");
  run->add_option("--label", label, "geometry label for the record");
  run->add_option("--out", out, "record JSON output (stdout when omitted)");
  run->add_option("--trace", trace, "per-evaluation trace CSV");
  add_vqe(run);
  run_flags.attach(run);

  auto* scan = app.add_subcommand("scan", "run every (geometry, method) cell of a manifest");
  scan->add_option("--manifest", manifest, "JSON manifest or geometry CSV")->required()->check(CLI::ExistingFile);
  scan->add_option("--method", methods, "methods overriding the manifest (repeatable)");
  scan->add_option("--out", out, "CSV output (stdout when omitted)");
  scan->add_option("--jobs", jobs, "worker threads");
  add_vqe(scan);
  scan_flags.attach(scan);

  auto* fci = app.add_subcommand("fci", "exact sector ground state");
  fci->add_option("--fcidump", fcidump, "integral file")->required()->check(CLI::ExistingFile);

  auto* res = app.add_subcommand("resources", "parameter and CNOT counts without running VQE");
  res->add_option("--fcidump", fcidump, "integral file")->required()->check(CLI::ExistingFile);
  res->add_option("--method", method, "uccsd | uccsdt | compact | compact(a,b,c)");
  res->add_option("--out", listing, "rotation listing output");
  res_flags.attach(res);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*screen) return cmd_screen(fcidump, screen_flags, out, ansatz_out, circuit_out);
    if (*run) return cmd_run(fcidump, label, method_from(method, run_flags), vqe, out, trace);
    if (*scan) return cmd_scan(manifest, methods, scan_flags, vqe, jobs, out);
    if (*fci) return cmd_fci(fcidump);
    if (*res) return cmd_resources(fcidump, method_from(method, res_flags), listing);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
