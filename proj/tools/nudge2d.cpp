#include <zlib.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nudge2d/advisor.hpp"
#include "nudge2d/assimilation.hpp"
#include "nudge2d/checkpoint.hpp"
#include "nudge2d/config.hpp"
#include "nudge2d/errors.hpp"
#include "nudge2d/field_io.hpp"
#include "nudge2d/inequality_lab.hpp"
#include "nudge2d/seeding.hpp"
#include "nudge2d/solver.hpp"

namespace fs = std::filesystem;
using namespace nudge2d;

namespace {

constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint32_t file_crc32(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "' for checksum");
  uLong crc = crc32(0L, Z_NULL, 0);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = in.gcount();
    if (got > 0) crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(got));
  }
  return static_cast<std::uint32_t>(crc);
}

/// Output directory plus the inventory for the manifest.
class Outputs {
 public:
  Outputs(fs::path dir, std::string command) : dir_(std::move(dir)), command_(std::move(command)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw ConfigError("output directory '" + dir_.string() + "' is not writable");
    }
    started_ = utc_now();
  }

  fs::path path(const std::string& relative) {
    const fs::path p = dir_ / relative;
    fs::create_directories(p.parent_path());
    files_.push_back(relative);
    return p;
  }

  void write_manifest(const Config* config, std::uint64_t seed) {
    std::ofstream os(dir_ / "manifest.txt");
    os << "command = " << command_ << '\n';
    os << "version = " << NUDGE2D_VERSION << '\n';
    os << "seed = " << seed << '\n';
    os << "start = " << started_ << '\n';
    os << "end = " << utc_now() << '\n';
    if (config != nullptr) {
      os << "[config]\n";
      for (const auto& [key, entry] : config->entries()) os << key << " = " << entry.value << '\n';
    }
    os << "[files]\n";
    for (const auto& f : files_) {
      char crc[16];
      std::snprintf(crc, sizeof crc, "%08x", file_crc32(dir_ / f));
      os << f << " crc32=" << crc << " bytes=" << fs::file_size(dir_ / f) << '\n';
    }
    if (!os) throw std::runtime_error("failed to write manifest");
  }

 private:
  fs::path dir_;
  std::string command_;
  std::string started_;
  std::vector<std::string> files_;
};

fs::path resolve_out_dir(const std::string& flag) {
  if (const char* env = std::getenv("NUDGE2D_OUT_DIR"); env != nullptr && *env != '\0') return env;
  if (flag.empty()) throw ConfigError("no output directory (use --out or NUDGE2D_OUT_DIR)");
  return flag;
}

std::ofstream open_text(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write '" + p.string() + "'");
  return os;
}

void write_diag_row(std::ostream& os, double t, const Diagnostics& d) {
  os << format_double(t) << ',' << format_double(d.energy) << ',' << format_double(d.enstrophy)
     << ',' << format_double(d.palinstrophy) << ',' << format_double(d.gevrey_norm) << '\n';
}

int cmd_spinup(const std::string& config_path, const std::string& out_flag) {
  const Config config = Config::load(config_path);
  const SolverConfig solver = solver_config(config);
  const SpinupSettings settings = spinup_settings(config);
  Outputs out(resolve_out_dir(out_flag), "spinup");

  std::ofstream diag = open_text(out.path("diag.csv"));
  diag << "t,energy,enstrophy,palinstrophy,gevrey\n";
  SpinupSinks sinks;
  sinks.diagnostics_every = settings.diagnostics_every;
  sinks.on_diagnostics = [&](double t, const Diagnostics& d) { write_diag_row(diag, t, d); };
  sinks.checkpoint_every = settings.checkpoint_every;
  sinks.on_checkpoint = [&](const SolverState& s) {
    write_checkpoint(out.path("checkpoints/step_" + std::to_string(s.step_count) + ".nckp"), s,
                     solver);
  };
  const SolverState final_state = spinup(solver, settings.duration, sinks);
  diag.close();
  write_checkpoint(out.path("checkpoint.nckp"), final_state, solver);
  out.write_manifest(&config, master_seed(config));
  std::cout << "spinup: t=" << final_state.time << " steps=" << final_state.step_count
            << " enstrophy=" << format_double(diagnostics(final_state, 0.0).enstrophy) << '\n';
  return 0;
}

int cmd_assimilate(const std::string& config_path, const std::string& checkpoint_path,
                   const std::string& out_flag) {
  const Config config = Config::load(config_path);
  const SolverConfig solver = solver_config(config);
  const NudgingParams nudging = nudging_params(config);
  const TwinSettings settings = twin_settings(config, nudging);
  try {
    nudging.observation.validate(solver.grid);
  } catch (const ContractError& e) {
    throw ConfigError(std::string("nudging section: ") + e.what());
  }
  Checkpoint ckpt = read_checkpoint(checkpoint_path);
  if (ckpt.header.n != solver.grid.n()) {
    throw ConfigError("checkpoint grid n=" + std::to_string(ckpt.header.n) +
                      " does not match solver.n=" + std::to_string(solver.grid.n()));
  }
  Outputs out(resolve_out_dir(out_flag), "assimilate");

  TwinExperiment exp;
  exp.config = solver;
  exp.reference = std::move(ckpt.state);
  exp.nudging = nudging;
  exp.horizon = settings.horizon;
  exp.sample_interval = settings.sample_interval;
  exp.regions = settings.regions;
  exp.snapshot_times = settings.snapshot_times;
  exp.mask_times = settings.mask_times;

  std::ofstream errors = open_text(out.path("errors.csv"));
  write_error_header(errors, exp.regions.size());
  TwinSinks sinks;
  sinks.on_row = [&](const ErrorRow& row) { write_error_row(errors, row); };
  sinks.on_snapshot = [&](double t, const PhysicalField& r, const PhysicalField& a,
                          const PhysicalField& d) {
    const std::string label = time_label(t);
    write_nfld(out.path("snapshots/" + label + "_reference.nfld"), r);
    write_nfld(out.path("snapshots/" + label + "_assimilated.nfld"), a);
    write_nfld(out.path("snapshots/" + label + "_difference.nfld"), d);
  };
  sinks.on_mask = [&](double t, const Mask& m) {
    write_pbm(out.path("masks/" + time_label(t) + ".pbm"), m);
  };
  const ErrorSeries series = run_twin(exp, sinks);
  errors.close();
  out.write_manifest(&config, master_seed(config));
  if (!series.rows.empty()) {
    const auto& last = series.rows.back();
    std::cout << "assimilate: t=" << last.t << " rel_l2=" << format_double(last.rel_l2)
              << " rel_linf=" << format_double(last.rel_linf) << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& config_path, const std::string& out_flag) {
  const Config config = Config::load(config_path);
  const auto n = config.get_int("solver.n");
  Grid grid(128);
  try {
    grid = Grid(static_cast<int>(n));
  } catch (const ContractError& e) {
    throw ConfigError("key 'solver.n': " + std::string(e.what()));
  }
  const VerifySettings settings = verify_settings(config);
  const std::uint64_t seed = derive_seed(master_seed(config), "verify");
  const Mask mask = mask_at(settings.mask, grid, 0.0);
  Outputs out(resolve_out_dir(out_flag), "verify");

  if (settings.mode == "spectral") {
    const FitResult fit = fit_spectral_constant(mask, settings.K_list, settings.samples_per_K, seed,
                                                settings.estimator);
    std::ofstream csv = open_text(out.path("fit.csv"));
    write_fit_csv(csv, fit);
    csv.close();
    std::ofstream summary = open_text(out.path("summary.json"));
    write_fit_summary(summary, fit);
    summary.close();
    write_fit_summary(std::cout, fit);
  } else {
    const ApproxKind kind = parse_approx_kind(settings.mode);
    const ApproxTable table = verify_approx_inequality(kind, settings.p_list, mask, seed,
                                                       settings.ensemble, settings.band);
    std::ofstream csv = open_text(out.path("approx.csv"));
    write_approx_csv(csv, table);
    csv.close();
    std::ofstream summary = open_text(out.path("summary.json"));
    summary << "{\"kind\": \"" << to_string(kind) << "\", \"c0\": " << format_double(table.c0)
            << ", \"spread\": " << format_double(table.spread()) << ", \"ensemble\": "
            << table.ensemble << ", \"band\": " << table.band << "}\n";
    summary.close();
    std::cout << "verify " << to_string(kind) << ": c0=" << format_double(table.c0)
              << " spread=" << format_double(table.spread()) << '\n';
  }
  out.write_manifest(&config, master_seed(config));
  return 0;
}

int cmd_advise(const AdvisorInputs& in) {
  const Advice a = advise_parameters(in);
  std::cout << "mu = " << format_double(a.mu) << '\n'
            << "h_star = " << format_double(a.h_star) << '\n'
            << "sigma_star = " << format_double(a.sigma_star) << '\n'
            << "exponent = " << format_double(a.exponent) << '\n'
            << "# sufficient conditions only; C, C_Omega and c0 are inputs, not derived\n"
            << "# epsilon is checked but does not enter the relations\n";
  return 0;
}

int cmd_bench(int n, int steps) {
  SolverConfig config;
  config.grid = Grid(n);
  SolverState state = spinup(config, 0.0);
  Integrator integrator(config);
  for (int i = 0; i < 10; ++i) integrator.step(state);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < steps; ++i) integrator.step(state);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "bench: n=" << n << " steps=" << steps << " seconds=" << secs
            << " steps_per_second=" << (secs > 0.0 ? steps / secs : 0.0) << '\n';
  return 0;
}

int report(const char* kind, const std::string& what, int code) {
  std::cerr << "error[" << kind << "]: " << what << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nudge2d: nudging data assimilation for 2D periodic Navier-Stokes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NUDGE2D_VERSION);

  std::string config_path, out_dir, checkpoint_path;

  auto* spin = app.add_subcommand("spinup", "integrate from rest and write a checkpoint");
  spin->add_option("-c,--config", config_path, "config file")->required();
  spin->add_option("-o,--out", out_dir, "output directory");

  auto* assim = app.add_subcommand("assimilate", "run a twin nudging experiment");
  assim->add_option("-c,--config", config_path, "config file")->required();
  assim->add_option("-k,--checkpoint", checkpoint_path, "reference checkpoint")->required();
  assim->add_option("-o,--out", out_dir, "output directory");

  auto* verify = app.add_subcommand("verify", "empirical inequality checks");
  verify->add_option("-c,--config", config_path, "config file")->required();
  verify->add_option("-o,--out", out_dir, "output directory");

  AdvisorInputs advice;
  auto* advise = app.add_subcommand("advise", "evaluate the nudging parameter relations");
  advise->add_option("--nu", advice.nu, "viscosity")->required();
  advise->add_option("--G", advice.grashof, "Grashof number")->required();
  advise->add_option("--N", advice.n_modes, "spectral index N")->required();
  advise->add_option("--epsilon", advice.epsilon, "target tolerance");
  advise->add_option("--C", advice.c, "energy-estimate constant C");
  advise->add_option("--c-omega", advice.c_omega, "spectral-inequality constant C_Omega");
  advise->add_option("--c0", advice.c0, "interpolant constant c0");

  int bench_n = 128, bench_steps = 200;
  auto* bench = app.add_subcommand("bench", "time step throughput");
  bench->add_option("--n", bench_n, "grid size");
  bench->add_option("--steps", bench_steps, "timed steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), kExitConfig);
  }

  try {
    if (*spin) return cmd_spinup(config_path, out_dir);
    if (*assim) return cmd_assimilate(config_path, checkpoint_path, out_dir);
    if (*verify) return cmd_verify(config_path, out_dir);
    if (*advise) return cmd_advise(advice);
    if (*bench) return cmd_bench(bench_n, bench_steps);
  } catch (const ConfigError& e) {
    return report("config", e.what(), kExitConfig);
  } catch (const BlowUpError& e) {
    return report("numerical", "blow-up at step " + std::to_string(e.step()) + ": " + e.what(),
                  kExitNumerical);
  } catch (const NumericalError& e) {
    return report("numerical", e.what(), kExitNumerical);
  } catch (const ContractError& e) {
    return report("contract", e.what(), kExitOther);
  } catch (const FormatError& e) {
    return report("format", e.what(), kExitOther);
  } catch (const std::exception& e) {
    return report("internal", e.what(), kExitOther);
  }
  return kExitOther;
}
