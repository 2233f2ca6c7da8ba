/*******************************************************************************
 * Copyright (c) 2026 The kvqe Authors.                                        *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "kvqe/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "kvqe/error.hpp"
#include "kvqe/fermion.hpp"
#include "kvqe/jordan_wigner.hpp"
#include "kvqe/qse.hpp"
#include "kvqe/refdata.hpp"
#include "kvqe/cli/svg.hpp"

namespace kvqe::cli {

namespace fs = std::filesystem;

System load_system(const fs::path &path) {
  if (!fs::exists(path))
    throw ParseError("integral file not found: " + path.string());
  CrystalIntegrals ints = load_integrals(path);
  PauliSum h = jordan_wigner(build_hamiltonian(ints), ints.n_qubits());
  StateVector hf = hartree_fock_state(ints);
  const double e_hf = expectation(hf, h).real();
  return {path, std::move(ints), std::move(h), std::move(hf), e_hf};
}

SectorBasis ground_sector(const CrystalIntegrals &ints) {
  return SectorBasis(ints.spin_orbitals(), SectorSpec{ints.n_elec(), 0, std::nullopt});
}

VqeRun run_vqe(const System &sys, const RunConfig &cfg) {
  const bool filter = cfg.effective_momentum_filter();
  AnsatzCircuit circ = build_ansatz(sys.ints, cfg.variant, filter);
  VqeProblem problem(sys.hamiltonian, circ, sys.hf, cfg.optimizer);
  std::vector<double> init(problem.n_params(), 0.0);
  if (cfg.seed) {
    std::mt19937_64 rng(*cfg.seed);
    std::uniform_real_distribution<double> u(-cfg.init_scale, cfg.init_scale);
    for (double &x : init)
      x = u(rng);
  }
  VqeResult r = minimize(problem, std::move(init));
  return {std::move(circ), std::move(r), filter};
}

StateVector replay_state(const System &sys, Variant variant, bool momentum_filter,
                         std::span<const double> params) {
  const AnsatzCircuit circ = build_ansatz(sys.ints, variant, momentum_filter);
  return prepare_state(circ, params, sys.hf);
}

void write_pec_csv(const std::vector<PecRow> &rows, std::ostream &out) {
  const auto prec = out.precision();
  out << std::setprecision(12);
  out << "geometry_label,e_hf,e_vqe,e_fci,error_vs_fci\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto val = [&](double v) -> std::string {
    if (std::isnan(v))
      return "nan";
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
  };
  for (const auto &r : rows) {
    out << r.geometry_label << ',' << val(r.e_hf) << ',' << val(r.ok ? r.e_vqe : nan) << ','
        << val(r.e_fci) << ',' << val(r.ok ? r.error_vs_fci : nan) << '\n';
  }
  out.precision(prec);
}

Diagnostics diagnose(const System &sys, const StateVector &state) {
  Diagnostics d;
  const auto manifold = ground_manifold(sys.hamiltonian, ground_sector(sys.ints));
  d.fci_energy = manifold.energies.front();
  d.ground_degeneracy = static_cast<int>(manifold.states.size());
  d.infidelity = 1.0 - subspace_fidelity(state, manifold.states);
  const CrystalMomentum cm = crystal_momentum(state, sys.ints.spin_orbitals(), sys.ints.mesh());
  d.kl_over_pi = cm.kl_over_pi;
  d.translation_modulus = cm.modulus;
  d.state_energy = expectation(state, sys.hamiltonian).real();
  return d;
}

nlohmann::json to_json(const Diagnostics &d) {
  return {{"schema_version", kSchemaVersion},
          {"KL_over_pi_re", d.kl_over_pi.real()},
          {"KL_over_pi_im", d.kl_over_pi.imag()},
          {"translation_modulus", d.translation_modulus},
          {"infidelity", d.infidelity},
          {"fci_energy", d.fci_energy},
          {"state_energy", d.state_energy},
          {"ground_degeneracy", d.ground_degeneracy}};
}

namespace {

struct Overrides {
  std::string config;
  std::string out;
  int jobs = 1;
  std::string variant;
  bool momentum_filter = false;
  std::uint64_t seed = 0;
  std::vector<std::string> integrals;
  int max_iter = 0;
  double tol = 0.0;
  std::string input;
  bool hf = false;
  bool no_plot = false;
  bool export_circuit = false;
  std::vector<std::string> tasks;
};

struct OptionHandles {
  CLI::Option *out = nullptr, *jobs = nullptr, *variant = nullptr, *filter = nullptr,
              *seed = nullptr, *max_iter = nullptr, *tol = nullptr, *input = nullptr,
              *tasks = nullptr;
};

OptionHandles add_common(CLI::App *cmd, Overrides &o) {
  OptionHandles h;
  cmd->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
  h.out = cmd->add_option("--out", o.out, "output directory");
  h.jobs = cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  h.variant = cmd->add_option("--variant", o.variant,
                              "ansatz: bUCCSD-Real, iUCCSD, bUCCD-Real, iUCCD");
  h.filter = cmd->add_flag("--momentum-filter,!--no-momentum-filter", o.momentum_filter,
                           "keep only momentum-conserving excitations");
  h.seed = cmd->add_option("--seed", o.seed, "random initial parameters from this seed");
  cmd->add_option("--integrals,files", o.integrals, "integral files");
  h.max_iter = cmd->add_option("--max-iter", o.max_iter, "optimizer iteration limit");
  h.tol = cmd->add_option("--tol", o.tol, "gradient infinity-norm tolerance");
  h.tasks = cmd->add_option("--tasks", o.tasks, "subset of vqe,fci,bands,momentum,fidelity")
                ->delimiter(',');
  cmd->add_flag("--no-plot", o.no_plot, "skip SVG output");
  return h;
}

RunConfig resolve_config(const Overrides &o, const OptionHandles &h) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (h.out->count())
    cfg.output_dir = o.out;
  if (h.jobs->count())
    cfg.jobs = o.jobs;
  if (h.variant->count())
    cfg.variant = parse_variant(o.variant);
  if (h.filter->count())
    cfg.momentum_filter = o.momentum_filter;
  if (h.seed->count())
    cfg.seed = o.seed;
  if (!o.integrals.empty()) {
    cfg.integrals.clear();
    for (const auto &p : o.integrals)
      cfg.integrals.emplace_back(p);
  }
  if (h.max_iter->count())
    cfg.optimizer.max_iterations = o.max_iter;
  if (h.tol->count())
    cfg.optimizer.gradient_tolerance = o.tol;
  if (h.tasks->count()) {
    cfg.tasks.clear();
    for (const auto &t : o.tasks) {
      if (!kKnownTasks.count(t))
        throw ParseError("unknown task '" + t + "'");
      cfg.tasks.insert(t);
    }
  }
  if (h.input && h.input->count())
    cfg.input = o.input;
  if (o.hf)
    cfg.use_hf = true;
  if (o.no_plot)
    cfg.plot = false;
  for (const auto &p : cfg.integrals)
    if (!fs::exists(p))
      throw ParseError("integral file not found: " + p.string());
  return cfg;
}

void write_json(const fs::path &file, const nlohmann::json &doc) {
  fs::create_directories(file.parent_path().empty() ? fs::path(".") : file.parent_path());
  std::ofstream out(file);
  if (!out)
    throw Error("cannot write " + file.string());
  out << doc.dump(2) << '\n';
}

std::ofstream open_out(const fs::path &file) {
  fs::create_directories(file.parent_path().empty() ? fs::path(".") : file.parent_path());
  std::ofstream out(file);
  if (!out)
    throw Error("cannot write " + file.string());
  return out;
}

const fs::path &single_file(const RunConfig &cfg) {
  if (cfg.integrals.empty())
    throw ParseError("no integral file given");
  return cfg.integrals.front();
}

nlohmann::json vqe_document(const System &sys, const VqeRun &run, const RunConfig &cfg) {
  nlohmann::json doc = to_json(run.result);
  const CircuitStats st = report(run.circuit);
  doc["schema_version"] = kSchemaVersion;
  doc["integrals"] = sys.path.string();
  doc["variant"] = to_string(cfg.variant);
  doc["momentum_filter"] = run.momentum_filter;
  doc["n_k"] = sys.ints.n_k();
  doc["n_qubits"] = sys.ints.n_qubits();
  doc["e_hf"] = sys.e_hf;
  doc["circuit"] = {{"n_params", st.n_params},
                    {"n_rotation_gates", st.n_rotation_gates},
                    {"n_blocks", st.n_blocks}};
  return doc;
}

int cmd_vqe(const RunConfig &cfg, bool export_circuit, std::ostream &out) {
  const System sys = load_system(single_file(cfg));
  const VqeRun run = run_vqe(sys, cfg);
  nlohmann::json doc = vqe_document(sys, run, cfg);
  if (cfg.has_task("fci") || cfg.has_task("fidelity") || cfg.has_task("momentum")) {
    const StateVector psi = prepare_state(run.circuit, run.result.params, sys.hf);
    const Diagnostics d = diagnose(sys, psi);
    doc["e_fci"] = d.fci_energy;
    doc["error_vs_fci"] = run.result.energy - d.fci_energy;
    doc["diagnostics"] = to_json(d);
  }
  write_json(cfg.output_dir / "vqe_result.json", doc);
  if (export_circuit) {
    auto f = open_out(cfg.output_dir / "circuit.txt");
    write_circuit(run.circuit, f);
  }
  out << std::setprecision(10) << "energy " << run.result.energy << " Ha, "
      << to_string(run.result.status) << " after " << run.result.iterations << " iterations\n";
  return run.result.converged() ? 0 : 2;
}

double geometry_value(const std::string &label, double fallback) {
  std::size_t i = 0;
  while (i < label.size() && !(std::isdigit(static_cast<unsigned char>(label[i])) ||
                               label[i] == '.' || label[i] == '-'))
    ++i;
  try {
    std::size_t used = 0;
    const double v = std::stod(label.substr(i), &used);
    return used > 0 ? v : fallback;
  } catch (const std::exception &) {
    return fallback;
  }
}

int cmd_pec(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  if (cfg.integrals.size() < 2)
    throw ParseError("pec needs at least two integral files");
  const std::size_t n = cfg.integrals.size();
  std::vector<PecRow> rows(n);
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < n; ++i) {
    std::string label = cfg.integrals[i].stem().string();
    if (label.size() > 5 && label.ends_with(".kint"))
      label.resize(label.size() - 5);
    if (seen[label]++)
      label += "_" + std::to_string(seen[label] - 1);
    rows[i].geometry_label = label;
    rows[i].e_hf = rows[i].e_fci = std::numeric_limits<double>::quiet_NaN();
  }

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      PecRow &row = rows[i];
      try {
        const System sys = load_system(cfg.integrals[i]);
        row.e_hf = sys.e_hf;
        row.e_fci = fci_ground(sys.hamiltonian, ground_sector(sys.ints)).energy;
        const VqeRun run = run_vqe(sys, cfg);
        row.e_vqe = run.result.energy;
        row.error_vs_fci = row.e_vqe - row.e_fci;
        row.converged = run.result.converged();
        row.ok = true;
        write_json(cfg.output_dir / "points" / (row.geometry_label + ".vqe_result.json"),
                   vqe_document(sys, run, cfg));
      } catch (const std::exception &e) {
        row.message = e.what();
        std::lock_guard lock(log_mutex);
        err << "point " << row.geometry_label << " failed: " << e.what() << '\n';
      }
    }
  };
  const int threads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  {
    auto f = open_out(cfg.output_dir / "pec.csv");
    write_pec_csv(rows, f);
  }
  if (cfg.plot) {
    Series hf{"HF", {}, {}}, vqe{to_string(cfg.variant), {}, {}}, fci{"FCI", {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
      const double x = geometry_value(rows[i].geometry_label, static_cast<double>(i));
      hf.x.push_back(x);
      vqe.x.push_back(x);
      fci.x.push_back(x);
      hf.y.push_back(rows[i].e_hf);
      vqe.y.push_back(rows[i].ok ? rows[i].e_vqe : std::numeric_limits<double>::quiet_NaN());
      fci.y.push_back(rows[i].e_fci);
    }
    auto f = open_out(cfg.output_dir / "pec.svg");
    write_svg_plot(f, "Potential energy curve", "geometry", "energy (Hartree)", {hf, vqe, fci});
  }
  bool all_good = true;
  for (const auto &r : rows) {
    out << std::setprecision(10) << r.geometry_label << "  ";
    if (r.ok)
      out << "e_vqe " << r.e_vqe << "  error " << r.error_vs_fci
          << (r.converged ? "" : "  (not converged)") << '\n';
    else
      out << "failed: " << r.message << '\n';
    all_good = all_good && r.ok && r.converged;
  }
  return all_good ? 0 : 2;
}

int cmd_bands(const RunConfig &cfg, std::ostream &out) {
  const System sys = load_system(single_file(cfg));
  const VqeRun run = run_vqe(sys, cfg);
  const StateVector psi = prepare_state(run.circuit, run.result.params, sys.hf);
  const BandStructure b = bands(psi, sys.hamiltonian, sys.ints);
  {
    auto f = open_out(cfg.output_dir / "bands.csv");
    write_bands_csv(b, f);
  }
  nlohmann::json gap = gap_json(b);
  gap["schema_version"] = kSchemaVersion;
  gap["vqe_energy"] = run.result.energy;
  gap["vqe_converged"] = run.result.converged();
  write_json(cfg.output_dir / "gap.json", gap);
  if (cfg.plot) {
    Series v{"valence", {}, {}, true}, c{"conduction", {}, {}, true};
    for (const auto &kb : b.k_points) {
      for (double e : kb.valence) {
        v.x.push_back(kb.k_frac);
        v.y.push_back(e - b.alignment);
      }
      for (double e : kb.conduction) {
        c.x.push_back(kb.k_frac);
        c.y.push_back(e - b.alignment);
      }
    }
    auto f = open_out(cfg.output_dir / "bands.svg");
    write_svg_plot(f, "Quasiparticle bands", "k (units of 2 pi / L)", "energy (Hartree)", {v, c});
  }
  const DirectGap g = direct_gap(b);
  out << std::setprecision(10) << "direct gap " << g.value << " Ha at k index " << g.k << '\n';
  return run.result.converged() ? 0 : 2;
}

int cmd_diag(const RunConfig &cfg, std::ostream &out) {
  StateVector psi;
  std::optional<System> sys;
  if (cfg.input) {
    std::ifstream in(*cfg.input);
    if (!in)
      throw ParseError("cannot open " + cfg.input->string());
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
      throw ParseError("invalid VQE result file: " + std::string(e.what()));
    }
    const VqeResult r = vqe_result_from_json(doc);
    fs::path file = cfg.integrals.empty() ? fs::path(doc.at("integrals").get<std::string>())
                                          : cfg.integrals.front();
    sys.emplace(load_system(file));
    psi = replay_state(*sys, parse_variant(doc.at("variant").get<std::string>()),
                       doc.at("momentum_filter").get<bool>(), r.params);
  } else {
    sys.emplace(load_system(single_file(cfg)));
    psi = cfg.use_hf ? sys->hf : [&] {
      const VqeRun run = run_vqe(*sys, cfg);
      return prepare_state(run.circuit, run.result.params, sys->hf);
    }();
  }
  const Diagnostics d = diagnose(*sys, psi);
  write_json(cfg.output_dir / "diag.json", to_json(d));
  out << std::setprecision(6) << "KL/pi " << d.kl_over_pi.real() << " " << std::showpos
      << d.kl_over_pi.imag() << "i" << std::noshowpos << ", infidelity " << d.infidelity
      << ", fci " << std::setprecision(10) << d.fci_energy << '\n';
  return 0;
}

int cmd_validate(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  if (cfg.integrals.empty())
    throw ParseError("validate needs at least one integral file or data directory");
  bool ok = true;
  for (const auto &p : cfg.integrals) {
    if (fs::is_directory(p)) {
      const ManifestReport rep = verify_manifest(p);
      for (const auto &issue : rep.issues)
        err << "FAIL " << (p / issue.path).string() << ": " << issue.message << '\n';
      out << "manifest " << p.string() << ": " << rep.checked << " files, "
          << rep.issues.size() << " issues\n";
      ok = ok && rep.ok();
      continue;
    }
    try {
      const System sys = load_system(p);
      const double ref = sys.ints.reference("hf");
      std::string hf_note = "no refs.hf";
      if (!std::isnan(ref)) {
        const double diff = std::abs(sys.e_hf - ref);
        std::ostringstream os;
        os << std::setprecision(3) << "|<HF|H|HF> - refs.hf| = " << diff;
        hf_note = os.str();
        if (diff > 1e-8) {
          err << "FAIL " << p.string() << ": HF energy " << sys.e_hf << " vs refs.hf " << ref
              << '\n';
          ok = false;
          continue;
        }
      }
      out << "OK " << p.string() << ": " << sys.ints.n_qubits() << " qubits, n_k "
          << sys.ints.n_k() << ", " << sys.ints.unique_two_body().size() << " unique (pq|rs), "
          << hf_note << '\n';
    } catch (const Error &e) {
      err << "FAIL " << p.string() << ": " << e.what() << '\n';
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Periodic-system VQE, exact diagonalization and quasiparticle bands", "kvqe"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Overrides o;
  std::map<std::string, std::pair<CLI::App *, OptionHandles>> cmds;
  const std::pair<const char *, const char *> defs[] = {
      {"vqe", "optimize a UCC ansatz and write vqe_result.json"},
      {"pec", "scan integral files and write pec.csv"},
      {"bands", "VQE followed by IP/EA subspace expansion; writes bands.csv and gap.json"},
      {"diag", "crystal momentum and fidelity diagnostics; writes diag.json"},
      {"validate", "lint integral files or a reference-data directory"},
  };
  for (const auto &[name, help] : defs) {
    CLI::App *sub = app.add_subcommand(name, help);
    OptionHandles h = add_common(sub, o);
    cmds[name] = {sub, h};
  }
  cmds["vqe"].first->add_flag("--export-circuit", o.export_circuit,
                              "also write the rotation listing to circuit.txt");
  cmds["diag"].second.input =
      cmds["diag"].first->add_option("--input", o.input, "previous vqe_result.json");
  cmds["diag"].first->add_flag("--hf", o.hf, "analyse the Hartree-Fock state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "kvqe: " << e.what() << '\n';
    return 1;
  }

  try {
    for (const auto &[name, entry] : cmds) {
      if (!entry.first->parsed())
        continue;
      const RunConfig cfg = resolve_config(o, entry.second);
      if (name == "vqe")
        return cmd_vqe(cfg, o.export_circuit, out);
      if (name == "pec")
        return cmd_pec(cfg, out, err);
      if (name == "bands")
        return cmd_bands(cfg, out);
      if (name == "diag")
        return cmd_diag(cfg, out);
      return cmd_validate(cfg, out, err);
    }
  } catch (const std::exception &e) {
    err << "kvqe: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

} // namespace kvqe::cli
