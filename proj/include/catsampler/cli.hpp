// Copyright 2026 The catsampler authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "catsampler/experiments.hpp"
#include "catsampler/io.hpp"

namespace catsampler {

namespace detail {

/// Writes the manifest to an explicit path, to a default path next to the
/// primary output file, or as a single machine-readable stdout line when the
/// run produced no files.
inline void emit_manifest(const json& manifest, const std::string& explicit_path,
                          const std::string& default_path, bool json_mode,
                          std::ostream& out) {
  std::string path = explicit_path.empty() ? default_path : explicit_path;
  if (!path.empty()) {
    write_manifest(path, manifest);
    if (!json_mode) out << "manifest written to " << path << "\n";
  } else if (!json_mode) {
    out << "manifest: " << manifest.dump() << "\n";
  }
}

inline std::string signature_label(const std::vector<int>& counts) {
  std::string s = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(counts[i]);
  }
  return s + ")";
}

struct SimulateArgs {
  std::string config_path;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::string out_dist;
  std::string out_samples;
  std::string manifest_path;
  bool json = false;
};

inline int run_simulate(const SimulateArgs& a,
                        const std::vector<std::string>& argv,
                        std::ostream& out) {
  ExperimentConfig cfg = load_config(a.config_path);
  if (a.samples) cfg.samples = *a.samples;
  if (a.seed) cfg.seed = *a.seed;
  if (!a.out_dist.empty()) cfg.out_dist = a.out_dist;
  if (!a.out_samples.empty()) cfg.out_samples = a.out_samples;
  if (a.json) cfg.json_mirror = true;

  const InputRegister reg = make_register(cfg.modes);
  const UnitaryMatrix u = realize_unitary(cfg.unitary, reg.mode_count());
  const CutoffPolicy cutoffs = realize_cutoff(cfg.cutoff, reg, u);
  const SampledDistribution dist = build_distribution(u, reg, cutoffs);

  std::vector<Signature> samples;
  if (cfg.samples > 0) {
    samples = draw_samples(dist, cfg.samples, cfg.seed);
  }

  json outputs = json::object();
  if (!cfg.out_dist.empty()) {
    std::ostringstream csv;
    write_distribution_csv(csv, dist);
    detail::write_file(cfg.out_dist, csv.str());
    outputs["distribution_csv"] = cfg.out_dist;
    if (cfg.json_mirror) {
      detail::write_file(cfg.out_dist + ".json",
                         distribution_to_json(dist).dump(2) + "\n");
      outputs["distribution_json"] = cfg.out_dist + ".json";
    }
  }
  if (!cfg.out_samples.empty() && !samples.empty()) {
    std::ostringstream csv;
    write_samples_csv(csv, samples);
    detail::write_file(cfg.out_samples, csv.str());
    outputs["samples_csv"] = cfg.out_samples;
    if (cfg.json_mirror) {
      detail::write_file(cfg.out_samples + ".json",
                         samples_to_json(samples).dump() + "\n");
      outputs["samples_json"] = cfg.out_samples + ".json";
    }
  }

  json manifest = manifest_base("simulate", argv);
  manifest["inputs"] = json{{"config", a.config_path},
                            {"seed", cfg.seed},
                            {"samples", cfg.samples},
                            {"register_digest", dist.register_digest()},
                            {"unitary_digest", dist.unitary_digest()},
                            {"per_mode_cutoffs", cutoffs.per_mode_max}};
  if (cutoffs.tail_epsilon) {
    manifest["inputs"]["tail_epsilon"] = *cutoffs.tail_epsilon;
  }
  manifest["captured_mass"] = dist.captured_mass();
  manifest["outputs"] = outputs;

  std::string default_manifest;
  if (!cfg.out_dist.empty()) {
    default_manifest = cfg.out_dist + ".manifest.json";
  } else if (!cfg.out_samples.empty()) {
    default_manifest = cfg.out_samples + ".manifest.json";
  }

  if (cfg.json_mirror && cfg.out_dist.empty() && cfg.out_samples.empty()) {
    // No files requested: mirror everything on stdout.
    json report{{"captured_mass", dist.captured_mass()},
                {"distribution", distribution_to_json(dist)},
                {"manifest", manifest}};
    if (!samples.empty()) report["samples"] = samples_to_json(samples);
    out << report.dump(2) << "\n";
    emit_manifest(manifest, a.manifest_path, default_manifest, true, out);
    return 0;
  }

  out << "modes: " << reg.mode_count() << "\n"
      << "branches: " << reg.branch_count() << "\n"
      << "signatures: " << dist.size() << "\n"
      << "captured_mass: " << fmt_g9(dist.captured_mass()) << "\n";
  // Largest outcomes, for a quick look.
  std::vector<std::uint64_t> ranks(dist.size());
  for (std::uint64_t r = 0; r < dist.size(); ++r) ranks[r] = r;
  std::sort(ranks.begin(), ranks.end(), [&](std::uint64_t x, std::uint64_t y) {
    return dist.probability_at(x) > dist.probability_at(y);
  });
  const std::size_t top = std::min<std::size_t>(8, ranks.size());
  for (std::size_t i = 0; i < top; ++i) {
    const auto counts = signature_counts_at(dist.cutoffs(), ranks[i]);
    out << "P" << signature_label(counts) << " = "
        << fmt_g9(dist.probability_at(ranks[i])) << "\n";
  }
  if (!samples.empty()) out << "samples drawn: " << samples.size() << "\n";
  emit_manifest(manifest, a.manifest_path, default_manifest, cfg.json_mirror,
                out);
  return 0;
}

inline json hom_report_to_json(const HomReport& r) {
  return json{{"alpha", r.alpha},
              {"p11", r.p11},
              {"p20", r.p20},
              {"p02", r.p02},
              {"gamma20", json::array({r.gamma20.real(), r.gamma20.imag()})},
              {"gamma02", json::array({r.gamma02.real(), r.gamma02.imag()})},
              {"dev11", r.dev11},
              {"dev20", r.dev20},
              {"dev02", r.dev02},
              {"signs_ok", r.signs_ok},
              {"captured_mass", r.captured_mass}};
}

}  // namespace detail

/// Command-line driver. args excludes the program name; returns the process
/// exit code (0 ok, 1 validation failure, 2 resource-cap failure).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{
      "catsampler: exact photon-count sampling of coherent-state "
      "superpositions through linear optics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  detail::SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Build the outcome distribution from a JSON config");
  sim->add_option("--config", sim_args.config_path, "config JSON file")
      ->required();
  std::uint64_t sim_samples = 0, sim_seed = 0;
  CLI::Option* sim_samples_opt =
      sim->add_option("--samples", sim_samples, "override sample count");
  CLI::Option* sim_seed_opt =
      sim->add_option("--seed", sim_seed, "override sampling seed");
  sim->add_option("--out-dist", sim_args.out_dist, "distribution CSV path");
  sim->add_option("--out-samples", sim_args.out_samples, "samples CSV path");
  sim->add_option("--manifest", sim_args.manifest_path, "manifest JSON path");
  sim->add_flag("--json", sim_args.json, "also write/print JSON mirrors");

  double hom_alpha = 0.0;
  bool hom_json = false;
  std::string hom_manifest;
  CLI::App* hom = app.add_subcommand(
      "hom", "Two odd cats on a 50/50 coupler: bunching probabilities");
  hom->add_option("--alpha", hom_alpha, "cat amplitude in [1e-6, 0.1]")
      ->required();
  hom->add_flag("--json", hom_json, "print the report as JSON");
  hom->add_option("--manifest", hom_manifest, "manifest JSON path");

  int red_n = 0, red_m = 0;
  double red_alpha = 0.0;
  std::uint64_t red_seed = 0;
  bool red_json = false;
  std::string red_manifest;
  CLI::App* red = app.add_subcommand(
      "reduction", "Small-amplitude odd cats versus the Fock reference");
  red->add_option("--n", red_n, "number of occupied modes")->required();
  red->add_option("--m", red_m, "total mode count")->required();
  red->add_option("--alpha", red_alpha, "cat amplitude")->required();
  red->add_option("--seed", red_seed, "Haar unitary seed")->required();
  red->add_flag("--json", red_json, "print the report as JSON");
  red->add_option("--manifest", red_manifest, "manifest JSON path");

  int bound_n = 0;
  double bound_alpha = 0.0, bound_c = 0.0, bound_k = 0.0;
  bool bound_json = false;
  std::string bound_manifest;
  CLI::App* bnd = app.add_subcommand(
      "bound", "Single-photon success probability for n odd cats");
  bnd->add_option("--n", bound_n, "photon count")->required();
  bnd->add_option("--alpha", bound_alpha, "cat amplitude")->required();
  CLI::Option* bound_c_opt =
      bnd->add_option("--c", bound_c, "polynomial threshold scale");
  CLI::Option* bound_k_opt =
      bnd->add_option("--k", bound_k, "polynomial threshold power");
  bnd->add_flag("--json", bound_json, "print the report as JSON");
  bnd->add_option("--manifest", bound_manifest, "manifest JSON path");

  std::string perm_matrix;
  bool perm_json = false;
  std::string perm_manifest;
  CLI::App* perm = app.add_subcommand(
      "permanent", "Permanent of a complex matrix from a JSON file");
  perm->add_option("--matrix", perm_matrix, "matrix JSON file")->required();
  perm->add_flag("--json", perm_json, "print the result as JSON");
  perm->add_option("--manifest", perm_manifest, "manifest JSON path");

  int haar_m = 0;
  std::uint64_t haar_seed = 0;
  std::string haar_out, haar_manifest;
  CLI::App* haar = app.add_subcommand(
      "haar", "Write a seeded Haar-random unitary to a JSON file");
  haar->add_option("--m", haar_m, "dimension")->required();
  haar->add_option("--seed", haar_seed, "generator seed")->required();
  haar->add_option("--out", haar_out, "output matrix JSON file")->required();
  haar->add_option("--manifest", haar_manifest, "manifest JSON path");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      if (sim_samples_opt->count() > 0) sim_args.samples = sim_samples;
      if (sim_seed_opt->count() > 0) sim_args.seed = sim_seed;
      return detail::run_simulate(sim_args, args, out);
    }

    if (hom->parsed()) {
      const HomReport r = hom_check(hom_alpha);
      json manifest = manifest_base("hom", args);
      manifest["inputs"] = json{{"alpha", hom_alpha}};
      manifest["captured_mass"] = r.captured_mass;
      if (hom_json) {
        json report = detail::hom_report_to_json(r);
        report["manifest"] = manifest;
        out << report.dump(2) << "\n";
      } else {
        out << "alpha: " << fmt_g9(r.alpha) << "\n"
            << "P(1,1) = " << fmt_g9(r.p11) << "\n"
            << "P(2,0) = " << fmt_g9(r.p20) << "\n"
            << "P(0,2) = " << fmt_g9(r.p02) << "\n"
            << "gamma(2,0) = " << fmt_g9(r.gamma20.real()) << "\n"
            << "gamma(0,2) = " << fmt_g9(r.gamma02.real()) << "\n"
            << "|P(2,0)-1/2| = " << fmt_g9(r.dev20) << "\n"
            << "|P(0,2)-1/2| = " << fmt_g9(r.dev02) << "\n"
            << "signs_ok: " << (r.signs_ok ? "true" : "false") << "\n"
            << "captured_mass: " << fmt_g9(r.captured_mass) << "\n";
      }
      detail::emit_manifest(manifest, hom_manifest, "", hom_json, out);
      return 0;
    }

    if (red->parsed()) {
      const ReductionReport r =
          fock_reduction_check(red_n, red_m, red_alpha, red_seed);
      json manifest = manifest_base("reduction", args);
      manifest["inputs"] = json{{"n", r.n},
                                {"m", r.m},
                                {"alpha", r.alpha},
                                {"seed", r.seed}};
      if (red_json) {
        json report{{"n", r.n},
                    {"m", r.m},
                    {"alpha", r.alpha},
                    {"seed", r.seed},
                    {"max_deviation", r.max_deviation},
                    {"fitted_c", r.fitted_c},
                    {"manifest", manifest}};
        out << report.dump(2) << "\n";
      } else {
        out << "n: " << r.n << "  m: " << r.m
            << "  alpha: " << fmt_g9(r.alpha) << "  seed: " << r.seed << "\n"
            << "max_deviation = " << fmt_g9(r.max_deviation) << "\n"
            << "fitted_c = " << fmt_g9(r.fitted_c) << "\n";
      }
      detail::emit_manifest(manifest, red_manifest, "", red_json, out);
      return 0;
    }

    if (bnd->parsed()) {
      json manifest = manifest_base("bound", args);
      manifest["inputs"] = json{{"n", bound_n}, {"alpha", bound_alpha}};
      const bool has_threshold =
          bound_c_opt->count() > 0 || bound_k_opt->count() > 0;
      if (has_threshold) {
        const double c = bound_c_opt->count() > 0 ? bound_c : 1.0;
        const double k = bound_k_opt->count() > 0 ? bound_k : 0.0;
        const HardnessBoundReport r = bound_check(bound_n, bound_alpha, c, k);
        if (bound_json) {
          json report{{"n", r.n},          {"alpha", r.alpha},
                      {"probability", r.probability},
                      {"threshold", r.threshold},
                      {"satisfied", r.satisfied},
                      {"underflow", r.underflow},
                      {"manifest", manifest}};
          out << report.dump(2) << "\n";
        } else {
          out << "P = " << fmt_g9(r.probability) << "\n"
              << "threshold c*n^-k = " << fmt_g9(r.threshold) << "\n"
              << "satisfied: " << (r.satisfied ? "true" : "false") << "\n";
          if (r.underflow) out << "underflow: probability rounded to 0\n";
        }
      } else {
        const HardnessBoundValue v = hardness_bound(bound_n, bound_alpha);
        if (bound_json) {
          json report{{"n", bound_n},
                      {"alpha", bound_alpha},
                      {"probability", v.probability},
                      {"underflow", v.underflow},
                      {"manifest", manifest}};
          out << report.dump(2) << "\n";
        } else {
          out << "P = " << fmt_g9(v.probability) << "\n";
          if (v.underflow) out << "underflow: probability rounded to 0\n";
        }
      }
      detail::emit_manifest(manifest, bound_manifest, "", bound_json, out);
      return 0;
    }

    if (perm->parsed()) {
      const Eigen::MatrixXcd m = load_matrix(perm_matrix);
      const Complex p = permanent(m);
      json manifest = manifest_base("permanent", args);
      manifest["inputs"] = json{{"matrix", perm_matrix},
                                {"dim", m.rows()}};
      if (perm_json) {
        json report{{"permanent", json::array({p.real(), p.imag()})},
                    {"manifest", manifest}};
        out << report.dump(2) << "\n";
      } else {
        out << "Per = " << fmt_g9(p.real()) << " + " << fmt_g9(p.imag())
            << "i\n";
      }
      detail::emit_manifest(manifest, perm_manifest, "", perm_json, out);
      return 0;
    }

    if (haar->parsed()) {
      const UnitaryMatrix u = haar_random_unitary(haar_m, haar_seed);
      save_unitary(haar_out, u);
      json manifest = manifest_base("haar", args);
      manifest["inputs"] = json{{"m", haar_m}, {"seed", haar_seed}};
      manifest["outputs"] = json{{"matrix_json", haar_out}};
      manifest["unitary_digest"] = digest_unitary(u);
      out << "wrote " << haar_out << "\n";
      detail::emit_manifest(manifest, haar_manifest,
                            haar_out + ".manifest.json", false, out);
      return 0;
    }
  } catch (const ResourceCapError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

inline int run_cli(int argc, char** argv, std::ostream& out,
                   std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace catsampler
