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

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "catsampler/cat_states.hpp"
#include "catsampler/digest.hpp"
#include "catsampler/errors.hpp"
#include "catsampler/parallel.hpp"
#include "catsampler/propagation.hpp"
#include "catsampler/sampler.hpp"
#include "catsampler/unitary.hpp"
#include "catsampler/version.hpp"

namespace catsampler {

using nlohmann::json;

// ---------------------------------------------------------------------------
// formatting helpers

/// Shortest-round-trip-ish fixed formatting: 17 significant digits, used for
/// byte-reproducible data files.
inline std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Report formatting: 9 significant digits.
inline std::string fmt_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON primitives

namespace detail {

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ConfigError(std::string(what) + " must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

/// Parse with a line/column diagnostic instead of a raw byte offset.
inline json parse_json_text(const std::string& text,
                            const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << col << ": " << e.what();
    throw ConfigError(msg.str());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

}  // namespace detail

inline json load_json_file(const std::string& path) {
  return detail::parse_json_text(detail::read_file(path), path);
}

// ---------------------------------------------------------------------------
// matrix files: {"dim": m, "re": [[...]], "im": [[...]]}, row-major

inline json matrix_to_json(const Eigen::MatrixXcd& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json re_row = json::array(), im_row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") ||
      !j.contains("im")) {
    throw ConfigError("matrix object needs \"dim\", \"re\" and \"im\"");
  }
  const auto dim = j.at("dim").get<std::int64_t>();
  if (dim < 1) throw ConfigError("matrix \"dim\" must be positive");
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (!re.is_array() || !im.is_array() ||
      re.size() != static_cast<std::size_t>(dim) ||
      im.size() != static_cast<std::size_t>(dim)) {
    throw ConfigError("matrix \"re\"/\"im\" must be dim x dim arrays");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    const json& re_row = re[r];
    const json& im_row = im[r];
    if (!re_row.is_array() || !im_row.is_array() ||
        re_row.size() != static_cast<std::size_t>(dim) ||
        im_row.size() != static_cast<std::size_t>(dim)) {
      throw ConfigError("matrix \"re\"/\"im\" must be dim x dim arrays");
    }
    for (std::int64_t c = 0; c < dim; ++c) {
      m(r, c) = Complex(re_row[c].get<double>(), im_row[c].get<double>());
    }
  }
  return m;
}

/// Raw matrix read (no unitarity requirement).
inline Eigen::MatrixXcd load_matrix(const std::string& path) {
  return matrix_from_json(load_json_file(path));
}

/// Validated read used wherever the file must hold a unitary.
inline UnitaryMatrix load_unitary(const std::string& path,
                                  double tol = UnitaryMatrix::kDefaultTol) {
  return validate_unitary(load_matrix(path), tol);
}

inline void save_unitary(const std::string& path, const UnitaryMatrix& u) {
  detail::write_file(path, matrix_to_json(u.matrix()).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// cat specs
//
// Full form:  {"terms": [{"lambda": [re, im], "alpha": [re, im]}, ...]}
// Shorthands: {"kind": "vacuum"}
//             {"kind": "coherent", "alpha": [re, im]}
//             {"kind": "even_cat" | "odd_cat", "alpha": [re, im]}
// Term weights in files are pre-normalization; loading renormalizes.

inline json cat_to_json(const CatSpec& cat) {
  json terms = json::array();
  for (const CatTerm& t : cat.terms()) {
    terms.push_back(json{{"lambda", detail::complex_to_json(t.weight)},
                         {"alpha", detail::complex_to_json(t.alpha)}});
  }
  return json{{"terms", std::move(terms)}};
}

inline CatSpec cat_from_json(const json& j) {
  if (!j.is_object()) {
    throw ConfigError("cat spec must be a JSON object");
  }
  if (j.contains("kind")) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "vacuum") return vacuum();
    if (kind != "coherent" && kind != "even_cat" && kind != "odd_cat") {
      throw ConfigError("unknown cat kind: " + kind);
    }
    if (!j.contains("alpha")) {
      throw ConfigError("cat kind \"" + kind + "\" needs an \"alpha\"");
    }
    const Complex alpha = detail::complex_from_json(j.at("alpha"), "alpha");
    if (kind == "coherent") return coherent_state(alpha);
    if (kind == "even_cat") return even_cat(alpha);
    return odd_cat(alpha);
  }
  if (!j.contains("terms") || !j.at("terms").is_array() ||
      j.at("terms").empty()) {
    throw ConfigError("cat spec needs a non-empty \"terms\" array");
  }
  std::vector<CatTerm> terms;
  for (const json& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("lambda") || !t.contains("alpha")) {
      throw ConfigError("cat term needs \"lambda\" and \"alpha\"");
    }
    terms.push_back({detail::complex_from_json(t.at("lambda"), "lambda"),
                     detail::complex_from_json(t.at("alpha"), "alpha")});
  }
  return make_cat(std::move(terms));
}

// ---------------------------------------------------------------------------
// experiment config

struct GateSpec {
  enum class Kind { Beamsplitter, PhaseShifter };
  Kind kind = Kind::Beamsplitter;
  int i = 0;  // 1-based modes
  int j = 0;
  double theta = 0.0;
  double phi = 0.0;
};

struct UnitarySpec {
  enum class Kind { Haar, Explicit, Gates };
  Kind kind = Kind::Haar;
  std::uint64_t seed = 0;
  Eigen::MatrixXcd matrix;       // Explicit
  std::vector<GateSpec> gates;   // Gates
};

struct CutoffSpec {
  bool automatic = true;
  double epsilon = 1e-9;
  std::vector<int> per_mode;
};

struct ExperimentConfig {
  std::vector<CatSpec> modes;
  UnitarySpec unitary;
  CutoffSpec cutoff;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string out_dist;
  std::string out_samples;
  bool json_mirror = false;
};

inline ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  if (!j.contains("modes") || !j.at("modes").is_array() ||
      j.at("modes").empty()) {
    throw ConfigError("config needs a non-empty \"modes\" array");
  }
  for (const json& mj : j.at("modes")) cfg.modes.push_back(cat_from_json(mj));
  const int m = static_cast<int>(cfg.modes.size());

  if (!j.contains("unitary")) throw ConfigError("config needs a \"unitary\"");
  const json& uj = j.at("unitary");
  const std::string kind = uj.value("kind", std::string{});
  if (kind == "haar") {
    cfg.unitary.kind = UnitarySpec::Kind::Haar;
    cfg.unitary.seed = uj.value("seed", std::uint64_t{0});
  } else if (kind == "explicit") {
    cfg.unitary.kind = UnitarySpec::Kind::Explicit;
    cfg.unitary.matrix = matrix_from_json(uj);
    if (cfg.unitary.matrix.rows() != m) {
      throw ConfigError("explicit unitary dim does not match mode count");
    }
  } else if (kind == "gates") {
    cfg.unitary.kind = UnitarySpec::Kind::Gates;
    if (!uj.contains("gates") || !uj.at("gates").is_array()) {
      throw ConfigError("gate-list unitary needs a \"gates\" array");
    }
    for (const json& gj : uj.at("gates")) {
      GateSpec g;
      const std::string type = gj.value("type", std::string{});
      if (type == "beamsplitter") {
        g.kind = GateSpec::Kind::Beamsplitter;
        g.i = gj.value("i", 0);
        g.j = gj.value("j", 0);
        g.theta = gj.value("theta", 0.0);
        g.phi = gj.value("phi", 0.0);
      } else if (type == "phase_shifter") {
        g.kind = GateSpec::Kind::PhaseShifter;
        g.i = gj.value("i", 0);
        g.phi = gj.value("phi", 0.0);
      } else {
        throw ConfigError("unknown gate type: \"" + type + "\"");
      }
      cfg.unitary.gates.push_back(g);
    }
  } else {
    throw ConfigError("unitary \"kind\" must be haar, explicit or gates");
  }

  if (!j.contains("cutoff")) throw ConfigError("config needs a \"cutoff\"");
  const json& cj = j.at("cutoff");
  if (cj.contains("auto")) {
    cfg.cutoff.automatic = true;
    cfg.cutoff.epsilon = cj.at("auto").get<double>();
  } else if (cj.contains("per_mode")) {
    cfg.cutoff.automatic = false;
    cfg.cutoff.per_mode = cj.at("per_mode").get<std::vector<int>>();
    if (static_cast<int>(cfg.cutoff.per_mode.size()) != m) {
      throw ConfigError("per_mode cutoff length does not match mode count");
    }
  } else {
    throw ConfigError("cutoff needs either \"auto\" or \"per_mode\"");
  }

  cfg.samples = j.value("samples", std::uint64_t{0});
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.out_dist = j.value("out_dist", std::string{});
  cfg.out_samples = j.value("out_samples", std::string{});
  cfg.json_mirror = j.value("json", false);
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  return config_from_json(load_json_file(path));
}

/// Instantiates the unitary named by the config for an m-mode register.
inline UnitaryMatrix realize_unitary(const UnitarySpec& spec, int m) {
  switch (spec.kind) {
    case UnitarySpec::Kind::Haar:
      return haar_random_unitary(m, spec.seed);
    case UnitarySpec::Kind::Explicit:
      return validate_unitary(spec.matrix);
    case UnitarySpec::Kind::Gates: {
      UnitaryMatrix u = validate_unitary(Eigen::MatrixXcd::Identity(m, m));
      for (const GateSpec& g : spec.gates) {
        const UnitaryMatrix gate =
            g.kind == GateSpec::Kind::Beamsplitter
                ? beamsplitter(m, g.i, g.j, g.theta, g.phi)
                : phase_shifter(m, g.i, g.phi);
        u = compose(u, gate);  // listed order: earlier gates act first
      }
      return u;
    }
  }
  throw ConfigError("unreachable unitary kind");
}

inline CutoffPolicy realize_cutoff(const CutoffSpec& spec,
                                   const InputRegister& reg,
                                   const UnitaryMatrix& u) {
  if (spec.automatic) return auto_cutoff(reg, u, spec.epsilon);
  CutoffPolicy policy;
  policy.per_mode_max = spec.per_mode;
  return policy;
}

// ---------------------------------------------------------------------------
// distribution and sample files

/// CSV with header s_1,...,s_m,probability, rows in lexicographic order and
/// a trailing captured-mass comment.
inline void write_distribution_csv(std::ostream& out,
                                   const SampledDistribution& dist) {
  const int m = dist.mode_count();
  for (int i = 1; i <= m; ++i) out << "s_" << i << ",";
  out << "probability\n";
  for (std::uint64_t r = 0; r < dist.size(); ++r) {
    const auto counts = signature_counts_at(dist.cutoffs(), r);
    for (int c : counts) out << c << ",";
    out << fmt_g17(dist.probability_at(r)) << "\n";
  }
  out << "# captured_mass=" << fmt_g17(dist.captured_mass()) << "\n";
}

/// One signature per row, comma-separated counts.
inline void write_samples_csv(std::ostream& out,
                              const std::vector<Signature>& samples) {
  for (const Signature& s : samples) {
    const auto& counts = s.counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i) out << ",";
      out << counts[i];
    }
    out << "\n";
  }
}

inline json distribution_to_json(const SampledDistribution& dist) {
  json entries = json::array();
  for (std::uint64_t r = 0; r < dist.size(); ++r) {
    entries.push_back(json{{"s", signature_counts_at(dist.cutoffs(), r)},
                           {"p", dist.probability_at(r)}});
  }
  json cut{{"per_mode_max", dist.cutoffs().per_mode_max}};
  if (dist.cutoffs().tail_epsilon) {
    cut["tail_epsilon"] = *dist.cutoffs().tail_epsilon;
  }
  return json{{"m", dist.mode_count()},
              {"cutoffs", std::move(cut)},
              {"captured_mass", dist.captured_mass()},
              {"register_digest", dist.register_digest()},
              {"unitary_digest", dist.unitary_digest()},
              {"entries", std::move(entries)}};
}

inline json samples_to_json(const std::vector<Signature>& samples) {
  json arr = json::array();
  for (const Signature& s : samples) arr.push_back(s.counts());
  return arr;
}

// ---------------------------------------------------------------------------
// branch expansion dump

namespace detail {

inline void write_term_jsonl(std::ostream& out, const MultiModeTerm& term) {
  json alphas = json::array();
  for (Complex a : term.alphas) alphas.push_back(complex_to_json(a));
  out << json{{"coeff", complex_to_json(term.coeff)},
              {"alphas", std::move(alphas)}}
             .dump()
      << "\n";
}

inline void check_dump_size(int m, std::uint64_t branches) {
  if (branches > 1'000'000 / static_cast<std::uint64_t>(m)) {
    throw TermExplosionError(
        "term dump limited to m * branches <= 1e6 values");
  }
}

}  // namespace detail

/// JSON-lines dump of the raw branch expansion, one
/// {"coeff": [re, im], "alphas": [[re, im], ...]} object per line.
inline void write_expanded_terms_jsonl(std::ostream& out,
                                       const InputRegister& reg) {
  detail::check_dump_size(reg.mode_count(), reg.branch_count());
  for_each_branch(reg,
                  [&](const MultiModeTerm& t) { detail::write_term_jsonl(out, t); });
}

/// Same dump after propagation through the unitary.
inline void write_expanded_terms_jsonl(std::ostream& out,
                                       const OutputSuperposition& output) {
  detail::check_dump_size(output.mode_count(), output.term_count());
  output.for_each_term(
      [&](const MultiModeTerm& t) { detail::write_term_jsonl(out, t); });
}

// ---------------------------------------------------------------------------
// run manifest

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Common manifest skeleton; callers add command-specific inputs/outputs.
inline json manifest_base(const std::string& command,
                          const std::vector<std::string>& argv) {
  return json{{"tool", "catsampler"},
              {"version", kVersion},
              {"command", command},
              {"argv", argv},
              {"threads", thread_count()},
              {"timestamp_utc", utc_timestamp()}};
}

inline void write_manifest(const std::string& path, const json& manifest) {
  detail::write_file(path, manifest.dump(2) + "\n");
}

}  // namespace catsampler
