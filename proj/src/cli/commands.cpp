// Copyright 2026 The qchan Authors
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

#include "qchan/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qchan/channels.hpp"
#include "qchan/errors.hpp"
#include "qchan/generators.hpp"
#include "qchan/probes.hpp"
#include "qchan/spec_io.hpp"
#include "qchan/states.hpp"

namespace qchan::cli {

namespace {

using io::json;

struct Common {
  double eq_tol = 1e-9;
  double rank_tol = 1e-8;
  std::string format = "table";

  Tolerances tolerances() const {
    Tolerances t{eq_tol, rank_tol};
    t.validate();
    return t;
  }
  bool as_json() const { return format == "json"; }
};

/// Raised inside a command to leave with a specific exit code.
struct CommandFailure {
  int code;
  std::string kind;
  std::string message;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--tol", c.eq_tol, "Absolute equality tolerance")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--rank-tol", c.rank_tol, "Relative singular-value threshold")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--format", c.format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"table", "json"}));
}

json tolerances_json(const Tolerances& t) {
  json j;
  j["eq_tol"] = t.eq_tol;
  j["rank_tol"] = t.rank_tol;
  return j;
}

// ---------------------------------------------------------------- table view

std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_complex(const json& e) {
  const double re = e[0].get<double>();
  const double im = e[1].get<double>();
  if (im == 0.0) return fmt_real(re);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re, im);
  return buf;
}

bool is_pair(const json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

bool is_complex_vector(const json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), is_pair);
}

bool is_complex_matrix(const json& j) {
  return j.is_array() && !j.empty() &&
         std::all_of(j.begin(), j.end(), [](const json& r) { return is_complex_vector(r); });
}

std::string colored(const std::string& text, bool good, const Environment& env) {
  if (!env.color) return text;
  return (good ? "\033[32m" : "\033[31m") + text + "\033[0m";
}

std::string scalar_text(const std::string& key, const json& v, const Environment& env) {
  if (v.is_null()) return "-";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (key == "verdict" || key == "outcome") {
      return colored(s, s == "Preserves" || s == "Ok", env);
    }
    return s;
  }
  if (v.is_boolean()) {
    const bool b = v.get<bool>();
    const std::string s = b ? "true" : "false";
    if (key == "consistent" || key == "valid" || key == "mes") return colored(s, b, env);
    return s;
  }
  if (v.is_number_float()) return fmt_real(v.get<double>());
  return v.dump();
}

void render_table(const json& doc, int depth, std::ostream& out, const Environment& env) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      render_table(value, depth + 1, out, env);
    } else if (is_complex_matrix(value)) {
      out << pad << key << ":\n";
      for (const auto& row : value) {
        out << pad << "  ";
        for (std::size_t c = 0; c < row.size(); ++c) {
          out << (c ? "  " : "") << fmt_complex(row[c]);
        }
        out << "\n";
      }
    } else if (is_complex_vector(value)) {
      out << pad << key << ": [";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << (i ? ", " : "") << fmt_complex(value[i]);
      }
      out << "]\n";
    } else if (value.is_array()) {
      out << pad << key << ": [";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << (i ? ", " : "") << scalar_text(key, value[i], env);
      }
      out << "]\n";
    } else {
      out << pad << key << ": " << scalar_text(key, value, env) << "\n";
    }
  }
}

void emit(const json& doc, const Common& c, std::ostream& out, const Environment& env) {
  if (c.as_json()) {
    out << io::format_document(doc);
  } else {
    render_table(doc, 0, out, env);
  }
}

// ---------------------------------------------------------------- loading

struct LoadedChannel {
  KrausChannel channel;
  std::string source;
  std::string digest;
};

LoadedChannel load_channel(const std::string& path, const Tolerances& tol) {
  std::string text;
  io::ChannelSpec spec;
  try {
    text = io::read_file(path);
    spec = io::parse_channel(text);
  } catch (const io::ParseError& e) {
    throw CommandFailure{kExitParse, "parse", path + ": " + e.what()};
  }
  try {
    return {validate_cptp(std::move(spec.kraus), spec.dim_in, spec.dim_out, tol), path,
            io::digest(text)};
  } catch (const NotTracePreservingError& e) {
    throw CommandFailure{kExitInvalid, "not_trace_preserving",
                         path + ": " + e.what()};
  } catch (const Error& e) {
    throw CommandFailure{kExitInvalid, "invalid_channel", path + ": " + e.what()};
  }
}

json class_json(const ChannelClass& c) {
  json j;
  j["tag"] = std::string(to_string(c.tag));
  j["kraus_rank"] = c.kraus_rank;
  if (c.isometry) j["isometry"] = io::to_json(*c.isometry);
  if (c.omega) j["omega"] = io::to_json(*c.omega);
  return j;
}

// ---------------------------------------------------------------- commands

struct ValidateArgs {
  Common common;
  std::string path;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, const Environment& env) {
  const Tolerances tol = a.common.tolerances();
  json doc;
  doc["command"] = "validate";
  doc["file"] = a.path;
  std::string text;
  io::ChannelSpec spec;
  try {
    text = io::read_file(a.path);
    spec = io::parse_channel(text);
  } catch (const io::ParseError& e) {
    throw CommandFailure{kExitParse, "parse", a.path + ": " + e.what()};
  }
  doc["digest"] = io::digest(text);
  doc["dim_in"] = spec.dim_in;
  doc["dim_out"] = spec.dim_out;
  doc["kraus_count"] = spec.kraus.size();
  const double dev = trace_preservation_deviation(spec.kraus);
  doc["deviation"] = dev;
  doc["tolerances"] = tolerances_json(tol);
  int code = kExitOk;
  try {
    (void)validate_cptp(std::move(spec.kraus), spec.dim_in, spec.dim_out, tol);
    doc["valid"] = true;
  } catch (const Error& e) {
    doc["valid"] = false;
    doc["error"] = e.what();
    code = kExitInvalid;
  }
  emit(doc, a.common, out, env);
  return code;
}

struct ClassifyArgs {
  Common common;
  std::string path;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out, const Environment& env) {
  const Tolerances tol = a.common.tolerances();
  const LoadedChannel ch = load_channel(a.path, tol);
  const ChannelClass cls = classify(ch.channel, tol);
  json doc;
  doc["command"] = "classify";
  doc["file"] = a.path;
  doc["digest"] = ch.digest;
  doc["dim_in"] = ch.channel.dim_in();
  doc["dim_out"] = ch.channel.dim_out();
  doc["class"] = std::string(to_string(cls.tag));
  doc["kraus_rank"] = cls.kraus_rank;
  if (cls.isometry) doc["witness"] = io::to_json(*cls.isometry);
  if (cls.omega) doc["witness"] = io::to_json(*cls.omega);
  doc["tolerances"] = tolerances_json(tol);
  emit(doc, a.common, out, env);
  return kExitOk;
}

struct ProbeArgs {
  Common common;
  std::string mode;
  std::string channel_a;
  std::string channel_b;
  std::vector<Index> dims;
  std::optional<Index> r;
  Index samples = kDefaultProbeSamples;
  std::uint64_t seed = 0;
};

ProbeMode parse_mode(const std::string& s) {
  if (s == "mes") return ProbeMode::Mes;
  if (s == "schmidt") return ProbeMode::Schmidt;
  return ProbeMode::Separable;
}

int cmd_probe(const ProbeArgs& a, std::ostream& out, const Environment& env) {
  const Tolerances tol = a.common.tolerances();
  const ProbeMode mode = parse_mode(a.mode);

  std::optional<LoadedChannel> ch_a, ch_b;
  if (!a.channel_a.empty()) ch_a = load_channel(a.channel_a, tol);
  if (!a.channel_b.empty()) ch_b = load_channel(a.channel_b, tol);

  BipartiteDims dims;
  if (!a.dims.empty()) {
    dims = {a.dims[0], a.dims[1]};
  } else if (ch_a && ch_b) {
    dims = {ch_a->channel.dim_in(), ch_b->channel.dim_in()};
  } else {
    throw CommandFailure{kExitParse, "usage", "--dims is required unless both channels are given"};
  }
  if (dims.m < 1 || dims.n < 1) {
    throw CommandFailure{kExitParse, "usage", "--dims must be positive"};
  }
  if (!ch_a) ch_a = LoadedChannel{KrausChannel::identity(dims.m), "identity", ""};
  if (!ch_b) ch_b = LoadedChannel{KrausChannel::identity(dims.n), "identity", ""};
  if (mode == ProbeMode::Schmidt && !a.r) {
    throw CommandFailure{kExitParse, "usage", "schmidt mode requires --r"};
  }
  const Index r = mode == ProbeMode::Schmidt ? *a.r : 0;

  EquivalenceReport rep;
  try {
    rep = decide_equivalence(ch_a->channel, ch_b->channel, dims, mode, r, a.samples,
                             Seed{a.seed}, tol);
  } catch (const DimensionError& e) {
    throw CommandFailure{kExitParse, "usage", e.what()};
  } catch (const ContractError& e) {
    throw CommandFailure{kExitParse, "usage", e.what()};
  }

  const auto side = [](const LoadedChannel& c, const ChannelClass& cls) {
    json j;
    j["source"] = c.source;
    j["digest"] = c.digest.empty() ? json(nullptr) : json(c.digest);
    j["dim_in"] = c.channel.dim_in();
    j["dim_out"] = c.channel.dim_out();
    j["class"] = class_json(cls);
    return j;
  };

  const ProbeReport& b = rep.behavioral;
  json doc;
  doc["command"] = "probe";
  doc["mode"] = std::string(to_string(b.mode));
  doc["dims"] = {dims.m, dims.n};
  doc["r"] = mode == ProbeMode::Mes ? json(nullptr) : json(b.schmidt_rank);
  doc["samples"] = a.samples;
  doc["seed"] = a.seed;
  doc["tolerances"] = tolerances_json(tol);
  doc["channel_a"] = side(*ch_a, rep.class_a);
  doc["channel_b"] = side(*ch_b, rep.class_b);
  json beh;
  beh["verdict"] = std::string(to_string(b.verdict));
  beh["samples_used"] = b.samples_used;
  beh["max_deviation"] = b.max_deviation;
  if (b.counterexample) {
    const Counterexample& cx = *b.counterexample;
    json c;
    c["sample_index"] = cx.sample_index;
    c["diagnostic"] = cx.diagnostic;
    c["deviation"] = cx.deviation;
    c["input_dims"] = {cx.input_dims.m, cx.input_dims.n};
    c["output_dims"] = {cx.output_dims.m, cx.output_dims.n};
    c["input"] = io::to_json(cx.input);
    c["output"] = io::to_json(cx.output);
    beh["counterexample"] = std::move(c);
  } else {
    beh["counterexample"] = nullptr;
  }
  doc["behavioral"] = std::move(beh);
  doc["structure_predicts_preservation"] = rep.structure_predicts_preservation;
  doc["consistent"] = rep.consistent;
  doc["note"] = rep.note;
  emit(doc, a.common, out, env);
  return rep.consistent ? kExitOk : kExitInconsistent;
}

struct StateArgs {
  Common common;
  std::string action;
  std::string path;
};

int cmd_state(const StateArgs& a, std::ostream& out, const Environment& env) {
  const Tolerances tol = a.common.tolerances();
  std::string text;
  io::StateSpec spec;
  try {
    text = io::read_file(a.path);
    spec = io::parse_state(text);
  } catch (const io::ParseError& e) {
    throw CommandFailure{kExitParse, "parse", a.path + ": " + e.what()};
  }

  std::optional<PureState> pure;
  std::optional<DensityMatrix> mixed;
  try {
    if (spec.is_pure()) {
      pure.emplace(spec.dims, std::get<ComplexVector>(spec.data), tol);
    } else {
      mixed.emplace(spec.dims, std::get<ComplexMatrix>(spec.data), tol);
    }
  } catch (const Error& e) {
    throw CommandFailure{kExitInvalid, "invalid_state", a.path + ": " + e.what()};
  }

  json doc;
  doc["command"] = "state";
  doc["action"] = a.action;
  doc["file"] = a.path;
  doc["digest"] = io::digest(text);
  doc["dims"] = {spec.dims.m, spec.dims.n};
  doc["kind"] = pure ? "pure" : "mixed";

  if (a.action == "mes") {
    if (pure) {
      doc["mes"] = is_mes_pure(*pure, tol);
      doc["deviation"] = mes_deviation(*pure);
    } else {
      doc["mes"] = is_mes_mixed(*mixed, tol);
      doc["deviation"] = mes_deviation(*mixed, tol);
    }
  } else {
    if (!pure) {
      throw CommandFailure{kExitUnsupported, "unsupported",
                           a.action + " is only defined for pure states"};
    }
    if (a.action == "schmidt") {
      const SchmidtData sd = schmidt_decompose(*pure, tol);
      doc["rank"] = sd.rank;
      const RealVector lead = sd.leading();
      doc["coefficients"] = std::vector<double>(lead.begin(), lead.end());
    } else {
      doc["entropy_bits"] = entanglement_entropy(*pure);
    }
  }
  doc["tolerances"] = tolerances_json(tol);
  emit(doc, a.common, out, env);
  return kExitOk;
}

struct GenArgs {
  Common common;
  std::string kind;
  std::optional<Index> d, d_in, d_out, e, k, r;
  std::vector<Index> dims;
  std::string name;
  std::optional<double> p;
  std::uint64_t seed = 0;
  std::string out_path;
};

template <typename T>
T require(const std::optional<T>& v, const char* flag, const std::string& kind) {
  if (!v) throw CommandFailure{kExitParse, "usage", kind + " requires " + flag};
  return *v;
}

BipartiteDims require_dims(const GenArgs& a) {
  if (a.dims.empty()) throw CommandFailure{kExitParse, "usage", a.kind + " requires --dims"};
  return {a.dims[0], a.dims[1]};
}

json generate(const GenArgs& a) {
  Rng rng(Seed{a.seed});
  const std::string& kind = a.kind;
  if (kind == "unitary") {
    return io::to_json(KrausChannel::conjugation(haar_unitary(require(a.d, "--d", kind), rng)));
  }
  if (kind == "isometry") {
    return io::to_json(KrausChannel::conjugation(
        random_isometry(require(a.d_in, "--d-in", kind), require(a.d_out, "--d-out", kind), rng)));
  }
  if (kind == "cptp") {
    return io::to_json(random_cptp(require(a.d_in, "--d-in", kind),
                                   require(a.d_out, "--d-out", kind),
                                   require(a.e, "--e", kind), rng));
  }
  if (kind == "constant-pure") {
    return io::to_json(random_constant_pure_channel(require(a.d_in, "--d-in", kind),
                                                    require(a.d_out, "--d-out", kind), rng));
  }
  if (kind == "mes-pure") return io::to_json(random_mes_pure(require_dims(a), rng));
  if (kind == "mes-mixed") {
    return io::to_json(random_mes_mixed(require_dims(a), require(a.k, "--k", kind), rng));
  }
  if (kind == "pure-rank") {
    return io::to_json(random_pure_with_rank(require_dims(a), require(a.r, "--r", kind), rng));
  }
  // named
  if (a.name.empty()) throw CommandFailure{kExitParse, "usage", "named requires --name"};
  return io::to_json(named_channel(a.name, require(a.p, "--p", kind), require(a.d, "--d", kind)));
}

int cmd_gen(const GenArgs& a, std::ostream& out, const Environment& env) {
  json file;
  try {
    file = generate(a);
  } catch (const Error& e) {
    throw CommandFailure{kExitParse, "invalid_parameters", e.what()};
  } catch (const std::invalid_argument& e) {
    throw CommandFailure{kExitParse, "invalid_parameters", e.what()};
  }
  const std::string text = io::format_document(file);
  if (a.out_path.empty()) {
    out << text;
    return kExitOk;
  }
  try {
    io::write_file(a.out_path, text);
  } catch (const io::ParseError& e) {
    throw CommandFailure{kExitParse, "io", e.what()};
  }
  json doc;
  doc["command"] = "gen";
  doc["kind"] = a.kind;
  doc["seed"] = a.seed;
  doc["out"] = a.out_path;
  doc["digest"] = io::digest(text);
  emit(doc, a.common, out, env);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Quantum channel analysis: validation, classification and "
               "entanglement-preservation probes",
               "qchan"};
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check that a channel file is CPTP");
  validate->add_option("path", va.path, "Channel file")->required();
  add_common(validate, va.common);

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Structural class of a channel");
  classify_cmd->add_option("path", ca.path, "Channel file")->required();
  add_common(classify_cmd, ca.common);

  ProbeArgs pa;
  auto* probe = app.add_subcommand("probe", "Probe a local channel against a state family");
  probe->add_option("mode", pa.mode, "mes | schmidt | separable")
      ->required()
      ->check(CLI::IsMember({"mes", "schmidt", "separable"}));
  probe->add_option("--channel-a", pa.channel_a, "Channel on A (default identity)");
  probe->add_option("--channel-b", pa.channel_b, "Channel on B (default identity)");
  probe->add_option("--dims", pa.dims, "Subsystem dimensions m n")->expected(2);
  probe->add_option("--r", pa.r, "Target Schmidt rank (schmidt mode)");
  probe->add_option("--samples", pa.samples, "Samples per probe")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  probe->add_option("--seed", pa.seed, "Root seed")->capture_default_str();
  add_common(probe, pa.common);

  StateArgs sa;
  auto* state = app.add_subcommand("state", "Inspect a bipartite state file");
  state->add_option("action", sa.action, "schmidt | mes | entropy")
      ->required()
      ->check(CLI::IsMember({"schmidt", "mes", "entropy"}));
  state->add_option("path", sa.path, "State file")->required();
  add_common(state, sa.common);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a channel or state file");
  gen->add_option("kind", ga.kind, "Fixture kind")
      ->required()
      ->check(CLI::IsMember({"unitary", "isometry", "cptp", "constant-pure", "mes-pure",
                             "mes-mixed", "pure-rank", "named"}));
  gen->add_option("--d", ga.d, "Dimension");
  gen->add_option("--d-in", ga.d_in, "Input dimension");
  gen->add_option("--d-out", ga.d_out, "Output dimension");
  gen->add_option("--e", ga.e, "Environment size (Kraus count)");
  gen->add_option("--dims", ga.dims, "Subsystem dimensions m n")->expected(2);
  gen->add_option("--k", ga.k, "Number of blocks (mes-mixed)");
  gen->add_option("--r", ga.r, "Schmidt rank (pure-rank)");
  gen->add_option("--name", ga.name, "depolarizing | dephasing | amplitude_damping");
  gen->add_option("--p", ga.p, "Channel parameter in [0, 1]");
  gen->add_option("--seed", ga.seed, "Root seed")->capture_default_str();
  gen->add_option("--out", ga.out_path, "Output file (stdout when omitted)");
  add_common(gen, ga.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  const Common* common = nullptr;
  try {
    if (validate->parsed()) {
      common = &va.common;
      return cmd_validate(va, out, env);
    }
    if (classify_cmd->parsed()) {
      common = &ca.common;
      return cmd_classify(ca, out, env);
    }
    if (probe->parsed()) {
      common = &pa.common;
      return cmd_probe(pa, out, env);
    }
    if (state->parsed()) {
      common = &sa.common;
      return cmd_state(sa, out, env);
    }
    common = &ga.common;
    return cmd_gen(ga, out, env);
  } catch (const CommandFailure& f) {
    if (common && common->as_json()) {
      json doc;
      doc["error"] = f.kind;
      doc["message"] = f.message;
      doc["exit_code"] = f.code;
      out << io::format_document(doc);
    }
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace qchan::cli
