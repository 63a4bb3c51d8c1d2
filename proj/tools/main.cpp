// Copyright 2026 The qaut Authors
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

// qaut: validate, run, enumerate, convert and compare quantum automata
// written in the .qaut format.
//
// Exit codes: 0 success, 1 model or verdict error, 2 I/O failure,
// 3 not-equivalent, 64 usage error. QAUT_TOL overrides the default
// tolerance of 1e-9.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qaut/automaton.hpp"
#include "qaut/classical.hpp"
#include "qaut/corpus.hpp"
#include "qaut/dsl/dsl.hpp"
#include "qaut/json_io.hpp"
#include "qaut/quantum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitModel = 1;
constexpr int kExitIo = 2;
constexpr int kExitNotEquivalent = 3;
constexpr int kExitUsage = 64;

struct IoError {
  std::string message;
};

struct ModelError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    throw IoError{"cannot open '" + path + "'"};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError{"cannot read '" + path + "'"};
  }
  return ss.str();
}

double tolerance_from_env() {
  const char* env = std::getenv("QAUT_TOL");
  if (env == nullptr || *env == '\0') {
    return qaut::kDefaultTol;
  }
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (end == nullptr || *end != '\0' || !(tol > 0.0)) {
    throw ModelError{"QAUT_TOL is set to '" + std::string(env) +
                     "', expected a positive number"};
  }
  return tol;
}

qaut::dsl::ElaboratedModel load_model_file(const std::string& path, double tol) {
  const qaut::dsl::SourceDoc doc{read_file(path), path};
  qaut::dsl::ElaborationResult result = qaut::dsl::load_model(doc, tol);
  if (!result.model) {
    for (const qaut::dsl::Diagnostic& d : result.diagnostics) {
      std::cerr << qaut::dsl::format_diagnostic(doc, d) << "\n";
    }
    throw ModelError{"'" + path + "' is not a valid model"};
  }
  return std::move(*result.model);
}

qaut::DensityOperator parse_initial_density(const std::string& text, double tol) {
  const qaut::dsl::SourceDoc doc{text, "--initial"};
  qaut::dsl::InitialParseResult parsed = qaut::dsl::parse_initial_expression(doc);
  if (!parsed.initial) {
    for (const qaut::dsl::Diagnostic& d : parsed.diagnostics) {
      std::cerr << qaut::dsl::format_diagnostic(doc, d) << "\n";
    }
    throw ModelError{"cannot parse the initial state"};
  }
  std::vector<qaut::dsl::Diagnostic> diags;
  const auto value = qaut::dsl::evaluate(parsed.initial->expr, diags);
  if (!value) {
    for (const qaut::dsl::Diagnostic& d : diags) {
      std::cerr << qaut::dsl::format_diagnostic(doc, d) << "\n";
    }
    throw ModelError{"cannot evaluate the initial state"};
  }
  if (parsed.initial->pure) {
    return qaut::pure_state(*value, tol, /*normalize=*/true);
  }
  return qaut::make_density(*value, tol);
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

/// Human-readable matrix: 4-decimal a+bi entries.
std::string pretty_matrix(const qaut::ComplexMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      const double re = m(i, j).real() == 0.0 ? 0.0 : m(i, j).real();
      const double im = m(i, j).imag() == 0.0 ? 0.0 : m(i, j).imag();
      out += format_fixed(re, 4) + (im < 0.0 ? "-" : "+") +
             format_fixed(std::abs(im), 4) + "i";
    }
    out += "]";
  }
  out += "]";
  return out;
}

struct RunOptions {
  std::string path;
  std::string initial;
  std::string initial_file;
  std::uint64_t seed = 0;
  std::size_t max_steps = 64;
  double prune_eps = 0.0;
  bool json = false;
};

std::string resolve_initial_text(const RunOptions& opt) {
  if (!opt.initial_file.empty()) {
    return read_file(opt.initial_file);
  }
  return opt.initial;
}

int cmd_validate(const std::string& path, double tol) {
  const qaut::dsl::ElaboratedModel model = load_model_file(path, tol);
  std::cout << path << ": valid "
            << (model.is_automaton() ? "automaton" : "machine") << " '" << model.name
            << "'\n";
  return kExitOk;
}

int cmd_run(const RunOptions& opt, double tol) {
  const qaut::dsl::ElaboratedModel model = load_model_file(opt.path, tol);
  const std::string initial_text = resolve_initial_text(opt);
  if (initial_text.empty()) {
    throw ModelError{"run needs --initial or --initial-file"};
  }

  if (model.is_automaton()) {
    const qaut::DensityOperator rho0 = parse_initial_density(initial_text, tol);
    const qaut::QuantumRunTrace trace =
        qaut::sample_run(model.automaton(), rho0, opt.seed, opt.max_steps);
    if (opt.json) {
      std::cout << qaut::trace_json(model.name, initial_text, opt.seed, opt.max_steps,
                                    trace)
                       .dump(2)
                << "\n";
      return kExitOk;
    }
    std::cout << "run of " << model.name << " (seed " << opt.seed << ", max steps "
              << opt.max_steps << "): "
              << (trace.status == qaut::QuantumRunTrace::Status::Converged
                      ? "converged"
                      : "step-limit-exhausted")
              << "\n";
    std::cout << "step  node            arc             probability  state\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const auto& s = trace.steps[i];
      std::printf("%-5zu %-15s %-15s %-12s %s\n", i, s.config.node.c_str(),
                  s.arc ? s.arc->c_str() : "-",
                  s.arc ? format_fixed(s.probability, 6).c_str() : "-",
                  pretty_matrix(s.config.state.matrix()).c_str());
    }
    return kExitOk;
  }

  const qaut::StochasticASM& m = model.machine();
  if (!m.snapshots.contains(initial_text)) {
    throw ModelError{"initial snapshot '" + initial_text + "' is not declared"};
  }
  const qaut::ClassicalRunTrace trace =
      qaut::sample_classical_run(m, initial_text, opt.seed, opt.max_steps);
  if (opt.json) {
    std::cout << qaut::trace_json(model.name, initial_text, opt.seed, opt.max_steps,
                                  trace)
                     .dump(2)
              << "\n";
    return kExitOk;
  }
  std::cout << "run of " << model.name << " (seed " << opt.seed << ", max steps "
            << opt.max_steps << "): "
            << (trace.status == qaut::ClassicalRunTrace::Status::Converged
                    ? "converged"
                    : "step-limit-exhausted")
            << "\n";
  std::cout << "step  node            arc             snapshot\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    std::printf("%-5zu %-15s %-15s %s\n", i, s.node.c_str(),
                s.arc ? s.arc->c_str() : "-", s.snapshot.c_str());
  }
  return kExitOk;
}

int cmd_enumerate(const RunOptions& opt, double tol) {
  const qaut::dsl::ElaboratedModel model = load_model_file(opt.path, tol);
  const std::string initial_text = resolve_initial_text(opt);
  if (initial_text.empty()) {
    throw ModelError{"enumerate needs --initial or --initial-file"};
  }

  if (model.is_automaton()) {
    const qaut::DensityOperator rho0 = parse_initial_density(initial_text, tol);
    const qaut::BranchTree tree =
        qaut::enumerate(model.automaton(), rho0, opt.max_steps, opt.prune_eps);
    std::optional<std::map<std::string, qaut::TerminalMixture>> mixtures;
    if (tree.residual_mass <= tol) {
      mixtures = qaut::final_mixture(tree, tol);
    }
    if (opt.json) {
      std::cout << qaut::enumeration_json(model.name, initial_text, opt.max_steps,
                                          opt.prune_eps, tree,
                                          mixtures ? &*mixtures : nullptr)
                       .dump(2)
                << "\n";
      return kExitOk;
    }
    std::cout << "enumeration of " << model.name << " (max steps " << opt.max_steps
              << ", prune eps " << opt.prune_eps << ")\n";
    std::cout << "kind        node            cumulative  state\n";
    for (const qaut::BranchNode* leaf : tree.leaves()) {
      std::printf("%-11s %-15s %-11s ",
                  leaf->kind == qaut::BranchKind::Terminal
                      ? "terminal"
                      : (leaf->kind == qaut::BranchKind::StepLimit ? "step-limit"
                                                                   : "pruned"),
                  leaf->config.node.c_str(),
                  format_fixed(leaf->cumulative, 6).c_str());
      std::cout << pretty_matrix(leaf->config.state.matrix()) << "\n";
    }
    std::cout << "residual mass " << format_fixed(tree.residual_mass, 6) << "\n";
    if (mixtures) {
      std::cout << "final mixture:\n";
      for (const auto& [node, tm] : *mixtures) {
        std::cout << "  " << node << ": mass " << format_fixed(tm.mass, 6) << ", state "
                  << pretty_matrix(tm.state.matrix()) << "\n";
      }
    }
    return kExitOk;
  }

  const qaut::StochasticASM& m = model.machine();
  if (!m.snapshots.contains(initial_text)) {
    throw ModelError{"initial snapshot '" + initial_text + "' is not declared"};
  }
  const qaut::ClassicalEnumeration e =
      qaut::enumerate_classical(m, initial_text, opt.max_steps, opt.prune_eps);
  if (opt.json) {
    std::cout << qaut::enumeration_json(model.name, initial_text, opt.max_steps,
                                        opt.prune_eps, e)
                     .dump(2)
              << "\n";
    return kExitOk;
  }
  std::cout << "enumeration of " << model.name << " (max steps " << opt.max_steps
            << ", prune eps " << opt.prune_eps << ")\n";
  for (const auto& [key, mass] : e.terminal_mass) {
    std::cout << "  (" << key.first << ", " << key.second << "): "
              << format_fixed(mass, 6) << "\n";
  }
  std::cout << "residual mass " << format_fixed(e.residual_mass, 6) << "\n";
  return kExitOk;
}

int cmd_equiv(const std::string& path_a, const std::string& path_b,
              const std::string& node, double tol) {
  const qaut::dsl::ElaboratedModel a = load_model_file(path_a, tol);
  const qaut::dsl::ElaboratedModel b = load_model_file(path_b, tol);
  if (!a.is_automaton() || !b.is_automaton()) {
    throw ModelError{"equiv compares quantum automata"};
  }
  const auto find_op = [&](const qaut::dsl::ElaboratedModel& m,
                           const std::string& path) -> const qaut::QuantumOperation& {
    auto it = m.automaton().ops.find(node);
    if (it == m.automaton().ops.end()) {
      throw ModelError{"'" + path + "' has no operation at node '" + node + "'"};
    }
    return it->second;
  };
  const qaut::QuantumOperation& op_a = find_op(a, path_a);
  const qaut::QuantumOperation& op_b = find_op(b, path_b);

  qaut::PhaseEquivalenceResult result;
  try {
    result = qaut::phase_equivalence_check(op_a, op_b, tol);
  } catch (const qaut::ShapeError& e) {
    throw ModelError{e.what()};
  }
  if (result.thetas) {
    std::cout << "EQUIVALENT\n";
    for (const auto& [x, theta] : *result.thetas) {
      std::cout << "theta(\"" << x << "\") = " << qaut::dsl::format_real(theta) << "\n";
    }
    return kExitOk;
  }
  std::cout << "NOT-EQUIVALENT\n";
  std::cout << "witness outcome: \"" << result.witness << "\"\n";
  return kExitNotEquivalent;
}

int cmd_convert(const std::string& path, const std::string& node, const std::string& to,
                double tol) {
  const qaut::dsl::ElaboratedModel model = load_model_file(path, tol);
  if (!model.is_automaton()) {
    throw ModelError{"convert works on quantum automata"};
  }
  auto it = model.automaton().ops.find(node);
  if (it == model.automaton().ops.end()) {
    throw ModelError{"'" + path + "' has no operation at node '" + node + "'"};
  }
  const qaut::QuantumOperation& op = it->second;

  std::cout << "node " << node << "\n";
  std::cout << "outcomes:";
  for (const std::string& x : op.outcomes().labels()) std::cout << " " << x;
  std::cout << "\n";
  if (to == "isometry") {
    std::cout << "W = " << qaut::dsl::format_matrix_literal(op.isometry().matrix())
              << "\n";
  } else {
    for (const std::string& x : op.outcomes().labels()) {
      std::cout << "K(\"" << x << "\") = "
                << qaut::dsl::format_matrix_literal(op.kraus().block(x)) << "\n";
    }
  }
  return kExitOk;
}

int cmd_examples(const std::string& name, const std::string& copy_to) {
  std::vector<qaut::CorpusEntry> selected;
  if (name.empty()) {
    selected.assign(qaut::corpus().begin(), qaut::corpus().end());
  } else {
    const auto entry = qaut::find_corpus(name);
    if (!entry) {
      throw ModelError{"no example named '" + name + "'"};
    }
    selected.push_back(*entry);
  }

  if (copy_to.empty()) {
    if (name.empty()) {
      for (const qaut::CorpusEntry& e : selected) std::cout << e.name << "\n";
    } else {
      std::cout << selected.front().text;
    }
    return kExitOk;
  }

  std::error_code ec;
  std::filesystem::create_directories(copy_to, ec);
  if (ec) {
    throw IoError{"cannot create directory '" + copy_to + "': " + ec.message()};
  }
  for (const qaut::CorpusEntry& e : selected) {
    const std::filesystem::path target = std::filesystem::path(copy_to) / e.name;
    std::ofstream out(target, std::ios::binary);
    if (!out.good()) {
      throw IoError{"cannot write '" + target.string() + "'"};
    }
    out << e.text;
    out.close();
    std::cout << target.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and verification toolkit for abstract quantum automata"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "parse, elaborate and validate a model file");
  validate->add_option("file", validate_path, "model file")->required();

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "sample one run of a model");
  run->add_option("file", run_opt.path, "model file")->required();
  run->add_option("--initial", run_opt.initial,
                  "initial state expression (automata) or snapshot (machines)");
  run->add_option("--initial-file", run_opt.initial_file,
                  "file holding the initial state expression");
  run->add_option("--seed", run_opt.seed, "random seed (default 0)");
  run->add_option("--max-steps", run_opt.max_steps, "step limit (default 64)");
  bool run_json = false, run_pretty = false;
  run->add_flag("--json", run_json, "machine-readable output");
  run->add_flag("--pretty", run_pretty, "human-readable output (default)");

  RunOptions enum_opt;
  CLI::App* enumerate =
      app.add_subcommand("enumerate", "expand all branches of a model run");
  enumerate->add_option("file", enum_opt.path, "model file")->required();
  enumerate->add_option("--initial", enum_opt.initial,
                        "initial state expression (automata) or snapshot (machines)");
  enumerate->add_option("--initial-file", enum_opt.initial_file,
                        "file holding the initial state expression");
  enumerate->add_option("--max-steps", enum_opt.max_steps, "depth limit (default 64)");
  enumerate->add_option("--prune-eps", enum_opt.prune_eps,
                        "drop branches at or below this cumulative mass (default 0)");
  bool enum_json = false, enum_pretty = false;
  enumerate->add_flag("--json", enum_json, "machine-readable output");
  enumerate->add_flag("--pretty", enum_pretty, "human-readable output (default)");

  std::string equiv_a, equiv_b, equiv_node;
  double equiv_tol = -1.0;
  CLI::App* equiv = app.add_subcommand(
      "equiv", "decide outcome-wise phase equivalence of two node operations");
  equiv->add_option("fileA", equiv_a, "first model file")->required();
  equiv->add_option("fileB", equiv_b, "second model file")->required();
  equiv->add_option("--node", equiv_node, "node whose operations to compare")
      ->required();
  equiv->add_option("--tol", equiv_tol,
                    "comparison tolerance (default QAUT_TOL or 1e-9)");

  std::string convert_path, convert_node, convert_to;
  CLI::App* convert = app.add_subcommand(
      "convert", "print a node operation as Kraus blocks or isometry");
  convert->add_option("file", convert_path, "model file")->required();
  convert->add_option("--node", convert_node, "node to convert")->required();
  convert->add_option("--to", convert_to, "target representation")
      ->required()
      ->check(CLI::IsMember({"isometry", "kraus"}));

  std::string examples_name, examples_dir;
  CLI::App* examples = app.add_subcommand("examples", "list or copy the example models");
  examples->add_option("name", examples_name, "print this example instead of listing");
  examples->add_option("--copy-to", examples_dir,
                       "write example files into a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if ((*run && run_opt.max_steps == 0) || (*enumerate && enum_opt.max_steps == 0)) {
    std::cerr << "error: --max-steps must be positive\n";
    return kExitUsage;
  }
  if ((run_json && run_pretty) || (enum_json && enum_pretty)) {
    std::cerr << "error: --json and --pretty are mutually exclusive\n";
    return kExitUsage;
  }
  run_opt.json = run_json;
  enum_opt.json = enum_json;

  try {
    const double tol = tolerance_from_env();
    if (*validate) return cmd_validate(validate_path, tol);
    if (*run) return cmd_run(run_opt, tol);
    if (*enumerate) return cmd_enumerate(enum_opt, tol);
    if (*equiv) {
      return cmd_equiv(equiv_a, equiv_b, equiv_node, equiv_tol > 0.0 ? equiv_tol : tol);
    }
    if (*convert) return cmd_convert(convert_path, convert_node, convert_to, tol);
    if (*examples) return cmd_examples(examples_name, examples_dir);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitIo;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitModel;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qaut::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  }
  return kExitUsage;
}
