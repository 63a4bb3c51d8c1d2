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

// Acceptance suite: the end-to-end guarantees of the toolkit, each checked
// at a fixed tolerance and (where stated) under a wall-clock budget. Prints
// one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qaut/automaton.hpp"
#include "qaut/classical.hpp"
#include "qaut/corpus.hpp"
#include "qaut/dsl/dsl.hpp"
#include "qaut/quantum.hpp"
#include "support/dsl_helpers.hpp"
#include "support/generators.hpp"

using namespace qaut;
using qaut::testing::TestRng;

namespace {

struct Checker {
  std::vector<std::string> failures;

  void require(bool condition, const std::string& what) {
    if (!condition) failures.push_back(what);
  }
};

struct Criterion {
  int number;
  std::string title;
  double time_budget_s;  // 0 = no stated budget
  std::function<void(Checker&)> body;
};

AbstractQuantumAutomaton load_corpus_automaton(const std::string& name) {
  const CorpusEntry entry = *find_corpus(name);
  dsl::ElaborationResult r =
      dsl::load_model({std::string(entry.text), std::string(entry.name)});
  return std::get<AbstractQuantumAutomaton>(r.model->model);
}

ComplexMatrix projector_of(const ComplexMatrix& v) {
  ComplexMatrix p(v.rows(), v.rows());
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = 0; j < v.rows(); ++j) {
      p(i, j) = v(i, 0) * std::conj(v(j, 0));
    }
  }
  return p;
}

ComplexMatrix bell_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  return projector_of(ComplexMatrix{{s}, {0.0}, {0.0}, {s}});
}

double angle_diff(double a, double b) {
  double d = std::fmod(a - b, 2.0 * std::numbers::pi);
  if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
  if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
  return std::abs(d);
}

// 1. Qubit cleaner: every input state is driven to |0><0|.
void criterion_cleaner(Checker& check) {
  const AbstractQuantumAutomaton cleaner = load_corpus_automaton("cleaner");
  const ComplexMatrix clean{{1.0, 0.0}, {0.0, 0.0}};
  TestRng rng(1001);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityOperator rho = qaut::testing::random_density(rng, 2);
    const BranchTree tree = enumerate(cleaner, rho, 8);
    check.require(tree.residual_mass == 0.0,
                  "trial " + std::to_string(trial) + ": residual mass is not zero");
    const auto mixtures = final_mixture(tree);
    check.require(mixtures.size() == 1, "expected a single terminal node");
    const double dev = max_abs_diff(mixtures.at("t").state.matrix(), clean);
    check.require(dev <= 1e-9, "trial " + std::to_string(trial) +
                                   ": final mixture deviates by " + std::to_string(dev));
  }
}

// 2. Entangler: every two-qubit input is driven to the Bell projector.
void criterion_entangler(Checker& check) {
  const AbstractQuantumAutomaton entangler = load_corpus_automaton("entangler");
  const ComplexMatrix bell = bell_matrix();
  TestRng rng(1002);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityOperator rho = qaut::testing::random_density(rng, 4);
    const auto mixtures = final_mixture(enumerate(entangler, rho, 8));
    const double dev = max_abs_diff(mixtures.at("t").state.matrix(), bell);
    check.require(dev <= 1e-9, "trial " + std::to_string(trial) +
                                   ": final mixture deviates by " + std::to_string(dev));
  }
}

// 3. Teleportation: the pair prepared by the entangler from any state
// carries any payload; four quarter-probability branches, the claimed final
// mixture, and the payload on the third qubit.
void criterion_teleportation(Checker& check) {
  const AbstractQuantumAutomaton entangler = load_corpus_automaton("entangler");
  const AbstractQuantumAutomaton tele = load_corpus_automaton("teleportation");
  TestRng rng(1003);

  std::vector<ComplexMatrix> pairs;
  for (int i = 0; i < 20; ++i) {
    const DensityOperator rho = qaut::testing::random_density(rng, 4);
    pairs.push_back(
        final_mixture(enumerate(entangler, rho, 8)).at("t").state.matrix());
  }

  for (int p = 0; p < 20; ++p) {
    const ComplexMatrix psi = qaut::testing::random_state_vector(rng, 2);
    const ComplexMatrix payload = projector_of(psi);
    for (int q = 0; q < 20; ++q) {
      const DensityOperator initial = make_density(kron(payload, pairs[q]));
      const BranchTree tree = enumerate(tele, initial, 8);
      const std::vector<const BranchNode*> leaves = tree.leaves();

      check.require(leaves.size() == 4, "expected exactly 4 leaves, got " +
                                            std::to_string(leaves.size()));
      for (const BranchNode* leaf : leaves) {
        check.require(leaf->kind == BranchKind::Terminal, "non-terminal leaf");
        check.require(std::abs(leaf->cumulative - 0.25) <= 1e-9,
                      "leaf mass " + std::to_string(leaf->cumulative));
      }

      const auto mixtures = final_mixture(tree);
      const ComplexMatrix expected =
          kron(Complex{0.25, 0.0} * ComplexMatrix::identity(4), payload);
      const double dev = max_abs_diff(mixtures.at("t").state.matrix(), expected);
      check.require(dev <= 1e-9, "final mixture deviates by " + std::to_string(dev));

      const DensityOperator third =
          partial_trace(mixtures.at("t").state, {2, 2, 2}, {2});
      const double payload_dev = max_abs_diff(third.matrix(), payload);
      check.require(payload_dev <= 1e-9,
                    "third qubit deviates by " + std::to_string(payload_dev));
      if (!check.failures.empty()) return;  // avoid 400 repeats of one defect
    }
  }
}

// 4. Kraus <-> isometry conversions on 200 random families.
void criterion_conversions(Checker& check) {
  TestRng rng(1004);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + rng.index(5);       // 2..6
    const std::size_t nx = 1 + rng.index(4);        // 1..4
    const KrausFamily k = qaut::testing::random_kraus(rng, dim, nx);

    const IsometryMatrix w = kraus_to_isometry(k);
    const double iso_dev =
        max_abs_diff(adjoint(w.matrix()) * w.matrix(), ComplexMatrix::identity(dim));
    check.require(iso_dev <= 1e-9, "W*W deviates by " + std::to_string(iso_dev));

    const KrausFamily k_back = isometry_to_kraus(w);
    for (std::size_t b = 0; b < nx; ++b) {
      check.require(max_abs_diff(k_back.block(b), k.block(b)) <= 1e-12,
                    "kraus -> isometry -> kraus does not reproduce the input");
    }
    const IsometryMatrix w_back = kraus_to_isometry(k_back);
    check.require(max_abs_diff(w_back.matrix(), w.matrix()) <= 1e-12,
                  "isometry -> kraus -> isometry does not reproduce the input");
  }
}

// 5. Phase-equivalence decision: rephased copies are accepted with the
// right phases; mixing outcomes with a non-diagonal unitary is rejected.
void criterion_equivalence(Checker& check) {
  TestRng rng(1005);

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + rng.index(3);
    const std::size_t nx = 1 + rng.index(4);
    const KrausFamily k = qaut::testing::random_kraus(rng, dim, nx);
    std::map<std::string, double> thetas;
    for (const std::string& x : k.outcomes().labels()) {
      thetas[x] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    const QuantumOperation a(k);
    const QuantumOperation b(qaut::testing::apply_outcome_phases(k, thetas));
    const auto recovered = phase_equivalent(a, b, 1e-9);
    check.require(recovered.has_value(), "rephased copy judged not equivalent");
    if (!recovered) continue;
    for (const auto& [x, theta] : *recovered) {
      check.require(angle_diff(theta, thetas.at(x)) <= 1e-9,
                    "phase recovered as " + std::to_string(theta) + ", expected " +
                        std::to_string(thetas.at(x)));
    }
  }

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + rng.index(3);
    const std::size_t nx = 2 + rng.index(3);  // mixing needs >= 2 outcomes
    const KrausFamily k = qaut::testing::random_kraus(rng, dim, nx);
    const IsometryMatrix w = kraus_to_isometry(k);

    // random unitary on the outcome factor, regenerated until it is far
    // from every diagonal-phase matrix
    ComplexMatrix v = qaut::testing::random_unitary(rng, nx);
    for (int guard = 0; guard < 100; ++guard) {
      double off = 0.0;
      for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < nx; ++j) {
          if (i != j) off = std::max(off, std::abs(v(i, j)));
        }
      }
      if (off >= 0.1) break;
      v = qaut::testing::random_unitary(rng, nx);
    }

    const IsometryMatrix mixed(
        k.outcomes(), kron(v, ComplexMatrix::identity(dim)) * w.matrix());
    const auto verdict =
        phase_equivalent(QuantumOperation(k), QuantumOperation(mixed), 1e-9);
    check.require(!verdict.has_value(),
                  "outcome-mixed isometry wrongly judged equivalent");
  }
}

// 6. Embedding identities for all dimensions and outcome counts up to 4.
void criterion_embedding_identities(Checker& check) {
  for (std::size_t dim = 1; dim <= 4; ++dim) {
    for (std::size_t nx = 1; nx <= 4; ++nx) {
      const OutcomeSet outcomes(qaut::testing::numbered_labels("x", nx));
      for (const std::string& x1 : outcomes.labels()) {
        const ComplexMatrix j1 = embed_outcome(dim, outcomes, x1);
        for (const std::string& x2 : outcomes.labels()) {
          const ComplexMatrix j2 = embed_outcome(dim, outcomes, x2);
          const ComplexMatrix delta =
              x1 == x2 ? ComplexMatrix::identity(dim) : ComplexMatrix(dim, dim);
          check.require(max_abs_diff(adjoint(j1) * j2, delta) <= 1e-12,
                        "J(x')*J(x'') identity fails at dim " + std::to_string(dim));
          ComplexMatrix unit(nx, nx);
          unit(outcomes.index(x1), outcomes.index(x2)) = Complex{1.0, 0.0};
          check.require(
              max_abs_diff(j1 * adjoint(j2), kron(unit, ComplexMatrix::identity(dim))) <=
                  1e-12,
              "J(x')J(x'')* identity fails at dim " + std::to_string(dim));
        }
      }
    }
  }
}

// 7. Step normalization along every reachable configuration.
void criterion_step_normalization(Checker& check) {
  const auto walk_tree = [&](const AbstractQuantumAutomaton& a, const BranchTree& tree) {
    auto visit = [&](auto&& self, const BranchNode& n) -> void {
      if (!n.is_leaf()) {
        double sum = 0.0;
        for (const auto& [x, p] :
             outcome_distribution(a.ops.at(n.config.node), n.config.state)) {
          (void)x;
          sum += p;
        }
        check.require(std::abs(sum - 1.0) <= 1e-9,
                      "distribution at node '" + n.config.node + "' sums to " +
                          std::to_string(sum));
        for (const BranchNode& c : n.children) self(self, c);
      }
    };
    visit(visit, tree.root);
  };

  TestRng rng(1007);
  const AbstractQuantumAutomaton cleaner = load_corpus_automaton("cleaner");
  const AbstractQuantumAutomaton entangler = load_corpus_automaton("entangler");
  const AbstractQuantumAutomaton tele = load_corpus_automaton("teleportation");
  walk_tree(cleaner, enumerate(cleaner, qaut::testing::random_density(rng, 2), 8));
  walk_tree(entangler, enumerate(entangler, qaut::testing::random_density(rng, 4), 8));
  const ComplexMatrix psi = qaut::testing::random_state_vector(rng, 2);
  walk_tree(tele, enumerate(tele,
                            make_density(kron(projector_of(psi), bell_matrix())), 8));

  for (int trial = 0; trial < 50; ++trial) {
    const AbstractQuantumAutomaton a =
        qaut::testing::random_automaton(rng, 2 + rng.index(2));
    walk_tree(a, enumerate(a, qaut::testing::random_density(rng, a.dim), 5, 1e-6));
  }
}

// 8. Classical and quantum engines agree on embedded machines.
void criterion_cross_validation(Checker& check) {
  TestRng rng(1008);
  for (int machine_idx = 0; machine_idx < 30; ++machine_idx) {
    const StochasticASM m = qaut::testing::random_asm(rng, 3, 4);
    const AbstractQuantumAutomaton a = embed_as_quantum(m);
    for (const std::string& s0 : m.snapshots.labels()) {
      const ClassicalEnumeration ce = enumerate_classical(m, s0, 6);

      ComplexMatrix basis(m.snapshots.size(), 1);
      basis(m.snapshots.index(s0), 0) = Complex{1.0, 0.0};
      const BranchTree tree = enumerate(a, pure_state(basis), 6);

      std::map<std::pair<std::string, std::string>, double> quantum_mass;
      for (const BranchNode* leaf : tree.leaves()) {
        if (leaf->kind != BranchKind::Terminal) continue;
        // the embedded run stays on basis states: classify by the largest
        // diagonal entry
        std::size_t best = 0;
        double best_val = -1.0;
        for (std::size_t i = 0; i < leaf->config.state.dim(); ++i) {
          const double d = leaf->config.state.matrix()(i, i).real();
          if (d > best_val) {
            best_val = d;
            best = i;
          }
        }
        quantum_mass[{leaf->config.node, m.snapshots.labels()[best]}] +=
            leaf->cumulative;
      }

      for (const auto& [key, mass] : ce.terminal_mass) {
        const double qm = quantum_mass.count(key) ? quantum_mass.at(key) : 0.0;
        check.require(std::abs(mass - qm) <= 1e-9,
                      "machine " + std::to_string(machine_idx) + " (" + key.first +
                          ", " + key.second + "): classical " + std::to_string(mass) +
                          " vs quantum " + std::to_string(qm));
      }
      for (const auto& [key, qm] : quantum_mass) {
        const double cm =
            ce.terminal_mass.count(key) ? ce.terminal_mass.at(key) : 0.0;
        check.require(std::abs(cm - qm) <= 1e-9,
                      "quantum-only mass at (" + key.first + ", " + key.second + ")");
      }
    }
  }
}

// 9. Empirical frequencies of 10,000 seeded runs match enumerated masses,
// both per terminal node and per branch (arc path).
void criterion_sampling_consistency(Checker& check) {
  TestRng rng(1009);
  const int n_runs = 10000;

  struct Case {
    std::string name;
    AbstractQuantumAutomaton automaton;
    DensityOperator initial;
  };
  const ComplexMatrix psi = qaut::testing::random_state_vector(rng, 2);
  const std::vector<Case> cases = {
      {"cleaner", load_corpus_automaton("cleaner"),
       pure_state(ComplexMatrix{{1.0 / std::sqrt(2.0)}, {1.0 / std::sqrt(2.0)}})},
      {"entangler", load_corpus_automaton("entangler"),
       qaut::testing::random_density(rng, 4)},
      {"teleportation", load_corpus_automaton("teleportation"),
       make_density(kron(projector_of(psi), bell_matrix()))},
  };

  for (const Case& c : cases) {
    const BranchTree tree = enumerate(c.automaton, c.initial, 16);

    std::map<std::string, double> node_mass;   // terminal node -> mass
    std::map<std::string, double> path_mass;   // arc path -> mass
    auto key_of = [](const std::vector<std::string>& arcs) {
      std::string key;
      for (const std::string& a : arcs) key += a + "/";
      return key;
    };
    {
      std::vector<std::string> path;
      auto visit = [&](auto&& self, const BranchNode& n) -> void {
        if (n.arc_from_parent) path.push_back(*n.arc_from_parent);
        if (n.is_leaf()) {
          node_mass[n.config.node] += n.cumulative;
          path_mass[key_of(path)] += n.cumulative;
        }
        for (const BranchNode& child : n.children) self(self, child);
        if (n.arc_from_parent) path.pop_back();
      };
      visit(visit, tree.root);
    }

    std::map<std::string, int> node_count;
    std::map<std::string, int> path_count;
    for (int seed = 0; seed < n_runs; ++seed) {
      const QuantumRunTrace trace = sample_run(c.automaton, c.initial, seed, 16);
      check.require(trace.status == QuantumRunTrace::Status::Converged,
                    c.name + ": run did not converge");
      node_count[trace.final_config().node] += 1;
      std::vector<std::string> arcs;
      for (const auto& s : trace.steps) {
        if (s.arc) arcs.push_back(*s.arc);
      }
      path_count[key_of(arcs)] += 1;
    }

    const auto within_band = [&](double expected, int count, const std::string& what) {
      const double sigma = std::sqrt(expected * (1.0 - expected) / n_runs);
      const double bound = 3.0 * sigma + 0.01;
      const double empirical = static_cast<double>(count) / n_runs;
      check.require(std::abs(empirical - expected) <= bound,
                    c.name + " " + what + ": empirical " + std::to_string(empirical) +
                        " vs mass " + std::to_string(expected));
    };
    for (const auto& [node, mass] : node_mass) {
      within_band(mass, node_count.count(node) ? node_count.at(node) : 0,
                  "terminal '" + node + "'");
    }
    for (const auto& [path, mass] : path_mass) {
      within_band(mass, path_count.count(path) ? path_count.at(path) : 0,
                  "path " + path);
    }
    // no sampled path outside the enumerated set
    for (const auto& [path, count] : path_count) {
      (void)count;
      check.require(path_mass.count(path) == 1, c.name + ": unenumerated path " + path);
    }
  }
}

// 10. DSL round-trip on the corpus, and positioned diagnostics for 20
// single-token corruptions.
void criterion_dsl_roundtrip(Checker& check) {
  for (const CorpusEntry& entry : corpus()) {
    const dsl::SourceDoc doc{std::string(entry.text), std::string(entry.name)};
    dsl::ElaborationResult first = dsl::load_model(doc);
    check.require(first.model.has_value(),
                  std::string(entry.name) + " does not elaborate");
    if (!first.model) continue;
    dsl::ElaborationResult second = dsl::load_model(dsl::serialize(*first.model));
    check.require(second.model.has_value(),
                  std::string(entry.name) + " serialization does not re-elaborate");
    if (!second.model) continue;
    check.require(qaut::testing::models_close(*first.model, *second.model, 1e-15),
                  std::string(entry.name) + " round trip changed the model");
  }

  TestRng rng(1010);
  for (const CorpusEntry& entry : corpus()) {
    for (int trial = 0; trial < 5; ++trial) {
      const qaut::testing::Corruption corrupted = qaut::testing::corrupt_one_token(
          {std::string(entry.text), std::string(entry.name)}, rng);
      const dsl::ElaborationResult result = dsl::load_model(corrupted.doc);
      check.require(!result.model.has_value(),
                    std::string(entry.name) + ": corruption went unnoticed");
      bool on_line = false;
      for (const dsl::Diagnostic& d : result.diagnostics) {
        on_line |= d.pos.line == corrupted.line;
      }
      check.require(on_line, std::string(entry.name) +
                                 ": no diagnostic on corrupted line " +
                                 std::to_string(corrupted.line));
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "qubit cleaner drives 50 random states to |0><0| (tol 1e-9)", 1.0,
       criterion_cleaner},
      {2, "entangler drives 50 random states to the Bell projector (tol 1e-9)", 1.0,
       criterion_entangler},
      {3, "teleportation: 4 quarter branches, claimed mixture, payload on qubit 3",
       5.0, criterion_teleportation},
      {4, "200 random Kraus families: isometry property and exact roundtrips", 5.0,
       criterion_conversions},
      {5, "phase-equivalence checker: 100 accepts with phases, 100 rejects", 5.0,
       criterion_equivalence},
      {6, "embedding identities for dims <= 4, outcomes <= 4 (tol 1e-12)", 1.0,
       criterion_embedding_identities},
      {7, "outcome distributions normalize along all reachable configurations", 0.0,
       criterion_step_normalization},
      {8, "30 random machines: classical and embedded quantum enumerations agree", 0.0,
       criterion_cross_validation},
      {9, "10,000 seeded runs match enumerated masses within 3 sigma + 0.01", 0.0,
       criterion_sampling_consistency},
      {10, "DSL round-trip is lossless; 20 corruptions produce placed diagnostics", 0.0,
       criterion_dsl_roundtrip},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_budget_s > 0.0 && elapsed > c.time_budget_s) {
      check.failures.push_back("took " + std::to_string(elapsed) + "s, budget " +
                               std::to_string(c.time_budget_s) + "s");
    }

    if (check.failures.empty()) {
      if (c.time_budget_s > 0.0) {
        std::printf("[PASS] criterion %2d: %s (%.2fs < %.0fs)\n", c.number,
                    c.title.c_str(), elapsed, c.time_budget_s);
      } else {
        std::printf("[PASS] criterion %2d: %s (%.2fs)\n", c.number, c.title.c_str(),
                    elapsed);
      }
    } else {
      ++failed;
      std::printf("[FAIL] criterion %2d: %s\n", c.number, c.title.c_str());
      const std::size_t shown = std::min<std::size_t>(check.failures.size(), 5);
      for (std::size_t i = 0; i < shown; ++i) {
        std::printf("       - %s\n", check.failures[i].c_str());
      }
      if (check.failures.size() > shown) {
        std::printf("       ... and %zu more\n", check.failures.size() - shown);
      }
    }
  }

  if (failed > 0) {
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
