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

// JSON views of run traces and enumeration results, matching the schemas
// shipped under docs/. Density matrices serialize as nested arrays of
// [re, im] pairs; numbers are emitted in round-trip-exact form.

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qaut/automaton.hpp"
#include "qaut/classical.hpp"
#include "qaut/linalg.hpp"

namespace qaut {

using Json = nlohmann::ordered_json;

inline constexpr int kTraceSchemaVersion = 1;

inline Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json trace_json(const std::string& model_name, const std::string& initial,
                       std::uint64_t seed, std::size_t max_steps,
                       const QuantumRunTrace& trace) {
  Json j;
  j["schema_version"] = kTraceSchemaVersion;
  j["model"] = model_name;
  j["kind"] = "quantum";
  j["initial"] = initial;
  j["seed"] = seed;
  j["max_steps"] = max_steps;
  j["status"] = trace.status == QuantumRunTrace::Status::Converged
                    ? "converged"
                    : "step-limit-exhausted";
  Json steps = Json::array();
  for (const QuantumRunTrace::Step& s : trace.steps) {
    Json step;
    step["node"] = s.config.node;
    step["arc"] = s.arc ? Json(*s.arc) : Json(nullptr);
    step["probability"] = s.arc ? Json(s.probability) : Json(nullptr);
    step["state"] = matrix_json(s.config.state.matrix());
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

inline Json trace_json(const std::string& model_name, const std::string& initial,
                       std::uint64_t seed, std::size_t max_steps,
                       const ClassicalRunTrace& trace) {
  Json j;
  j["schema_version"] = kTraceSchemaVersion;
  j["model"] = model_name;
  j["kind"] = "classical";
  j["initial"] = initial;
  j["seed"] = seed;
  j["max_steps"] = max_steps;
  j["status"] = trace.status == ClassicalRunTrace::Status::Converged
                    ? "converged"
                    : "step-limit-exhausted";
  Json steps = Json::array();
  for (const ClassicalRunTrace::Step& s : trace.steps) {
    Json step;
    step["node"] = s.node;
    step["arc"] = s.arc ? Json(*s.arc) : Json(nullptr);
    step["probability"] = Json(nullptr);
    step["snapshot"] = s.snapshot;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

namespace detail {

inline const char* branch_kind_name(BranchKind kind) {
  switch (kind) {
    case BranchKind::Terminal: return "terminal";
    case BranchKind::StepLimit: return "step-limit";
    case BranchKind::Pruned: return "pruned";
    case BranchKind::Internal: break;
  }
  return "internal";
}

inline void collect_leaves(const BranchNode& node, std::vector<std::string>& path,
                           Json& leaves) {
  if (node.arc_from_parent) path.push_back(*node.arc_from_parent);
  if (node.is_leaf()) {
    Json leaf;
    leaf["path"] = path;
    leaf["node"] = node.config.node;
    leaf["kind"] = branch_kind_name(node.kind);
    leaf["cumulative"] = node.cumulative;
    leaf["state"] = matrix_json(node.config.state.matrix());
    leaves.push_back(std::move(leaf));
  } else {
    for (const BranchNode& c : node.children) collect_leaves(c, path, leaves);
  }
  if (node.arc_from_parent) path.pop_back();
}

}  // namespace detail

inline Json enumeration_json(const std::string& model_name, const std::string& initial,
                             std::size_t max_steps, double prune_eps,
                             const BranchTree& tree,
                             const std::map<std::string, TerminalMixture>* mixtures) {
  Json j;
  j["schema_version"] = kTraceSchemaVersion;
  j["model"] = model_name;
  j["kind"] = "quantum";
  j["initial"] = initial;
  j["max_steps"] = max_steps;
  j["prune_eps"] = prune_eps;
  Json leaves = Json::array();
  std::vector<std::string> path;
  detail::collect_leaves(tree.root, path, leaves);
  j["leaves"] = std::move(leaves);
  j["residual_mass"] = tree.residual_mass;
  if (mixtures != nullptr) {
    Json mix = Json::object();
    for (const auto& [node, tm] : *mixtures) {
      Json entry;
      entry["mass"] = tm.mass;
      entry["state"] = matrix_json(tm.state.matrix());
      mix[node] = std::move(entry);
    }
    j["final_mixture"] = std::move(mix);
  } else {
    j["final_mixture"] = Json(nullptr);
  }
  return j;
}

inline Json enumeration_json(const std::string& model_name, const std::string& initial,
                             std::size_t max_steps, double prune_eps,
                             const ClassicalEnumeration& e) {
  Json j;
  j["schema_version"] = kTraceSchemaVersion;
  j["model"] = model_name;
  j["kind"] = "classical";
  j["initial"] = initial;
  j["max_steps"] = max_steps;
  j["prune_eps"] = prune_eps;
  Json terminals = Json::array();
  for (const auto& [key, mass] : e.terminal_mass) {
    Json t;
    t["node"] = key.first;
    t["snapshot"] = key.second;
    t["mass"] = mass;
    terminals.push_back(std::move(t));
  }
  j["terminals"] = std::move(terminals);
  j["residual_mass"] = e.residual_mass;
  return j;
}

}  // namespace qaut
