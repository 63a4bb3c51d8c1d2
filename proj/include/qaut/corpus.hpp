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

// The example models, embedded so the command line can list and copy them
// without knowing where the repository lives. The files under corpus/ hold
// the same text byte for byte; a test keeps the two in sync.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace qaut {

struct CorpusEntry {
  std::string_view name;  // file name, e.g. "cleaner.qaut"
  std::string_view text;
};

namespace detail {

inline constexpr std::string_view k_cleaner = R"qtext(# Qubit cleaner: sets a qubit to |0><0| regardless of its initial state.
# Node m measures in the computational basis; outcome a0 is already clean,
# outcome a1 routes through node f, which flips the qubit with an X gate.
# Every run converges at t with the state |0><0|.
automaton cleaner {
  dim = 2
  node m initial
  node f
  node t terminal
  arc a0: m -> t
  arc a1: m -> f
  arc a2: f -> t
  op m {
    K("a0") = [[1, 0], [0, 0]]
    K("a1") = [[0, 0], [0, 1]]
  }
  op f {
    K("a2") = X
  }
}
)qtext";

inline constexpr std::string_view k_entangler = R"qtext(# Entangled-pair preparer over two qubits. Both qubits are first cleaned to
# |00> (measure, flip on outcome 1), then a Hadamard puts the second qubit
# into an equal superposition and a CNOT controlled by the second qubit
# copies it onto the first. From any two-qubit state every run converges at
# t with the Bell projector (|00> + |11>)(<00| + <11|) / 2.
automaton entangler {
  dim = 4
  node m1 initial
  node f1
  node m2
  node f2
  node h
  node c
  node t terminal
  arc a0: m1 -> m2
  arc a1: m1 -> f1
  arc a2: f1 -> m2
  arc a3: m2 -> h
  arc a4: m2 -> f2
  arc a5: f2 -> h
  arc a6: h -> c
  arc a7: c -> t
  op m1 {
    K("a0") = kron([[1, 0], [0, 0]], identity(2))
    K("a1") = kron([[0, 0], [0, 1]], identity(2))
  }
  op f1 {
    K("a2") = kron(X, identity(2))
  }
  op m2 {
    K("a3") = kron(identity(2), [[1, 0], [0, 0]])
    K("a4") = kron(identity(2), [[0, 0], [0, 1]])
  }
  op f2 {
    K("a5") = kron(identity(2), X)
  }
  op h {
    K("a6") = kron(identity(2), H)
  }
  op c {
    # CNOT with the second qubit as control and the first as target
    K("a7") = [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]
  }
}
)qtext";

inline constexpr std::string_view k_teleportation = R"qtext(# Quantum teleportation over three qubits: the first carries the payload
# state, the second and third hold a shared Bell pair (prepare it with
# entangler.qaut and start this automaton from kron(P, B), where P is the
# payload projector and B the Bell projector). Node c entangles the payload
# with the pair, node h rotates it, node m measures the first two qubits
# with outcomes 00/01/10/11, and the per-outcome Pauli corrections x, z, w
# restore the payload on the third qubit. All four outcomes have probability
# 1/4 and every converged run ends with the third qubit in the payload
# state.
automaton teleportation {
  dim = 8
  node c initial
  node h
  node m
  node x
  node z
  node w
  node t terminal
  arc a0: c -> h
  arc a1: h -> m
  arc 00: m -> t
  arc 01: m -> x
  arc 10: m -> z
  arc 11: m -> w
  arc x0: x -> t
  arc z0: z -> t
  arc w0: w -> t
  op c {
    # CNOT with the first qubit as control and the second as target
    K("a0") = kron(CNOT, identity(2))
  }
  op h {
    K("a1") = kron(H, identity(4))
  }
  op m {
    K("00") = kron(kron([[1, 0], [0, 0]], [[1, 0], [0, 0]]), identity(2))
    K("01") = kron(kron([[1, 0], [0, 0]], [[0, 0], [0, 1]]), identity(2))
    K("10") = kron(kron([[0, 0], [0, 1]], [[1, 0], [0, 0]]), identity(2))
    K("11") = kron(kron([[0, 0], [0, 1]], [[0, 0], [0, 1]]), identity(2))
  }
  op x {
    K("x0") = kron(identity(4), X)
  }
  op z {
    K("z0") = kron(identity(4), Z)
  }
  op w {
    # outcome 11 needs X first, then Z
    K("w0") = kron(identity(4), matmul(Z, X))
  }
}
)qtext";

inline constexpr std::string_view k_retry_coin = R"qtext(# A stochastic machine: a biased coin with a retry loop. From the start
# snapshot the machine stops with probability 0.3 (recording done) and
# retries with probability 0.7, so the terminal mass after k steps is
# 1 - 0.7^k.
machine retry_coin {
  snapshots { start, done }
  node s initial
  node t terminal
  arc win: s -> t
  arc retry: s -> s
  prob(s, start) {
    win: 0.3
    retry: 0.7
  }
  prob(s, done) {
    retry: 1
  }
  map(win) {
    start -> done
    done -> done
  }
  map(retry) {
    start -> start
    done -> done
  }
}
)qtext";

}  // namespace detail

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"cleaner.qaut", detail::k_cleaner},
      {"entangler.qaut", detail::k_entangler},
      {"teleportation.qaut", detail::k_teleportation},
      {"retry_coin.qaut", detail::k_retry_coin},
  };
  return entries;
}

/// Looks an entry up by name, with or without the .qaut suffix.
inline std::optional<CorpusEntry> find_corpus(std::string_view name) {
  for (const CorpusEntry& e : corpus()) {
    if (e.name == name || e.name.substr(0, e.name.size() - 5) == name) {
      return e;
    }
  }
  return std::nullopt;
}

}  // namespace qaut
