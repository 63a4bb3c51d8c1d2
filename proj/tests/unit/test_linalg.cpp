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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "qaut/linalg.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qaut;
using qaut::testing::TestRng;

namespace {
const Complex kI{0.0, 1.0};
}

TEST_CASE("matrix construction validates shape and finiteness", "[linalg]") {
  CHECK_THROWS_AS(ComplexMatrix(0, 2), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), ShapeError);
  CHECK_THROWS_AS(
      ComplexMatrix(1, 1, {Complex{std::numeric_limits<double>::quiet_NaN(), 0.0}}),
      NumericError);
  CHECK_THROWS_AS(
      ComplexMatrix(1, 1, {Complex{0.0, std::numeric_limits<double>::infinity()}}),
      NumericError);
  CHECK_THROWS_AS((ComplexMatrix{{1.0, 0.0}, {1.0}}), ShapeError);
}

TEST_CASE("matmul basics", "[linalg]") {
  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(max_abs_diff(matmul(ComplexMatrix::identity(2), m), m) == 0.0);

  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const ComplexMatrix e0{{1.0}, {0.0}};
  const ComplexMatrix e1{{0.0}, {1.0}};
  CHECK(max_abs_diff(matmul(x, e0), e1) == 0.0);

  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError);
}

TEST_CASE("matmul matches the triple-loop oracle on random inputs", "[linalg]") {
  TestRng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = qaut::testing::random_matrix(rng, 3, 3);
    const ComplexMatrix b = qaut::testing::random_matrix(rng, 3, 3);
    CHECK(max_abs_diff(matmul(a, b), qaut::testing::naive_matmul(a, b)) < 1e-12);
  }
}

TEST_CASE("kron basics", "[linalg]") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
        ComplexMatrix::identity(4));

  const ComplexMatrix e0{{1.0}, {0.0}};
  const ComplexMatrix e1{{0.0}, {1.0}};
  const ComplexMatrix expected{{0.0}, {1.0}, {0.0}, {0.0}};
  CHECK(kron(e0, e1) == expected);
}

TEST_CASE("kron mixed-product identity on random conformable inputs", "[linalg]") {
  TestRng rng(102);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = qaut::testing::random_real_matrix(rng, 2, 3);
    const ComplexMatrix c = qaut::testing::random_real_matrix(rng, 3, 2);
    const ComplexMatrix b = qaut::testing::random_real_matrix(rng, 2, 2);
    const ComplexMatrix d = qaut::testing::random_real_matrix(rng, 2, 3);
    CHECK(max_abs_diff(matmul(kron(a, b), kron(c, d)),
                       kron(matmul(a, c), matmul(b, d))) < 1e-12);
  }
}

TEST_CASE("kron is associative exactly on integer-valued inputs", "[linalg]") {
  const ComplexMatrix a{{1.0, 2.0}, {0.0, -1.0}};
  const ComplexMatrix b{{3.0, 0.0}, {1.0, 1.0}};
  const ComplexMatrix c{{2.0}, {5.0}};
  CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
}

TEST_CASE("adjoint basics and involution", "[linalg]") {
  CHECK(adjoint(ComplexMatrix::identity(3)) == ComplexMatrix::identity(3));

  const ComplexMatrix m{{0.0, kI}, {0.0, 0.0}};
  const ComplexMatrix expected{{0.0, 0.0}, {-kI, 0.0}};
  CHECK(adjoint(m) == expected);

  TestRng rng(103);
  const ComplexMatrix r = qaut::testing::random_matrix(rng, 3, 4);
  CHECK(adjoint(adjoint(r)) == r);
}

TEST_CASE("trace basics and cyclic property", "[linalg]") {
  CHECK(trace(ComplexMatrix::identity(4)) == Complex{4.0, 0.0});

  // |0><1| has zero trace
  const ComplexMatrix off{{0.0, 1.0}, {0.0, 0.0}};
  CHECK(trace(off) == Complex{0.0, 0.0});

  CHECK_THROWS_AS(trace(ComplexMatrix(2, 3)), ShapeError);

  TestRng rng(104);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = qaut::testing::random_matrix(rng, 4, 4);
    const ComplexMatrix b = qaut::testing::random_matrix(rng, 4, 4);
    CHECK(std::abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12);
  }
}

TEST_CASE("trace of M*M is real and non-negative", "[linalg]") {
  TestRng rng(105);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = qaut::testing::random_matrix(rng, 3, 3);
    const Complex t = trace(matmul(adjoint(m), m));
    CHECK(std::abs(t.imag()) < 1e-12);
    CHECK(t.real() >= -1e-12);
  }
}

TEST_CASE("max_abs_diff basics", "[linalg]") {
  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(max_abs_diff(m, m) == 0.0);
  CHECK(max_abs_diff(ComplexMatrix(2, 2), ComplexMatrix::identity(2)) == 1.0);
  CHECK_THROWS_AS(max_abs_diff(ComplexMatrix(2, 2), ComplexMatrix(2, 3)), ShapeError);

  TestRng rng(106);
  const ComplexMatrix a = qaut::testing::random_matrix(rng, 2, 2);
  const ComplexMatrix b = qaut::testing::random_matrix(rng, 2, 2);
  CHECK(max_abs_diff(a, b) == max_abs_diff(b, a));
}

TEST_CASE("hermitian_eigenvalues on identity and Pauli X", "[linalg]") {
  const std::vector<double> id_eigs = hermitian_eigenvalues(ComplexMatrix::identity(2));
  REQUIRE(id_eigs.size() == 2);
  CHECK(id_eigs[0] == Catch::Approx(1.0));
  CHECK(id_eigs[1] == Catch::Approx(1.0));

  // characteristic polynomial of [[0,1],[1,0]] is l^2 - 1, roots -1 and 1
  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const std::vector<double> x_eigs = hermitian_eigenvalues(x);
  CHECK(x_eigs[0] == Catch::Approx(-1.0).margin(1e-12));
  CHECK(x_eigs[1] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("hermitian_eigenvalues of a diagonal real matrix is its sorted diagonal",
          "[linalg]") {
  const ComplexMatrix d{{3.0, 0.0, 0.0}, {0.0, -2.0, 0.0}, {0.0, 0.0, 0.5}};
  const std::vector<double> eigs = hermitian_eigenvalues(d);
  CHECK(eigs[0] == Catch::Approx(-2.0).margin(1e-12));
  CHECK(eigs[1] == Catch::Approx(0.5).margin(1e-12));
  CHECK(eigs[2] == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("hermitian_eigenvalues sum equals trace on random Hermitian input", "[linalg]") {
  TestRng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix h = qaut::testing::random_hermitian(rng, 4);
    const std::vector<double> eigs = hermitian_eigenvalues(h);
    double sum = 0.0;
    for (double e : eigs) sum += e;
    CHECK(sum == Catch::Approx(trace(h).real()).margin(1e-9));
  }
}

TEST_CASE("hermitian_eigenvalues diagonalizes correctly on a known 2x2", "[linalg]") {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3 (char. poly (2-l)^2 - 1)
  const ComplexMatrix m{{2.0, kI}, {-kI, 2.0}};
  const std::vector<double> eigs = hermitian_eigenvalues(m);
  CHECK(eigs[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(eigs[1] == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input", "[linalg]") {
  const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(hermitian_eigenvalues(m), NumericError);
  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(2, 3)), ShapeError);
}
