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

// Dense complex matrices and the handful of numeric primitives everything
// else is built on. Dimensions stay tiny (a few qubits), so the storage is
// a flat row-major vector and the eigensolver is a cyclic Jacobi iteration.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qaut/errors.hpp"

namespace qaut {

using Complex = std::complex<double>;

/// Default tolerance for validity predicates (hermiticity, completeness,
/// trace-one, ...). Matrix entries in practice are dyadic rationals times
/// 1/sqrt(2), so this leaves ample slack above double rounding error.
inline constexpr double kDefaultTol = 1e-9;

/// Outcomes with probability at or below this floor are treated as
/// impossible; dividing by a smaller trace would amplify rounding error.
inline constexpr double kDefaultProbFloor = 1e-12;

/// Dense complex matrix, row-major. All stored entries must be finite.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {
    if (rows_ == 0 || cols_ == 0) {
      throw ShapeError("matrix dimensions must be positive");
    }
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
      throw ShapeError("matrix dimensions must be positive");
    }
    if (entries_.size() != rows_ * cols_) {
      throw ShapeError("entry count " + std::to_string(entries_.size()) +
                       " does not match shape " + std::to_string(rows_) + "x" +
                       std::to_string(cols_));
    }
    check_finite();
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) {
      throw ShapeError("matrix dimensions must be positive");
    }
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw ShapeError("ragged matrix literal");
      }
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
    check_finite();
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_column() const { return cols_ == 1; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check_finite() const {
    for (const Complex& z : entries_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw NumericError("matrix entry is not finite");
      }
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul shape mismatch: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

/// Kronecker product; block (i,j) of the result is a(i,j) * b. The left
/// factor is the slow index, so kron(A, B) indexes pairs as
/// (i_a * b.rows + i_b).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex aij = a(ia, ja);
      if (aij == Complex{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          out(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
        }
      }
    }
  }
  return out;
}

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(j, i) = std::conj(a(i, j));
    }
  }
  return out;
}

inline Complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw ShapeError("trace requires a square matrix");
  }
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// Largest entry-wise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("max_abs_diff shape mismatch");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

/// Largest entry-wise modulus.
inline double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  }
  return out;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("matrix sum shape mismatch");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  }
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("matrix difference shape mismatch");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  }
  return out;
}

/// All eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi with
/// complex rotations; sweeps stop once the off-diagonal Frobenius mass is
/// at or below tol. The input must be Hermitian within tol entry-wise.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a,
                                                 double tol = kDefaultTol) {
  if (!a.is_square()) {
    throw ShapeError("hermitian_eigenvalues requires a square matrix");
  }
  if (max_abs_diff(a, adjoint(a)) > tol) {
    throw NumericError("matrix is not Hermitian within tolerance");
  }
  const std::size_t n = a.rows();

  // Work on the exactly-Hermitian average of a and a*.
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Complex{a(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex h = 0.5 * (a(i, j) + std::conj(a(j, i)));
      m(i, j) = h;
      m(j, i) = std::conj(h);
    }
  }

  const auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += std::norm(m(i, j));
      }
    }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 128 && off_mass() > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;

        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex phase = apq / r;

        for (std::size_t j = 0; j < n; ++j) {
          const Complex vp = m(p, j);
          const Complex vq = m(q, j);
          m(p, j) = c * vp - s * phase * vq;
          m(q, j) = s * std::conj(phase) * vp + c * vq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = m(i, p);
          const Complex vq = m(i, q);
          m(i, p) = c * vp - s * std::conj(phase) * vq;
          m(i, q) = s * phase * vp + c * vq;
        }
        m(p, q) = Complex{0.0, 0.0};
        m(q, p) = Complex{0.0, 0.0};
        m(p, p) = Complex{m(p, p).real(), 0.0};
        m(q, q) = Complex{m(q, q).real(), 0.0};
      }
    }
  }
  if (off_mass() > tol) {
    throw NumericError("Jacobi iteration failed to converge");
  }

  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = m(i, i).real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

}  // namespace qaut
