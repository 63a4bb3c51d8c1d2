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

// States and operations of finite-level quantum systems: density operators,
// outcome-indexed Kraus families, their packaging as isometries into
// H (x) l2(X), the Born rule, post-measurement effects, and the decision
// procedure for outcome-wise phase equivalence of two operations.
//
// Basis convention for H (x) l2(X): outcome-major row blocks. The rows of an
// isometry W for outcome x occupy the contiguous slice starting at
// index(x) * dim, so the Kraus block K(x) is literally that slice.

#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qaut/errors.hpp"
#include "qaut/linalg.hpp"

namespace qaut {

/// Ordered, distinct outcome labels. The order is canonical: it fixes the
/// basis of l2(X) and the row-block layout of isometries.
class OutcomeSet {
 public:
  OutcomeSet() = default;

  explicit OutcomeSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
      throw ShapeError("outcome set must not be empty");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second) {
        throw ShapeError("duplicate outcome label '" + labels_[i] + "'");
      }
    }
  }

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool contains(const std::string& label) const { return index_.count(label) != 0; }

  std::size_t index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
      throw ShapeError("unknown outcome label '" + label + "'");
    }
    return it->second;
  }

  friend bool operator==(const OutcomeSet& a, const OutcomeSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
};

/// Hermitian, positive semidefinite, trace-one matrix: a (possibly mixed)
/// state. Construction always validates, so a held value is always a state.
class DensityOperator {
 public:
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }

 private:
  explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;

  friend DensityOperator make_density(const ComplexMatrix&, double);
};

/// Validates a matrix as a density operator.
inline DensityOperator make_density(const ComplexMatrix& matrix, double tol = kDefaultTol) {
  if (!matrix.is_square()) {
    throw ShapeError("density operator must be square");
  }
  if (max_abs_diff(matrix, adjoint(matrix)) > tol) {
    throw StateError(StateError::Kind::NotHermitian,
                     "matrix is not Hermitian within tolerance");
  }
  const Complex tr = trace(matrix);
  if (std::abs(tr - Complex{1.0, 0.0}) > tol) {
    throw StateError(StateError::Kind::TraceNotOne,
                     "trace is " + std::to_string(tr.real()) +
                         (tr.imag() != 0.0 ? "+" + std::to_string(tr.imag()) + "i" : "") +
                         ", expected 1");
  }
  const std::vector<double> eigs = hermitian_eigenvalues(matrix, tol);
  if (eigs.front() < -tol) {
    throw StateError(StateError::Kind::NotPsd,
                     "matrix is not positive semidefinite; most negative eigenvalue is " +
                         std::to_string(eigs.front()));
  }
  return DensityOperator(matrix);
}

/// The rank-one projector |psi><psi| of a column vector. The vector must be
/// normalized within tol unless normalize is set, in which case it is
/// rescaled first.
inline DensityOperator pure_state(const ComplexMatrix& vector, double tol = kDefaultTol,
                                  bool normalize = false) {
  if (!vector.is_column()) {
    throw ShapeError("pure_state expects a column vector");
  }
  double norm_sq = 0.0;
  for (const Complex& z : vector.entries()) norm_sq += std::norm(z);
  const double norm = std::sqrt(norm_sq);
  if (norm <= tol) {
    throw StateError(StateError::Kind::ZeroVector, "state vector is zero");
  }
  if (!normalize && std::abs(norm - 1.0) > tol) {
    throw StateError(StateError::Kind::NotUnitNorm,
                     "state vector norm is " + std::to_string(norm) + ", expected 1");
  }
  const std::size_t n = vector.rows();
  ComplexMatrix proj(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      proj(i, j) = vector(i, 0) * std::conj(vector(j, 0)) / norm_sq;
    }
  }
  return make_density(proj, tol);
}

/// Convex combination of states. Weights must be non-negative and sum to 1
/// within tol; all states must share one dimension.
inline DensityOperator mix(const std::vector<std::pair<double, DensityOperator>>& ensemble,
                           double tol = kDefaultTol) {
  if (ensemble.empty()) {
    throw ShapeError("ensemble must not be empty");
  }
  const std::size_t dim = ensemble.front().second.dim();
  double total = 0.0;
  ComplexMatrix sum(dim, dim);
  for (const auto& [p, rho] : ensemble) {
    if (p < 0.0) {
      throw StateError(StateError::Kind::NotUnitNorm,
                       "ensemble weight " + std::to_string(p) + " is negative");
    }
    if (rho.dim() != dim) {
      throw ShapeError("ensemble states have mismatched dimensions");
    }
    total += p;
    sum = sum + Complex{p, 0.0} * rho.matrix();
  }
  if (std::abs(total - 1.0) > tol) {
    throw StateError(StateError::Kind::NotUnitNorm,
                     "ensemble weights sum to " + std::to_string(total) + ", expected 1");
  }
  return make_density(sum, tol);
}

/// Outcome-indexed Kraus family: one dim x dim block per label, satisfying
/// the completeness condition sum_x K(x)* K(x) = 1 within tol.
class KrausFamily {
 public:
  KrausFamily(OutcomeSet outcomes, std::vector<ComplexMatrix> blocks,
              double tol = kDefaultTol)
      : outcomes_(std::move(outcomes)), blocks_(std::move(blocks)) {
    if (outcomes_.size() == 0) {
      throw ShapeError("Kraus family needs at least one outcome");
    }
    if (blocks_.size() != outcomes_.size()) {
      throw ShapeError("Kraus family has " + std::to_string(blocks_.size()) +
                       " blocks for " + std::to_string(outcomes_.size()) + " outcomes");
    }
    const std::size_t dim = blocks_.front().rows();
    for (const ComplexMatrix& k : blocks_) {
      if (!k.is_square() || k.rows() != dim) {
        throw ShapeError("Kraus blocks must all be square with one dimension");
      }
    }
    ComplexMatrix sum(dim, dim);
    for (const ComplexMatrix& k : blocks_) {
      sum = sum + adjoint(k) * k;
    }
    const double dev = max_abs_diff(sum, ComplexMatrix::identity(dim));
    if (dev > tol) {
      throw OperationError("completeness violated: |sum K*K - 1| = " + std::to_string(dev));
    }
  }

  std::size_t dim() const { return blocks_.front().rows(); }
  const OutcomeSet& outcomes() const { return outcomes_; }
  const ComplexMatrix& block(std::size_t i) const { return blocks_.at(i); }
  const ComplexMatrix& block(const std::string& label) const {
    return blocks_[outcomes_.index(label)];
  }

 private:
  OutcomeSet outcomes_;
  std::vector<ComplexMatrix> blocks_;
};

/// Isometry W : H -> H (x) l2(X), stored as a (dim*|X|) x dim matrix with
/// outcome-major row blocks. W* W = 1 within tol.
class IsometryMatrix {
 public:
  IsometryMatrix(OutcomeSet outcomes, ComplexMatrix matrix, double tol = kDefaultTol)
      : outcomes_(std::move(outcomes)), matrix_(std::move(matrix)) {
    if (outcomes_.size() == 0) {
      throw ShapeError("isometry needs at least one outcome");
    }
    if (matrix_.rows() != matrix_.cols() * outcomes_.size()) {
      throw ShapeError("isometry must be (dim*|X|) x dim; got " +
                       std::to_string(matrix_.rows()) + "x" +
                       std::to_string(matrix_.cols()) + " for |X| = " +
                       std::to_string(outcomes_.size()));
    }
    const double dev =
        max_abs_diff(adjoint(matrix_) * matrix_, ComplexMatrix::identity(matrix_.cols()));
    if (dev > tol) {
      throw OperationError("matrix is not isometric: |W*W - 1| = " + std::to_string(dev));
    }
  }

  std::size_t dim() const { return matrix_.cols(); }
  const OutcomeSet& outcomes() const { return outcomes_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  OutcomeSet outcomes_;
  ComplexMatrix matrix_;
};

/// The embedding J(x) : H -> H (x) l2(X) with J(x)|psi> = |psi> (x) |x>:
/// an identity block at outcome x's row offset, zero elsewhere.
inline ComplexMatrix embed_outcome(std::size_t dim, const OutcomeSet& outcomes,
                                   const std::string& x) {
  const std::size_t ix = outcomes.index(x);
  ComplexMatrix j(dim * outcomes.size(), dim);
  for (std::size_t k = 0; k < dim; ++k) {
    j(ix * dim + k, k) = Complex{1.0, 0.0};
  }
  return j;
}

/// Stacks the Kraus blocks into the isometry W with W|psi> =
/// sum_x (K(x)|psi> (x) |x>). Exact: rows for outcome x are K(x) verbatim.
inline IsometryMatrix kraus_to_isometry(const KrausFamily& k) {
  const std::size_t dim = k.dim();
  const std::size_t nx = k.outcomes().size();
  ComplexMatrix w(dim * nx, dim);
  for (std::size_t b = 0; b < nx; ++b) {
    const ComplexMatrix& blk = k.block(b);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        w(b * dim + i, j) = blk(i, j);
      }
    }
  }
  return IsometryMatrix(k.outcomes(), std::move(w));
}

/// Slices the row blocks K(x) = J(x)* W back out of an isometry. Exact
/// inverse of kraus_to_isometry.
inline KrausFamily isometry_to_kraus(const IsometryMatrix& w) {
  const std::size_t dim = w.dim();
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(w.outcomes().size());
  for (std::size_t b = 0; b < w.outcomes().size(); ++b) {
    ComplexMatrix blk(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        blk(i, j) = w.matrix()(b * dim + i, j);
      }
    }
    blocks.push_back(std::move(blk));
  }
  return KrausFamily(w.outcomes(), std::move(blocks));
}

/// A quantum operation, stored as its canonical Kraus representative. Any
/// two isometries related by outcome-wise phases denote the same operation;
/// the isometry view is derived on demand.
class QuantumOperation {
 public:
  explicit QuantumOperation(KrausFamily kraus) : kraus_(std::move(kraus)) {}
  explicit QuantumOperation(const IsometryMatrix& w) : kraus_(isometry_to_kraus(w)) {}

  const KrausFamily& kraus() const { return kraus_; }
  std::size_t dim() const { return kraus_.dim(); }
  const OutcomeSet& outcomes() const { return kraus_.outcomes(); }
  IsometryMatrix isometry() const { return kraus_to_isometry(kraus_); }

 private:
  KrausFamily kraus_;
};

namespace detail {

inline double clamp_probability(double p, double imag_part, double tol) {
  if (std::abs(imag_part) > tol || p < -tol || p > 1.0 + tol) {
    throw NumericError("probability " + std::to_string(p) + (imag_part != 0.0
                           ? " (imaginary part " + std::to_string(imag_part) + ")"
                           : "") +
                       " outside [0,1] beyond tolerance");
  }
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace detail

/// Born rule: Pr(x|rho) = tr(rho K(x)* K(x)), clamped into [0,1].
inline double outcome_probability(const QuantumOperation& op, const std::string& x,
                                  const DensityOperator& rho, double tol = kDefaultTol) {
  if (op.dim() != rho.dim()) {
    throw ShapeError("operation dimension " + std::to_string(op.dim()) +
                     " does not match state dimension " + std::to_string(rho.dim()));
  }
  const ComplexMatrix& k = op.kraus().block(x);
  const Complex tr = trace(rho.matrix() * (adjoint(k) * k));
  return detail::clamp_probability(tr.real(), tr.imag(), tol);
}

/// Normalized post-measurement state K(x) rho K(x)* / tr(rho K(x)* K(x)).
/// Throws ZeroProbabilityError when the outcome probability is at or below
/// prob_floor.
inline DensityOperator apply_effect(const QuantumOperation& op, const std::string& x,
                                    const DensityOperator& rho,
                                    double prob_floor = kDefaultProbFloor,
                                    double tol = kDefaultTol) {
  const double p = outcome_probability(op, x, rho, tol);
  if (p <= prob_floor) {
    throw ZeroProbabilityError("outcome '" + x + "' has probability " +
                               std::to_string(p) + " at or below the floor");
  }
  const ComplexMatrix& k = op.kraus().block(x);
  ComplexMatrix num = k * rho.matrix() * adjoint(k);
  const double denom = trace(num).real();
  ComplexMatrix result = Complex{1.0 / denom, 0.0} * num;
  return make_density(result, tol);
}

/// Probabilities of every outcome; sums to 1 within tol by completeness.
inline std::map<std::string, double> outcome_distribution(const QuantumOperation& op,
                                                          const DensityOperator& rho,
                                                          double tol = kDefaultTol) {
  std::map<std::string, double> dist;
  for (const std::string& x : op.outcomes().labels()) {
    dist[x] = outcome_probability(op, x, rho, tol);
  }
  return dist;
}

/// Wraps a unitary as the degenerate single-outcome operation.
inline QuantumOperation unitary_as_operation(const ComplexMatrix& u, double tol = kDefaultTol,
                                             const std::string& label = "·") {
  if (!u.is_square()) {
    throw ShapeError("unitary must be square");
  }
  const double dev = max_abs_diff(adjoint(u) * u, ComplexMatrix::identity(u.rows()));
  if (dev > tol) {
    throw OperationError("matrix is not unitary: |U*U - 1| = " + std::to_string(dev));
  }
  return QuantumOperation(KrausFamily(OutcomeSet({label}), {u}, tol));
}

struct PhaseEquivalenceResult {
  std::optional<std::map<std::string, double>> thetas;  // set iff equivalent
  std::string witness;  // an outcome no phase can fix, when not equivalent
};

/// Decides whether b equals a up to an outcome-wise phase: for every x there
/// is theta(x) in [0, 2pi) with K_b(x) = e^{i theta(x)} K_a(x) within tol.
/// On success carries the theta map (0 on outcome blocks that are zero on
/// both sides, where the phase is unconstrained); otherwise names a
/// witnessing outcome. The two operations must share dimension and outcome
/// set.
inline PhaseEquivalenceResult phase_equivalence_check(const QuantumOperation& a,
                                                      const QuantumOperation& b,
                                                      double tol = kDefaultTol) {
  if (a.dim() != b.dim()) {
    throw ShapeError("operations have different dimensions");
  }
  if (!(a.outcomes() == b.outcomes())) {
    throw ShapeError("operations have different outcome sets");
  }

  std::map<std::string, double> thetas;
  for (const std::string& x : a.outcomes().labels()) {
    const ComplexMatrix& ka = a.kraus().block(x);
    const ComplexMatrix& kb = b.kraus().block(x);

    if (max_abs(ka) <= tol) {
      if (max_abs(kb) > tol) return {std::nullopt, x};
      thetas[x] = 0.0;
      continue;
    }

    // Recover the phase from the entry of K_a(x) with the largest modulus.
    std::size_t bi = 0, bj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < ka.rows(); ++i) {
      for (std::size_t j = 0; j < ka.cols(); ++j) {
        const double m = std::abs(ka(i, j));
        if (m > best) {
          best = m;
          bi = i;
          bj = j;
        }
      }
    }
    const Complex ratio = kb(bi, bj) * std::conj(ka(bi, bj));
    double theta = std::atan2(ratio.imag(), ratio.real());
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;

    const Complex phase{std::cos(theta), std::sin(theta)};
    if (max_abs_diff(kb, phase * ka) > tol) return {std::nullopt, x};
    thetas[x] = theta;
  }
  return {std::move(thetas), ""};
}

inline std::optional<std::map<std::string, double>> phase_equivalent(
    const QuantumOperation& a, const QuantumOperation& b, double tol = kDefaultTol) {
  return phase_equivalence_check(a, b, tol).thetas;
}

}  // namespace qaut
