#pragma once

// Strictly positive probability vectors and the structures built on them:
// partitions (coarsening) and nested two-level distributions.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qentropy/errors.hpp"
#include "qentropy/qmath.hpp"

namespace qentropy {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Allowed |sum - 1| for a probability vector.
inline constexpr double kSumTol = 1e-9;

namespace detail {

template <typename Scalar>
void require_positive(const Vector<Scalar>& w, const char* what) {
  if (w.size() == 0) throw DimensionError(std::string(what) + " must have at least one entry");
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w[i] > Scalar(0)) || !std::isfinite(static_cast<double>(w[i]))) {
      throw PositivityError(std::string(what) + " entry " + std::to_string(i) +
                            " is not a finite positive number (" +
                            std::to_string(static_cast<double>(w[i])) + ")");
    }
  }
}

template <typename Scalar>
void require_normalized(const Vector<Scalar>& w) {
  using std::abs;
  const Scalar total = w.sum();
  if (abs(total - Scalar(1)) > Scalar(kSumTol)) {
    throw NormalizationError("weights sum to " + std::to_string(static_cast<double>(total)) +
                             ", expected 1");
  }
}

}  // namespace detail

/// Probability vector with every entry > 0 and sum within kSumTol of 1.
/// Weights are never renormalized behind the caller's back.
template <typename Scalar = double>
class ProbDist {
 public:
  using VectorType = Vector<Scalar>;

  static ProbDist from_weights(VectorType w) {
    detail::require_positive(w, "probability");
    detail::require_normalized(w);
    return ProbDist(std::move(w));
  }

  const VectorType& weights() const { return w_; }
  Eigen::Index size() const { return w_.size(); }
  Scalar operator[](Eigen::Index i) const { return w_[i]; }

  friend bool operator==(const ProbDist& a, const ProbDist& b) {
    return a.size() == b.size() && (a.w_.array() == b.w_.array()).all();
  }

 private:
  explicit ProbDist(VectorType w) : w_(std::move(w)) {}
  VectorType w_;
};

/// Positive weights with no sum constraint.
template <typename Scalar = double>
class IncompleteDist {
 public:
  using VectorType = Vector<Scalar>;

  static IncompleteDist from_weights(VectorType w) {
    detail::require_positive(w, "weight");
    return IncompleteDist(std::move(w));
  }

  const VectorType& weights() const { return w_; }
  Eigen::Index size() const { return w_.size(); }
  Scalar operator[](Eigen::Index i) const { return w_[i]; }
  Scalar total() const { return w_.sum(); }

 private:
  explicit IncompleteDist(VectorType w) : w_(std::move(w)) {}
  VectorType w_;
};

template <typename Scalar>
ProbDist<Scalar> make_dist(const Vector<Scalar>& w) {
  return ProbDist<Scalar>::from_weights(w);
}

template <typename Scalar = double>
ProbDist<Scalar> make_dist(std::initializer_list<Scalar> w) {
  Vector<Scalar> v(static_cast<Eigen::Index>(w.size()));
  Eigen::Index i = 0;
  for (Scalar x : w) v[i++] = x;
  return ProbDist<Scalar>::from_weights(std::move(v));
}

template <typename Scalar = double>
ProbDist<Scalar> make_dist(const std::vector<Scalar>& w) {
  return ProbDist<Scalar>::from_weights(
      Eigen::Map<const Vector<Scalar>>(w.data(), static_cast<Eigen::Index>(w.size())));
}

template <typename Scalar = double>
ProbDist<Scalar> uniform(Eigen::Index n) {
  if (n < 1) throw DimensionError("uniform distribution needs n >= 1");
  return ProbDist<Scalar>::from_weights(Vector<Scalar>::Constant(n, Scalar(1) / Scalar(n)));
}

template <typename Scalar>
IncompleteDist<Scalar> make_incomplete(const Vector<Scalar>& w) {
  return IncompleteDist<Scalar>::from_weights(w);
}

template <typename Scalar = double>
IncompleteDist<Scalar> make_incomplete(std::initializer_list<Scalar> w) {
  Vector<Scalar> v(static_cast<Eigen::Index>(w.size()));
  Eigen::Index i = 0;
  for (Scalar x : w) v[i++] = x;
  return IncompleteDist<Scalar>::from_weights(std::move(v));
}

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// Partition of {0, ..., n-1} into non-empty, pairwise disjoint blocks.
/// Block order is preserved by coarsen().
class Partition {
 public:
  using Block = std::vector<std::size_t>;

  static Partition make(std::vector<Block> blocks, std::size_t n) {
    if (blocks.empty()) throw PartitionError("partition has no blocks");
    std::vector<char> seen(n, 0);
    std::size_t covered = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw PartitionError("block " + std::to_string(b) + " is empty");
      for (std::size_t idx : blocks[b]) {
        if (idx >= n) {
          throw PartitionError("index " + std::to_string(idx) + " out of range for n = " +
                               std::to_string(n));
        }
        if (seen[idx]) throw PartitionError("index " + std::to_string(idx) + " appears twice");
        seen[idx] = 1;
        ++covered;
      }
    }
    if (covered != n) throw PartitionError("blocks do not cover every index");
    return Partition(std::move(blocks), n);
  }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  std::size_t domain_size() const { return n_; }

 private:
  Partition(std::vector<Block> blocks, std::size_t n) : blocks_(std::move(blocks)), n_(n) {}
  std::vector<Block> blocks_;
  std::size_t n_;
};

namespace detail {

template <typename Scalar>
Vector<Scalar> block_sums(const Vector<Scalar>& w, const Partition& part) {
  if (part.domain_size() != static_cast<std::size_t>(w.size())) {
    throw PartitionError("partition covers " + std::to_string(part.domain_size()) +
                         " indices but the vector has " + std::to_string(w.size()));
  }
  Vector<Scalar> out = Vector<Scalar>::Zero(static_cast<Eigen::Index>(part.size()));
  for (std::size_t b = 0; b < part.size(); ++b) {
    for (std::size_t idx : part.blocks()[b]) out[static_cast<Eigen::Index>(b)] += w[static_cast<Eigen::Index>(idx)];
  }
  return out;
}

}  // namespace detail

/// Block sums p^A_i = sum_{j in A_i} p_j, in block order.
template <typename Scalar>
ProbDist<Scalar> coarsen(const ProbDist<Scalar>& p, const Partition& part) {
  return ProbDist<Scalar>::from_weights(detail::block_sums(p.weights(), part));
}

template <typename Scalar>
Scalar power_sum(const ProbDist<Scalar>& p, IndexArg<Scalar> q) {
  return p.weights().array().pow(q.value()).sum();
}

// ---------------------------------------------------------------------------
// Nested distributions
// ---------------------------------------------------------------------------

/// Two-level distribution x_{ij} > 0 with row totals x_i = sum_j x_{ij} and
/// grand total 1.
template <typename Scalar = double>
class NestedDist {
 public:
  static NestedDist make(std::vector<Vector<Scalar>> rows) {
    if (rows.empty()) throw DimensionError("nested distribution has no rows");
    Scalar total(0);
    for (const auto& row : rows) {
      detail::require_positive(row, "nested cell");
      total += row.sum();
    }
    using std::abs;
    if (abs(total - Scalar(1)) > Scalar(kSumTol)) {
      throw NormalizationError("nested cells sum to " + std::to_string(static_cast<double>(total)));
    }
    return NestedDist(std::move(rows));
  }

  std::size_t rows() const { return rows_.size(); }
  const Vector<Scalar>& row(std::size_t i) const { return rows_[i]; }
  Scalar row_sum(std::size_t i) const { return rows_[i].sum(); }

  /// (x_1, ..., x_n)
  ProbDist<Scalar> coarse() const {
    Vector<Scalar> s(static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i) s[static_cast<Eigen::Index>(i)] = row_sum(i);
    return ProbDist<Scalar>::from_weights(std::move(s));
  }

  /// (x_{i1}/x_i, ..., x_{im_i}/x_i); renormalized, so exact-sum validation
  /// is relaxed to the usual tolerance.
  ProbDist<Scalar> conditional(std::size_t i) const {
    return ProbDist<Scalar>::from_weights(rows_[i] / row_sum(i));
  }

  /// Cells in row-major order.
  ProbDist<Scalar> flatten() const {
    Eigen::Index total = 0;
    for (const auto& r : rows_) total += r.size();
    Vector<Scalar> flat(total);
    Eigen::Index k = 0;
    for (const auto& r : rows_) {
      flat.segment(k, r.size()) = r;
      k += r.size();
    }
    return ProbDist<Scalar>::from_weights(std::move(flat));
  }

 private:
  explicit NestedDist(std::vector<Vector<Scalar>> rows) : rows_(std::move(rows)) {}
  std::vector<Vector<Scalar>> rows_;
};

}  // namespace qentropy
