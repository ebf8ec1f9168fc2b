#pragma once

// Dense k-way joint distributions, Tsallis joint / conditional entropies,
// chain rules and the Tsallis form of Han's inequality.
//
// Axes are 0-based. Cells are stored row-major (last axis fastest).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qentropy/dist.hpp"
#include "qentropy/entropy.hpp"
#include "qentropy/errors.hpp"
#include "qentropy/qmath.hpp"
#include "qentropy/report.hpp"

namespace qentropy {

using AxisSet = std::vector<std::size_t>;

enum class HypothesisPolicy { enforce, override_ };

template <typename Scalar = double>
class JointDist {
 public:
  static JointDist make(std::vector<std::size_t> dims, Vector<Scalar> cells) {
    if (dims.empty()) throw DimensionError("joint distribution needs at least one axis");
    std::size_t total = 1;
    for (std::size_t d : dims) {
      if (d == 0) throw DimensionError("joint distribution axis of size 0");
      total *= d;
    }
    if (total != static_cast<std::size_t>(cells.size())) {
      throw DimensionError("dims describe " + std::to_string(total) + " cells but " +
                           std::to_string(cells.size()) + " were given");
    }
    detail::require_positive(cells, "joint cell");
    detail::require_normalized(cells);
    return JointDist(std::move(dims), std::move(cells));
  }

  static JointDist make(std::vector<std::size_t> dims, const std::vector<Scalar>& cells) {
    return make(std::move(dims), Vector<Scalar>(Eigen::Map<const Vector<Scalar>>(
                                     cells.data(), static_cast<Eigen::Index>(cells.size()))));
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t rank() const { return dims_.size(); }
  const Vector<Scalar>& cells() const { return cells_; }
  Eigen::Index size() const { return cells_.size(); }

  ProbDist<Scalar> flatten() const { return ProbDist<Scalar>::from_weights(cells_); }

  /// Row-major strides.
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(dims_.size(), 1);
    for (std::size_t a = dims_.size(); a-- > 1;) s[a - 1] = s[a] * dims_[a];
    return s;
  }

 private:
  JointDist(std::vector<std::size_t> dims, Vector<Scalar> cells)
      : dims_(std::move(dims)), cells_(std::move(cells)) {}

  std::vector<std::size_t> dims_;
  Vector<Scalar> cells_;
};

/// Joint of independent components: cell = prod_a p_a[i_a].
template <typename Scalar>
JointDist<Scalar> product_joint(const std::vector<ProbDist<Scalar>>& parts) {
  std::vector<std::size_t> dims;
  Vector<Scalar> cells = Vector<Scalar>::Ones(1);
  for (const auto& part : parts) {
    dims.push_back(static_cast<std::size_t>(part.size()));
    Vector<Scalar> next(cells.size() * part.size());
    for (Eigen::Index i = 0; i < cells.size(); ++i) {
      next.segment(i * part.size(), part.size()) = cells[i] * part.weights();
    }
    cells = std::move(next);
  }
  return JointDist<Scalar>::make(std::move(dims), std::move(cells));
}

namespace detail {

inline AxisSet checked_axes(AxisSet axes, std::size_t rank, bool allow_empty) {
  if (axes.empty() && !allow_empty) throw AxisError("axis set is empty");
  std::sort(axes.begin(), axes.end());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] >= rank) {
      throw AxisError("axis " + std::to_string(axes[i]) + " out of range for rank " +
                      std::to_string(rank));
    }
    if (i > 0 && axes[i] == axes[i - 1]) {
      throw AxisError("axis " + std::to_string(axes[i]) + " repeated");
    }
  }
  return axes;
}

// Sums cells onto the (sorted, validated) kept axes.
template <typename Scalar>
JointDist<Scalar> sum_onto(const JointDist<Scalar>& J, const AxisSet& keep) {
  std::vector<std::size_t> out_dims;
  for (std::size_t a : keep) out_dims.push_back(J.dims()[a]);
  std::vector<std::size_t> out_strides(keep.size(), 1);
  for (std::size_t i = keep.size(); i-- > 1;) out_strides[i - 1] = out_strides[i] * out_dims[i];
  std::size_t out_size = 1;
  for (std::size_t d : out_dims) out_size *= d;

  const auto strides = J.strides();
  Vector<Scalar> out = Vector<Scalar>::Zero(static_cast<Eigen::Index>(out_size));
  for (Eigen::Index c = 0; c < J.size(); ++c) {
    std::size_t target = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      const std::size_t coord = (static_cast<std::size_t>(c) / strides[keep[i]]) % J.dims()[keep[i]];
      target += coord * out_strides[i];
    }
    out[static_cast<Eigen::Index>(target)] += J.cells()[c];
  }
  return JointDist<Scalar>::make(std::move(out_dims), std::move(out));
}

}  // namespace detail

/// Sums out every axis not in `axes`; kept axes stay in ascending order.
template <typename Scalar>
JointDist<Scalar> marginal(const JointDist<Scalar>& J, AxisSet axes) {
  return detail::sum_onto(J, detail::checked_axes(std::move(axes), J.rank(), false));
}

/// Reorders axes: output axis i is input axis perm[i].
template <typename Scalar>
JointDist<Scalar> permute_axes(const JointDist<Scalar>& J, const std::vector<std::size_t>& perm) {
  if (perm.size() != J.rank()) throw AxisError("permutation length differs from rank");
  if (detail::checked_axes(perm, J.rank(), false).size() != J.rank()) {
    throw AxisError("not a permutation");
  }
  std::vector<std::size_t> out_dims;
  for (std::size_t a : perm) out_dims.push_back(J.dims()[a]);
  std::vector<std::size_t> out_strides(perm.size(), 1);
  for (std::size_t i = perm.size(); i-- > 1;) out_strides[i - 1] = out_strides[i] * out_dims[i];

  const auto strides = J.strides();
  Vector<Scalar> out(J.size());
  for (Eigen::Index c = 0; c < J.size(); ++c) {
    std::size_t target = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      target += ((static_cast<std::size_t>(c) / strides[perm[i]]) % J.dims()[perm[i]]) * out_strides[i];
    }
    out[static_cast<Eigen::Index>(target)] = J.cells()[c];
  }
  return JointDist<Scalar>::make(std::move(out_dims), std::move(out));
}

/// H_q of the joint: -sum p^q ln_q p = sum p ln_q(1/p) over all cells.
template <typename Scalar>
Scalar tsallis_joint_entropy(const JointDist<Scalar>& J, IndexArg<Scalar> q) {
  return tsallis_entropy(J.flatten(), q);
}

/// H_q(target | given) = -sum p(t,g)^q ln_q(p(t,g) / p(g)), after
/// marginalizing J onto target u given. Empty `given` gives H_q(target).
template <typename Scalar>
Scalar tsallis_conditional_entropy(const JointDist<Scalar>& J, AxisSet target, AxisSet given,
                                   IndexArg<Scalar> q) {
  using std::pow;
  target = detail::checked_axes(std::move(target), J.rank(), false);
  given = detail::checked_axes(std::move(given), J.rank(), true);
  AxisSet keep;
  std::set_union(target.begin(), target.end(), given.begin(), given.end(), std::back_inserter(keep));
  if (keep.size() != target.size() + given.size()) {
    throw AxisError("target and given axes overlap");
  }
  const auto joint = detail::sum_onto(J, keep);
  if (given.empty()) return tsallis_joint_entropy(joint, q);

  // Positions of the given axes inside `keep`, then the marginal over them.
  AxisSet given_pos;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (std::binary_search(given.begin(), given.end(), keep[i])) given_pos.push_back(i);
  }
  const auto cond = detail::sum_onto(joint, given_pos);
  const auto js = joint.strides();
  const auto cs = cond.strides();

  Scalar h(0);
  for (Eigen::Index c = 0; c < joint.size(); ++c) {
    std::size_t g = 0;
    for (std::size_t i = 0; i < given_pos.size(); ++i) {
      g += ((static_cast<std::size_t>(c) / js[given_pos[i]]) % joint.dims()[given_pos[i]]) * cs[i];
    }
    const Scalar pj = joint.cells()[c];
    const Scalar weight = q.deformed() ? pow(pj, q.value()) : pj;
    h -= weight * q_log(pj / cond.cells()[static_cast<Eigen::Index>(g)], q);
  }
  return h;
}

/// Terms H_q(x_{o_i} | x_{o_{i-1}}, ..., x_{o_1}) for the given axis order;
/// they sum to the joint entropy.
template <typename Scalar>
std::vector<Scalar> chain_rule_decomposition(const JointDist<Scalar>& J,
                                             const std::vector<std::size_t>& order,
                                             IndexArg<Scalar> q) {
  if (order.size() != J.rank() || detail::checked_axes(order, J.rank(), false).size() != J.rank()) {
    throw AxisError("order must be a permutation of the axes");
  }
  std::vector<Scalar> terms;
  AxisSet before;
  for (std::size_t a : order) {
    terms.push_back(tsallis_conditional_entropy(J, {a}, before, q));
    before.push_back(a);
  }
  return terms;
}

namespace detail {

template <typename Scalar>
void require_q_at_least_one(IndexArg<Scalar> q, HypothesisPolicy policy, const char* what) {
  if (policy == HypothesisPolicy::enforce && q.value() < Scalar(1)) {
    throw HypothesisError(std::string(what) + " is only claimed for q >= 1");
  }
}

}  // namespace detail

/// 0 <= H_q(x_1..x_k) <= (1/(k-1)) sum_i H_q(all axes but i), for q >= 1.
template <typename Scalar>
BoundReport<Scalar> han_sandwich(const JointDist<Scalar>& J, IndexArg<Scalar> q,
                                 HypothesisPolicy policy = HypothesisPolicy::enforce) {
  detail::require_q_at_least_one<Scalar>(q, policy, "Han's inequality");
  const std::size_t k = J.rank();
  if (k < 2) throw DimensionError("Han's inequality needs at least two axes");
  Scalar leave_one_out(0);
  for (std::size_t i = 0; i < k; ++i) {
    AxisSet rest;
    for (std::size_t a = 0; a < k; ++a) {
      if (a != i) rest.push_back(a);
    }
    leave_one_out += tsallis_joint_entropy(detail::sum_onto(J, rest), q);
  }
  return BoundReport<Scalar>::make(Scalar(0), tsallis_joint_entropy(J, q),
                                   leave_one_out / Scalar(k - 1));
}

/// (H_q(x_0 | x_1), H_q(x_0)) after marginalizing onto axes 0 and 1; the
/// first is claimed <= the second for q >= 1.
template <typename Scalar>
OrderedPair<Scalar> conditioning_reduces_entropy_check(
    const JointDist<Scalar>& J, IndexArg<Scalar> q,
    HypothesisPolicy policy = HypothesisPolicy::enforce) {
  detail::require_q_at_least_one<Scalar>(q, policy, "conditioning reduces entropy");
  if (J.rank() < 2) throw DimensionError("conditioning check needs at least two axes");
  return {tsallis_conditional_entropy(J, {0}, {1}, q),
          tsallis_conditional_entropy(J, {0}, {}, q)};
}

}  // namespace qentropy
