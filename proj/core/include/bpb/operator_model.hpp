#pragma once

#include <vector>

#include "bpb/linf_geometry.hpp"
#include "bpb/sequence_space.hpp"

namespace bpb {

/// An operator from the n-dimensional sup-normed space into the target space,
/// represented by the images (y_i) of the basis vectors v_i^n. All images
/// share one ambient.
class OperatorTuple {
 public:
  explicit OperatorTuple(std::vector<TargetVector> images);

  int domain_dim() const { return static_cast<int>(images_.size()); }
  const Ambient& ambient() const { return images_.front().ambient(); }
  const TargetVector& image(int i) const { return images_[i]; }  // 0-based
  const std::vector<TargetVector>& images() const { return images_; }

  bool operator==(const OperatorTuple& other) const { return images_ == other.images_; }

 private:
  std::vector<TargetVector> images_;
};

/// y_{i_1} - y_{i_2} + y_{i_3} - ...; the empty tuple yields the zero vector.
TargetVector alternating_sum(const OperatorTuple& op, const IndexTuple& tuple);

/// Exact operator norm: the maximum of ||alternating_sum|| over all odd
/// tuples. Requires an exact ambient.
Rat operator_norm(const OperatorTuple& op);

/// Operator norm for any ambient; inexact and tolerance-tagged when the
/// ambient norm comes from an oracle.
NormEstimate operator_norm_estimate(const OperatorTuple& op);

/// True iff operator_norm(op) <= 1. Requires an exact ambient.
bool in_M(const OperatorTuple& op);

/// Evaluates the operator at x through the basis decomposition of x.
TargetVector apply(const OperatorTuple& op, const DomainVector& x);

/// Builds the tuple representation from the images of the standard basis
/// vectors e_j, so that apply(result, e_j) == cols[j-1].
OperatorTuple from_standard_images(const std::vector<TargetVector>& cols);

/// The cyclic shift with sign flip: (y_1,...,y_n) -> (y_2,...,y_n,-y_1).
OperatorTuple tau(const OperatorTuple& op);

/// tau applied k times; k may be any nonnegative integer (period 2n).
OperatorTuple tau_pow(const OperatorTuple& op, int k);

OperatorTuple scale(const OperatorTuple& op, const Rat& factor);
OperatorTuple difference(const OperatorTuple& a, const OperatorTuple& b);

/// a*wa + b*wb imagewise.
OperatorTuple combine(const OperatorTuple& a, const Rat& wa, const OperatorTuple& b,
                      const Rat& wb);

/// Negates the listed coordinates of the target space; a self-inverse l1
/// isometry applied entrywise.
TargetVector flip_signs(const TargetVector& v, const std::set<int>& negatives);
OperatorTuple flip_signs(const OperatorTuple& op, const std::set<int>& negatives);

}  // namespace bpb
