#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bpb/ahsp_l1.hpp"

namespace bpb {

/// A sup-norm isometry of the domain: coordinatewise signs composed with a
/// coordinate permutation. Slot i of the image reads sign[i] * x(source[i]).
class DomainIsometry {
 public:
  static DomainIsometry identity(int n);
  DomainIsometry(std::vector<int> source, std::vector<int> signs);

  int dim() const { return static_cast<int>(source_.size()); }
  const std::vector<int>& source() const { return source_; }
  const std::vector<int>& signs() const { return signs_; }

  DomainVector apply(const DomainVector& x) const;
  DomainIsometry inverse() const;
  /// The composite x -> this(inner(x)).
  DomainIsometry compose_after(const DomainIsometry& inner) const;

  bool operator==(const DomainIsometry& other) const {
    return source_ == other.source_ && signs_ == other.signs_;
  }

 private:
  std::vector<int> source_;  // 1-based source index per slot
  std::vector<int> signs_;   // +1 / -1 per slot
};

/// The tuple of T composed with a domain isometry G, i.e. x -> T(G(x)).
OperatorTuple precompose(const OperatorTuple& op, const DomainIsometry& g);

/// Moves a norm-attaining point into the convex hull of the basis: given a
/// norm-one operator attaining at y, and x in the hull with ||y - x|| < eps,
/// returns z in the hull with ||op(z)|| = 1 and ||z - x|| < eps. Coordinates
/// pinned to -1 up to the last -1 of y, copied from x in the middle, pinned
/// to +1 from the first +1 of y on.
DomainVector face_project(const OperatorTuple& op, const DomainVector& y,
                          const DomainVector& x, const Rat& eps);

/// Deterministic isometry carrying a unit vector into the monotone cone:
/// swap the first modulus-one coordinate into slot 1, flip its sign to +1,
/// stable-sort slots 2..n by value. Returns the isometry and its image.
std::pair<DomainIsometry, DomainVector> normalize_to_O(const DomainVector& x0);

/// Evidence of one near-attainment correction: ||S|| = ||S(u0)|| = 1 exactly,
/// ||u0 - x0|| < eps and ||S - T|| < eps.
struct BpbCertificate {
  int n = 0;
  Rat epsilon;
  Rat eta;  // hypothesis threshold used
  std::optional<OperatorTuple> input_op;   // T
  std::optional<DomainVector> x0;
  std::optional<OperatorTuple> output_op;  // S
  std::optional<DomainVector> u0;

  // Recorded quantities.
  Rat s_norm;
  Rat su0_norm;
  Rat u0_dist;
  Rat st_dist;

  // Audit data.
  std::optional<DomainIsometry> isometry;
  std::vector<Rat> alphas;     // coefficients of the normalized x0
  std::vector<int> attain_set;
  std::shared_ptr<const CorrectionCertificate> inner;
};

/// Corrects a norm-one operator over l1 that nearly attains its norm at x0
/// (||T(x0)|| > 1 - eta(n, eps)) into a pair (S, u0) attaining exactly.
BpbCertificate bpbp_correct(const OperatorTuple& T, const DomainVector& x0, const Rat& eps);

using BpbOracle =
    std::function<BpbCertificate(const OperatorTuple&, const DomainVector&, const Rat&)>;

/// The converse harness: derives an attainment-set correction from any
/// near-attainment correction procedure. Builds the operator of (y_i),
/// corrects it at x0 = sum alpha_i v_i^n through the oracle at stage
/// eps/(n+1), projects u0 back into the hull, and reads the set off the
/// nonzero hull coefficients.
std::pair<std::vector<int>, CorrectionCertificate> ahsp_from_bpbp(
    const BpbOracle& oracle, const OperatorTuple& ys, const std::vector<Rat>& alphas,
    const Rat& eps);

}  // namespace bpb
