#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bpb/rational.hpp"

namespace bpb {

/// Norm callback for target spaces without an exact norm formula.
/// Implementations must be re-entrant.
class NormOracle {
 public:
  virtual ~NormOracle() = default;
  virtual double norm(const std::map<int, Rat>& entries) const = 0;
  /// Absolute error bound on the values returned by norm().
  virtual double tolerance() const = 0;
  virtual std::string name() const = 0;
};

/// Built-in Euclidean-norm oracle, registered under the name "euclid".
std::shared_ptr<const NormOracle> make_euclidean_oracle();

struct Ambient {
  enum class Kind { L1, LinfM, Oracle };

  Kind kind = Kind::L1;
  int m = 0;  // LinfM only
  std::shared_ptr<const NormOracle> oracle;

  static Ambient l1() { return Ambient{}; }
  static Ambient linf(int m);
  static Ambient with_oracle(std::shared_ptr<const NormOracle> oracle);

  bool exact() const { return kind != Kind::Oracle; }
  bool operator==(const Ambient& other) const;
  std::string describe() const;
};

struct NormEstimate {
  Rat value;
  bool exact = true;
  double tolerance = 0.0;
};

/// Finitely supported vector of the target space: sparse map index -> rational
/// with no zero entries stored. Indices are 1-based.
class TargetVector {
 public:
  explicit TargetVector(Ambient ambient = Ambient::l1());
  TargetVector(Ambient ambient, std::map<int, Rat> entries);
  static TargetVector unit(const Ambient& ambient, int index);  // e_index

  const Ambient& ambient() const { return ambient_; }
  const std::map<int, Rat>& entries() const { return entries_; }
  Rat at(int index) const;  // 0 when absent
  void set(int index, const Rat& value);
  bool is_zero() const { return entries_.empty(); }
  int max_support_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

  bool operator==(const TargetVector& other) const;
  TargetVector& operator+=(const TargetVector& other);
  TargetVector& operator-=(const TargetVector& other);
  friend TargetVector operator+(TargetVector a, const TargetVector& b) { return a += b; }
  friend TargetVector operator-(TargetVector a, const TargetVector& b) { return a -= b; }
  friend TargetVector operator-(const TargetVector& a);
  TargetVector scaled(const Rat& factor) const;

  /// this(k) >= other(k) for every index, absent entries read as 0.
  bool entrywise_geq(const TargetVector& other) const;
  bool nonnegative() const;

 private:
  void check_index(int index) const;

  Ambient ambient_;
  std::map<int, Rat> entries_;
};

Rat exact_norm(const TargetVector& v);       // throws on oracle ambients
NormEstimate norm_estimate(const TargetVector& v);

/// The summing functional: sum of all entries. Requires the l1 ambient.
Rat u_star(const TargetVector& v);

/// Entrywise max with 0. Requires the l1 ambient.
TargetVector positive_part(const TargetVector& v);

/// Entrywise maximum over a nonempty list with common l1 ambient.
TargetVector coordinate_max(const std::vector<TargetVector>& vs);

/// A functional on the target space with exact rational evaluation.
/// Sign-vector functionals read +1 on every index not listed as negative
/// and have norm 1 on l1.
class DualFunctional {
 public:
  enum class Kind { Summing, SignVector, Coordinate };

  static DualFunctional summing();
  static DualFunctional sign_vector(std::set<int> negative_indices);
  static DualFunctional coordinate(int index);

  Kind kind() const { return kind_; }
  const std::set<int>& negative_indices() const { return negatives_; }
  int coordinate_index() const { return coordinate_; }
  /// +1 or -1 at the given index (Summing and SignVector kinds).
  int sign_at(int index) const;

  Rat operator()(const TargetVector& v) const;

  bool operator==(const DualFunctional& other) const;

 private:
  Kind kind_ = Kind::Summing;
  std::set<int> negatives_;
  int coordinate_ = 0;
};

/// The norming sign-vector functional of v: -1 where v is negative, +1
/// elsewhere (sign(0) = +1). Satisfies f(v) = ||v||_1. Requires l1.
DualFunctional sign_functional(const TargetVector& v);

}  // namespace bpb
