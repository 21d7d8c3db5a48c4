#pragma once

#include <vector>

#include "bpb/rational.hpp"

namespace bpb {

/// A point of the sup-normed domain space: n exact rational coordinates.
class DomainVector {
 public:
  explicit DomainVector(std::vector<Rat> coords);
  static DomainVector zero(int n);
  /// Standard unit vector e_j (j is 1-based).
  static DomainVector standard_unit(int n, int j);

  int dim() const { return static_cast<int>(coords_.size()); }
  const Rat& operator[](int i) const { return coords_[i]; }  // 0-based
  const std::vector<Rat>& coords() const { return coords_; }
  void set(int i, const Rat& value) { coords_[i] = value; }  // 0-based

  bool operator==(const DomainVector& other) const { return coords_ == other.coords_; }

  DomainVector& operator+=(const DomainVector& other);
  DomainVector& operator-=(const DomainVector& other);
  friend DomainVector operator+(DomainVector a, const DomainVector& b) { return a += b; }
  friend DomainVector operator-(DomainVector a, const DomainVector& b) { return a -= b; }
  DomainVector scaled(const Rat& factor) const;

 private:
  std::vector<Rat> coords_;
};

Rat sup_norm(const DomainVector& v);
Rat sup_dist(const DomainVector& a, const DomainVector& b);

/// Strictly increasing tuple of 1-based indices; the empty tuple is even.
class IndexTuple {
 public:
  IndexTuple() = default;
  explicit IndexTuple(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool odd() const { return size() % 2 == 1; }
  /// Throws if any entry exceeds n.
  void require_within(int n) const;

  bool operator==(const IndexTuple& other) const { return indices_ == other.indices_; }

 private:
  std::vector<int> indices_;
};

/// The basis vector v_i^n: +1 in coordinate 1, -1 in coordinates 2..i,
/// +1 in coordinates i+1..n. i is 1-based.
DomainVector basis_vector(int i, int n);

/// All odd-cardinality strictly increasing tuples over {1,...,n}, ordered by
/// increasing bitmask (element i <-> bit i-1). Count is 2^(n-1).
std::vector<IndexTuple> enumerate_odd_tuples(int n);

/// Even-cardinality counterpart, empty tuple included. Count is 2^(n-1).
std::vector<IndexTuple> enumerate_even_tuples(int n);

struct BasisCoefficients {
  std::vector<Rat> alphas;
};

/// Coefficients of v in the basis {v_i^n}; recomposition is exact.
/// For n >= 2: alpha_1 = (v(1)+v(2))/2, alpha_i = (v(i+1)-v(i))/2 for
/// 1 < i < n, alpha_n = (v(1)-v(n))/2. For n = 1 the coefficient is v(1).
BasisCoefficients basis_decompose(const DomainVector& v);

/// The sum of alpha_i * v_i^n.
DomainVector recompose(const BasisCoefficients& coeffs);

/// True iff v(1) = 1 = sup-norm and coordinates 2..n are nondecreasing.
bool in_O(const DomainVector& v);

/// True iff the basis coefficients of v are nonnegative and sum to 1.
/// Agrees with in_O on every input.
bool in_convex_hull_B(const DomainVector& v);

/// Alternating sums v_{i_1} - v_{i_2} + ... over all odd tuples; the set of
/// extreme points of the face {v : v(1) = 1, |v(i)| = 1 for all i}.
std::vector<DomainVector> extreme_points_E1(int n);

}  // namespace bpb
