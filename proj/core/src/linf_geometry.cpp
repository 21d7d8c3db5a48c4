#include "bpb/linf_geometry.hpp"

#include <string>

namespace bpb {

namespace {

void require_dim_match(const DomainVector& a, const DomainVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
  }
}

constexpr int kMaxEnumerationDim = 25;

void require_enumerable(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (n > kMaxEnumerationDim) {
    throw std::invalid_argument("dimension " + std::to_string(n) +
                                " exceeds enumeration cap " +
                                std::to_string(kMaxEnumerationDim));
  }
}

}  // namespace

DomainVector::DomainVector(std::vector<Rat> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("domain vector needs dimension >= 1");
}

DomainVector DomainVector::zero(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  return DomainVector(std::vector<Rat>(n, Rat(0)));
}

DomainVector DomainVector::standard_unit(int n, int j) {
  if (j < 1 || j > n) throw std::invalid_argument("unit index out of range");
  DomainVector v = zero(n);
  v.set(j - 1, Rat(1));
  return v;
}

DomainVector& DomainVector::operator+=(const DomainVector& other) {
  require_dim_match(*this, other);
  for (int i = 0; i < dim(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

DomainVector& DomainVector::operator-=(const DomainVector& other) {
  require_dim_match(*this, other);
  for (int i = 0; i < dim(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

DomainVector DomainVector::scaled(const Rat& factor) const {
  std::vector<Rat> out(coords_);
  for (Rat& c : out) c *= factor;
  return DomainVector(std::move(out));
}

Rat sup_norm(const DomainVector& v) {
  Rat best(0);
  for (int i = 0; i < v.dim(); ++i) {
    Rat a = rat_abs(v[i]);
    if (a > best) best = a;
  }
  return best;
}

Rat sup_dist(const DomainVector& a, const DomainVector& b) {
  require_dim_match(a, b);
  Rat best(0);
  for (int i = 0; i < a.dim(); ++i) {
    Rat d = rat_abs(Rat(a[i] - b[i]));
    if (d > best) best = d;
  }
  return best;
}

IndexTuple::IndexTuple(std::vector<int> indices) : indices_(std::move(indices)) {
  int prev = 0;
  for (int idx : indices_) {
    if (idx <= prev) throw std::invalid_argument("index tuple must be strictly increasing and >= 1");
    prev = idx;
  }
}

void IndexTuple::require_within(int n) const {
  if (!indices_.empty() && indices_.back() > n) {
    throw std::invalid_argument("index tuple entry " + std::to_string(indices_.back()) +
                                " exceeds dimension " + std::to_string(n));
  }
}

DomainVector basis_vector(int i, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (i < 1 || i > n) {
    throw std::invalid_argument("basis index " + std::to_string(i) + " out of range 1.." +
                                std::to_string(n));
  }
  std::vector<Rat> coords(n, Rat(1));
  for (int j = 2; j <= i; ++j) coords[j - 1] = Rat(-1);
  return DomainVector(std::move(coords));
}

namespace {

std::vector<IndexTuple> enumerate_tuples(int n, bool odd) {
  require_enumerable(n);
  std::vector<IndexTuple> out;
  out.reserve(std::size_t(1) << (n - 1));
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    const bool mask_odd = __builtin_popcountl(mask) % 2 == 1;
    if (mask_odd != odd) continue;
    std::vector<int> indices;
    for (int i = 1; i <= n; ++i) {
      if (mask & (1ul << (i - 1))) indices.push_back(i);
    }
    out.push_back(IndexTuple(std::move(indices)));
  }
  return out;
}

}  // namespace

std::vector<IndexTuple> enumerate_odd_tuples(int n) { return enumerate_tuples(n, true); }

std::vector<IndexTuple> enumerate_even_tuples(int n) { return enumerate_tuples(n, false); }

BasisCoefficients basis_decompose(const DomainVector& v) {
  const int n = v.dim();
  std::vector<Rat> alphas(n);
  if (n == 1) {
    alphas[0] = v[0];
    return BasisCoefficients{std::move(alphas)};
  }
  alphas[0] = Rat(v[0] + v[1]) / 2;
  for (int i = 2; i <= n - 1; ++i) alphas[i - 1] = Rat(v[i] - v[i - 1]) / 2;
  alphas[n - 1] = Rat(v[0] - v[n - 1]) / 2;
  return BasisCoefficients{std::move(alphas)};
}

DomainVector recompose(const BasisCoefficients& coeffs) {
  const int n = static_cast<int>(coeffs.alphas.size());
  if (n < 1) throw std::invalid_argument("empty coefficient list");
  DomainVector out = DomainVector::zero(n);
  for (int i = 1; i <= n; ++i) {
    const Rat& a = coeffs.alphas[i - 1];
    if (a == 0) continue;
    out += basis_vector(i, n).scaled(a);
  }
  return out;
}

bool in_O(const DomainVector& v) {
  if (v[0] != 1) return false;
  for (int i = 0; i < v.dim(); ++i) {
    if (rat_abs(v[i]) > 1) return false;
  }
  for (int i = 1; i + 1 < v.dim(); ++i) {
    if (v[i] > v[i + 1]) return false;
  }
  return true;
}

bool in_convex_hull_B(const DomainVector& v) {
  const BasisCoefficients coeffs = basis_decompose(v);
  Rat total(0);
  for (const Rat& a : coeffs.alphas) {
    if (a < 0) return false;
    total += a;
  }
  return total == 1;
}

std::vector<DomainVector> extreme_points_E1(int n) {
  require_enumerable(n);
  std::vector<DomainVector> out;
  out.reserve(std::size_t(1) << (n - 1));
  for (const IndexTuple& tuple : enumerate_odd_tuples(n)) {
    DomainVector sum = DomainVector::zero(n);
    int sign = 1;
    for (int idx : tuple.indices()) {
      const DomainVector b = basis_vector(idx, n);
      if (sign > 0) {
        sum += b;
      } else {
        sum -= b;
      }
      sign = -sign;
    }
    out.push_back(std::move(sum));
  }
  return out;
}

}  // namespace bpb
