#include "bpb/operator_model.hpp"

#include <algorithm>
#include <string>

namespace bpb {

namespace {

void require_exact(const OperatorTuple& op, const char* what) {
  if (!op.ambient().exact()) {
    throw std::invalid_argument(std::string(what) + " requires an exact ambient, got " +
                                op.ambient().describe());
  }
}

// Dense evaluation state over the union of the image supports. Walks every
// nonempty increasing tuple once, adding one image per tree node and taking
// the norm at odd depths.
class AlternatingSumScan {
 public:
  explicit AlternatingSumScan(const OperatorTuple& op)
      : n_(op.domain_dim()), l1_(op.ambient().kind == Ambient::Kind::L1) {
    std::vector<int> support;
    for (const TargetVector& img : op.images()) {
      for (const auto& [idx, val] : img.entries()) {
        (void)val;
        support.push_back(idx);
      }
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const int u = static_cast<int>(support.size());
    dense_.assign(n_, std::vector<Rat>(u, Rat(0)));
    for (int i = 0; i < n_; ++i) {
      for (const auto& [idx, val] : op.image(i).entries()) {
        const int col = static_cast<int>(
            std::lower_bound(support.begin(), support.end(), idx) - support.begin());
        dense_[i][col] = val;
      }
    }
    acc_.assign(u, Rat(0));
  }

  Rat max_odd_norm() {
    best_ = 0;
    walk(0, +1, 0);
    return best_;
  }

 private:
  void walk(int start, int sign, int depth) {
    for (int i = start; i < n_; ++i) {
      add(i, sign);
      if ((depth + 1) % 2 == 1) {
        Rat norm = current_norm();
        if (norm > best_) best_ = norm;
      }
      walk(i + 1, -sign, depth + 1);
      add(i, -sign);
    }
  }

  void add(int image, int sign) {
    const std::vector<Rat>& row = dense_[image];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (sign > 0) {
        acc_[c] += row[c];
      } else {
        acc_[c] -= row[c];
      }
    }
  }

  Rat current_norm() const {
    Rat out(0);
    if (l1_) {
      for (const Rat& x : acc_) out += rat_abs(x);
    } else {
      for (const Rat& x : acc_) {
        Rat a = rat_abs(x);
        if (a > out) out = a;
      }
    }
    return out;
  }

  int n_;
  bool l1_;
  std::vector<std::vector<Rat>> dense_;
  std::vector<Rat> acc_;
  Rat best_;
};

}  // namespace

OperatorTuple::OperatorTuple(std::vector<TargetVector> images) : images_(std::move(images)) {
  if (images_.empty()) throw std::invalid_argument("operator tuple needs n >= 1 images");
  for (const TargetVector& img : images_) {
    if (!(img.ambient() == images_.front().ambient())) {
      throw std::invalid_argument("operator images must share one ambient");
    }
  }
}

TargetVector alternating_sum(const OperatorTuple& op, const IndexTuple& tuple) {
  tuple.require_within(op.domain_dim());
  TargetVector sum(op.ambient());
  int sign = 1;
  for (int idx : tuple.indices()) {
    if (sign > 0) {
      sum += op.image(idx - 1);
    } else {
      sum -= op.image(idx - 1);
    }
    sign = -sign;
  }
  return sum;
}

Rat operator_norm(const OperatorTuple& op) {
  require_exact(op, "operator_norm");
  AlternatingSumScan scan(op);
  return scan.max_odd_norm();
}

NormEstimate operator_norm_estimate(const OperatorTuple& op) {
  if (op.ambient().exact()) {
    return NormEstimate{operator_norm(op), true, 0.0};
  }
  const NormOracle& oracle = *op.ambient().oracle;
  double best = 0.0;
  for (const IndexTuple& tuple : enumerate_odd_tuples(op.domain_dim())) {
    const double value = oracle.norm(alternating_sum(op, tuple).entries());
    if (value > best) best = value;
  }
  return NormEstimate{Rat(best), false, oracle.tolerance()};
}

bool in_M(const OperatorTuple& op) { return operator_norm(op) <= 1; }

TargetVector apply(const OperatorTuple& op, const DomainVector& x) {
  if (x.dim() != op.domain_dim()) {
    throw std::invalid_argument("apply: dimension mismatch (" + std::to_string(x.dim()) +
                                " vs " + std::to_string(op.domain_dim()) + ")");
  }
  const BasisCoefficients coeffs = basis_decompose(x);
  TargetVector out(op.ambient());
  for (int i = 0; i < op.domain_dim(); ++i) {
    const Rat& a = coeffs.alphas[i];
    if (a == 0) continue;
    out += op.image(i).scaled(a);
  }
  return out;
}

OperatorTuple from_standard_images(const std::vector<TargetVector>& cols) {
  if (cols.empty()) throw std::invalid_argument("from_standard_images needs n >= 1 columns");
  const int n = static_cast<int>(cols.size());
  std::vector<TargetVector> images;
  images.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const DomainVector v = basis_vector(i, n);
    TargetVector img(cols.front().ambient());
    for (int j = 0; j < n; ++j) {
      if (v[j] == 1) {
        img += cols[j];
      } else {
        img -= cols[j];
      }
    }
    images.push_back(std::move(img));
  }
  return OperatorTuple(std::move(images));
}

OperatorTuple tau(const OperatorTuple& op) {
  std::vector<TargetVector> images;
  images.reserve(op.domain_dim());
  for (int i = 1; i < op.domain_dim(); ++i) images.push_back(op.image(i));
  images.push_back(-op.image(0));
  return OperatorTuple(std::move(images));
}

OperatorTuple tau_pow(const OperatorTuple& op, int k) {
  if (k < 0) throw std::invalid_argument("tau_pow needs k >= 0");
  const int period = 2 * op.domain_dim();
  OperatorTuple out = op;
  for (int step = 0; step < k % period; ++step) out = tau(out);
  return out;
}

OperatorTuple scale(const OperatorTuple& op, const Rat& factor) {
  std::vector<TargetVector> images;
  images.reserve(op.domain_dim());
  for (const TargetVector& img : op.images()) images.push_back(img.scaled(factor));
  return OperatorTuple(std::move(images));
}

OperatorTuple difference(const OperatorTuple& a, const OperatorTuple& b) {
  if (a.domain_dim() != b.domain_dim()) {
    throw std::invalid_argument("difference: dimension mismatch");
  }
  std::vector<TargetVector> images;
  images.reserve(a.domain_dim());
  for (int i = 0; i < a.domain_dim(); ++i) images.push_back(a.image(i) - b.image(i));
  return OperatorTuple(std::move(images));
}

OperatorTuple combine(const OperatorTuple& a, const Rat& wa, const OperatorTuple& b,
                      const Rat& wb) {
  if (a.domain_dim() != b.domain_dim()) {
    throw std::invalid_argument("combine: dimension mismatch");
  }
  std::vector<TargetVector> images;
  images.reserve(a.domain_dim());
  for (int i = 0; i < a.domain_dim(); ++i) {
    images.push_back(a.image(i).scaled(wa) + b.image(i).scaled(wb));
  }
  return OperatorTuple(std::move(images));
}

TargetVector flip_signs(const TargetVector& v, const std::set<int>& negatives) {
  TargetVector out(v.ambient());
  for (const auto& [idx, val] : v.entries()) {
    out.set(idx, negatives.count(idx) ? Rat(-val) : val);
  }
  return out;
}

OperatorTuple flip_signs(const OperatorTuple& op, const std::set<int>& negatives) {
  std::vector<TargetVector> images;
  images.reserve(op.domain_dim());
  for (const TargetVector& img : op.images()) images.push_back(flip_signs(img, negatives));
  return OperatorTuple(std::move(images));
}

}  // namespace bpb
