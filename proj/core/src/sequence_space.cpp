#include "bpb/sequence_space.hpp"

#include <cmath>

namespace bpb {

namespace {

class EuclideanOracle final : public NormOracle {
 public:
  double norm(const std::map<int, Rat>& entries) const override {
    double sum = 0.0;
    for (const auto& [idx, val] : entries) {
      (void)idx;
      const double x = rat_to_double(val);
      sum += x * x;
    }
    return std::sqrt(sum);
  }
  double tolerance() const override { return 1e-9; }
  std::string name() const override { return "euclid"; }
};

void require_l1(const Ambient& ambient, const char* op) {
  if (ambient.kind != Ambient::Kind::L1) {
    throw std::invalid_argument(std::string(op) + " requires the l1 ambient, got " +
                                ambient.describe());
  }
}

void require_same_ambient(const Ambient& a, const Ambient& b) {
  if (!(a == b)) {
    throw std::invalid_argument("ambient mismatch: " + a.describe() + " vs " + b.describe());
  }
}

}  // namespace

std::shared_ptr<const NormOracle> make_euclidean_oracle() {
  static const auto instance = std::make_shared<const EuclideanOracle>();
  return instance;
}

Ambient Ambient::linf(int m) {
  if (m < 1) throw std::invalid_argument("linf ambient needs m >= 1");
  Ambient a;
  a.kind = Kind::LinfM;
  a.m = m;
  return a;
}

Ambient Ambient::with_oracle(std::shared_ptr<const NormOracle> oracle) {
  if (!oracle) throw std::invalid_argument("null norm oracle");
  Ambient a;
  a.kind = Kind::Oracle;
  a.oracle = std::move(oracle);
  return a;
}

bool Ambient::operator==(const Ambient& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::LinfM) return m == other.m;
  if (kind == Kind::Oracle) return oracle->name() == other.oracle->name();
  return true;
}

std::string Ambient::describe() const {
  switch (kind) {
    case Kind::L1:
      return "l1";
    case Kind::LinfM:
      return "linf(" + std::to_string(m) + ")";
    case Kind::Oracle:
      return "oracle(" + oracle->name() + ")";
  }
  return "?";
}

TargetVector::TargetVector(Ambient ambient) : ambient_(std::move(ambient)) {}

TargetVector::TargetVector(Ambient ambient, std::map<int, Rat> entries)
    : ambient_(std::move(ambient)) {
  for (auto& [idx, val] : entries) {
    if (val != 0) set(idx, val);
  }
}

TargetVector TargetVector::unit(const Ambient& ambient, int index) {
  TargetVector v(ambient);
  v.set(index, Rat(1));
  return v;
}

void TargetVector::check_index(int index) const {
  if (index < 1) throw std::invalid_argument("target index must be >= 1");
  if (ambient_.kind == Ambient::Kind::LinfM && index > ambient_.m) {
    throw std::invalid_argument("index " + std::to_string(index) + " exceeds ambient " +
                                ambient_.describe());
  }
}

Rat TargetVector::at(int index) const {
  const auto it = entries_.find(index);
  return it == entries_.end() ? Rat(0) : it->second;
}

void TargetVector::set(int index, const Rat& value) {
  check_index(index);
  if (value == 0) {
    entries_.erase(index);
  } else {
    entries_[index] = value;
  }
}

bool TargetVector::operator==(const TargetVector& other) const {
  return ambient_ == other.ambient_ && entries_ == other.entries_;
}

TargetVector& TargetVector::operator+=(const TargetVector& other) {
  require_same_ambient(ambient_, other.ambient_);
  for (const auto& [idx, val] : other.entries_) {
    Rat sum = at(idx) + val;
    set(idx, sum);
  }
  return *this;
}

TargetVector& TargetVector::operator-=(const TargetVector& other) {
  require_same_ambient(ambient_, other.ambient_);
  for (const auto& [idx, val] : other.entries_) {
    Rat diff = at(idx) - val;
    set(idx, diff);
  }
  return *this;
}

TargetVector operator-(const TargetVector& a) { return a.scaled(Rat(-1)); }

TargetVector TargetVector::scaled(const Rat& factor) const {
  TargetVector out(ambient_);
  if (factor == 0) return out;
  for (const auto& [idx, val] : entries_) out.entries_[idx] = val * factor;
  return out;
}

bool TargetVector::entrywise_geq(const TargetVector& other) const {
  require_same_ambient(ambient_, other.ambient_);
  for (const auto& [idx, val] : entries_) {
    if (val < other.at(idx)) return false;
  }
  for (const auto& [idx, val] : other.entries_) {
    if (at(idx) < val) return false;
  }
  return true;
}

bool TargetVector::nonnegative() const {
  for (const auto& [idx, val] : entries_) {
    (void)idx;
    if (val < 0) return false;
  }
  return true;
}

Rat exact_norm(const TargetVector& v) {
  switch (v.ambient().kind) {
    case Ambient::Kind::L1: {
      Rat sum(0);
      for (const auto& [idx, val] : v.entries()) {
        (void)idx;
        sum += rat_abs(val);
      }
      return sum;
    }
    case Ambient::Kind::LinfM: {
      Rat best(0);
      for (const auto& [idx, val] : v.entries()) {
        (void)idx;
        Rat a = rat_abs(val);
        if (a > best) best = a;
      }
      return best;
    }
    case Ambient::Kind::Oracle:
      throw std::invalid_argument("exact_norm is undefined for " + v.ambient().describe());
  }
  throw std::logic_error("unhandled ambient kind");
}

NormEstimate norm_estimate(const TargetVector& v) {
  if (v.ambient().exact()) {
    return NormEstimate{exact_norm(v), true, 0.0};
  }
  const double value = v.ambient().oracle->norm(v.entries());
  return NormEstimate{Rat(value), false, v.ambient().oracle->tolerance()};
}

Rat u_star(const TargetVector& v) {
  require_l1(v.ambient(), "u_star");
  Rat sum(0);
  for (const auto& [idx, val] : v.entries()) {
    (void)idx;
    sum += val;
  }
  return sum;
}

TargetVector positive_part(const TargetVector& v) {
  require_l1(v.ambient(), "positive_part");
  TargetVector out(v.ambient());
  for (const auto& [idx, val] : v.entries()) {
    if (val > 0) out.set(idx, val);
  }
  return out;
}

TargetVector coordinate_max(const std::vector<TargetVector>& vs) {
  if (vs.empty()) throw std::invalid_argument("coordinate_max of an empty list");
  require_l1(vs.front().ambient(), "coordinate_max");
  std::set<int> support;
  for (const TargetVector& v : vs) {
    require_same_ambient(vs.front().ambient(), v.ambient());
    for (const auto& [idx, val] : v.entries()) {
      (void)val;
      support.insert(idx);
    }
  }
  // Absent entries read as 0 and take part in the maximum.
  TargetVector out(vs.front().ambient());
  for (int idx : support) {
    Rat best = vs.front().at(idx);
    for (std::size_t i = 1; i < vs.size(); ++i) {
      Rat x = vs[i].at(idx);
      if (x > best) best = x;
    }
    out.set(idx, best);
  }
  return out;
}

DualFunctional DualFunctional::summing() { return DualFunctional{}; }

DualFunctional DualFunctional::sign_vector(std::set<int> negative_indices) {
  for (int idx : negative_indices) {
    if (idx < 1) throw std::invalid_argument("functional index must be >= 1");
  }
  DualFunctional f;
  f.kind_ = Kind::SignVector;
  f.negatives_ = std::move(negative_indices);
  return f;
}

DualFunctional DualFunctional::coordinate(int index) {
  if (index < 1) throw std::invalid_argument("functional index must be >= 1");
  DualFunctional f;
  f.kind_ = Kind::Coordinate;
  f.coordinate_ = index;
  return f;
}

int DualFunctional::sign_at(int index) const {
  if (kind_ == Kind::Coordinate) {
    throw std::logic_error("sign_at is undefined for coordinate functionals");
  }
  return negatives_.count(index) ? -1 : 1;
}

Rat DualFunctional::operator()(const TargetVector& v) const {
  if (kind_ == Kind::Coordinate) return v.at(coordinate_);
  require_l1(v.ambient(), "sign-vector evaluation");
  Rat sum(0);
  for (const auto& [idx, val] : v.entries()) {
    if (sign_at(idx) > 0) {
      sum += val;
    } else {
      sum -= val;
    }
  }
  return sum;
}

bool DualFunctional::operator==(const DualFunctional& other) const {
  return kind_ == other.kind_ && negatives_ == other.negatives_ &&
         coordinate_ == other.coordinate_;
}

DualFunctional sign_functional(const TargetVector& v) {
  require_l1(v.ambient(), "sign_functional");
  std::set<int> negatives;
  for (const auto& [idx, val] : v.entries()) {
    if (val < 0) negatives.insert(idx);
  }
  return DualFunctional::sign_vector(std::move(negatives));
}

}  // namespace bpb
