#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bpb/bpbp_transfer.hpp"
#include "bpb/verify.hpp"

namespace bpb {

/// Sign-vertex oracle for the operator norm: the maximum of ||apply(op, s)||
/// over all 2^n sign vectors, accumulated in Gray-code order from the
/// standard-basis columns. Independent of the odd-tuple formula.
/// Requires n <= 20 and an exact ambient.
Rat brute_norm(const OperatorTuple& op);

/// Deterministic draws; the seed fully determines every generated instance.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  int below(int bound);                    // in [0, bound)
  Rat rat_in_unit(int denominator);        // in [-1, 1]
  Rat rat_nonneg_unit(int denominator);    // in [0, 1]
  std::vector<int> permutation(int n);     // of 1..n

 private:
  std::mt19937_64 engine_;
};

struct ExperimentSpec {
  int n = 2;
  int m = 3;
  Rat eps = Rat(1, 2);
  int trials = 10;
  std::uint64_t seed = 1;
  int n0 = 0;  // 0 = drawn per instance
};

struct PositiveInstance {
  OperatorTuple ys;
  int n0;
  Rat eps;
  Rat theta;  // perturbation weight used by the generator
};

struct FunctionalInstance {
  OperatorTuple ys;
  std::vector<int> attain_set;
  DualFunctional functional;
  Rat eps;
  Rat theta;
};

struct ConvexInstance {
  OperatorTuple ys;
  std::vector<Rat> alphas;
  Rat eps;
  Rat theta;
};

struct BpbInstance {
  OperatorTuple T;
  DomainVector x0;
  Rat eps;
  Rat theta;
};

struct AuxwInstance {
  std::vector<TargetVector> xs;
  TargetVector y;
  Rat r;
  Rat s;
};

/// A nonnegative l1 vector with unit mass, support within 1..m.
TargetVector gen_unit_positive(Rng& rng, int m);

/// A random member of the operator unit ball (tuple scaled into M).
OperatorTuple gen_member_tuple(Rng& rng, int n, int m);

/// An arbitrary bounded tuple, not necessarily a member.
OperatorTuple gen_raw_tuple(Rng& rng, int n, int m);

// Every generator asserts the target operation's hypothesis before
// returning; a violation is a logic error.
PositiveInstance gen_positive_instance(Rng& rng, int n, int m, const Rat& eps, int n0 = 0);
/// hypothesis_level: instances satisfy f(y_i) > 1 - hypothesis_level on the
/// attainment set (pass gamma_prime(n, eps) for correct_for_functional,
/// gamma_prime(n, eps/2) for truncation_lift).
FunctionalInstance gen_functional_instance(Rng& rng, int n, int m, const Rat& eps,
                                           const Rat& hypothesis_level);
ConvexInstance gen_convex_instance(Rng& rng, int n, int m, const Rat& eps,
                                   const Rat& hypothesis_level);
BpbInstance gen_bpb_instance(Rng& rng, int n, int m, const Rat& eps);
AuxwInstance gen_auxw_instance(Rng& rng, int count, int m);

std::string to_json(const PositiveInstance& inst);
std::string to_json(const FunctionalInstance& inst);
std::string to_json(const ConvexInstance& inst);
std::string to_json(const BpbInstance& inst);
std::string to_json(const AuxwInstance& inst);

struct ReportRow {
  int id = 0;
  int n = 0;
  int m = 0;
  Rat eps;
  std::optional<ModulusChain> moduli;
  Rat max_dz;  // max ||z_i - y_i|| when the target corrects a tuple
  std::optional<Rat> u0_dist;
  std::optional<Rat> st_dist;
  bool pass = false;
  std::string detail;
  std::string certificate_json;  // re-verifiable payload for this row
};

struct BatchReport {
  std::string target;
  ExperimentSpec spec;
  std::vector<ReportRow> rows;
  int failures = 0;
};

/// Targets: positive | functional | convex | lift | bpbp | roundtrip |
/// auxw | norms. Rows are ordered by instance id; pass flags come from the
/// verify path, not from the runner.
BatchReport run_batch(const std::string& target, const ExperimentSpec& spec);

/// {"schema": "bpb.instances/1", ...}; instances regenerate from the spec.
std::string instances_json(const std::string& target, const ExperimentSpec& spec);

struct InstanceRunResult {
  std::string target;
  std::string certificate_json;
};

/// Runs the correction named by an instance document, or by entry `index`
/// of a "bpb.instances/1" file, and returns the resulting certificate JSON.
InstanceRunResult run_instance_file(const std::string& text, int index = 0,
                                    const std::optional<Rat>& eps_override = std::nullopt);

std::string report_json(const BatchReport& report);
std::string report_csv(const BatchReport& report);

}  // namespace bpb
