#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpb/operator_model.hpp"

namespace bpb {

struct BpbCertificate;

/// Correction threshold for the summing-functional hypothesis.
/// rho(1, e) = e/2 and rho(n+1, e) = rho(n, e / (8 (n+2) 2^(n-1))).
Rat rho(int n, const Rat& eps);

/// Threshold for arbitrary unit functionals: rho(n, e/n)^2 / 4.
Rat gamma(int n, const Rat& eps);

/// Threshold for near-norming convex combinations: gamma(n, e)^2.
Rat nu(int n, const Rat& eps);

/// Threshold for near-norm-attainment of operators: gamma(n, e/(n+1))^2.
Rat eta(int n, const Rat& eps);

/// Sign-vector-functional threshold used by the attainment-set reduction:
/// rho(n, e) / 2.
Rat gamma_prime(int n, const Rat& eps);

/// All four moduli evaluated at one (n, eps).
struct ModulusChain {
  int n = 0;
  Rat eps, rho, gamma, nu, eta;
  static ModulusChain at(int n, const Rat& eps);
};

/// Given vectors x_1..x_m and y with 1 - r <= u*(x_i + y) and
/// ||x_i + y|| <= 1 + s, returns w with w >= y entrywise, x_i + w >= 0
/// entrywise for every i, and ||w - y|| <= m (r + s). The construction
/// (entrywise max of max(y, -x_i)) in fact gives ||w - y|| <= m (r + s) / 2.
TargetVector auxiliar_w(const std::vector<TargetVector>& xs, const TargetVector& y,
                        const Rat& r, const Rat& s);

/// One recursion level of the positive correction, kept for audit.
struct PositiveTraceLevel {
  int dim = 0;
  int n0 = 0;
  Rat eps;   // stage epsilon at this level
  Rat rho;   // rho(dim, eps)
  std::string branch;                 // "base" | "scaled_tail" | "positive_tail"
  std::optional<OperatorTuple> b;     // corrected prefix of length dim-1
  std::optional<TargetVector> a;      // positive part of the last input vector
  std::optional<TargetVector> w;      // dominating vector from auxiliar_w
};

/// Full evidence of a correction run. Every recorded value re-verifies from
/// the stored input/output tuples alone; see verify.hpp.
struct CorrectionCertificate {
  std::string kind;  // correct_positive | correct_for_functional | correct_convex
                     // | truncation_lift | ahsp_from_bpbp
  int n = 0;
  Rat epsilon;
  std::optional<OperatorTuple> input;
  std::optional<OperatorTuple> output;
  std::vector<int> attain_set;  // 1-based; {1..n0} for correct_positive
  std::map<std::string, Rat> moduli;
  std::optional<DualFunctional> functional;  // witness of the attainment norm
  std::vector<Rat> alphas;                   // convex kinds only

  // Recorded evidence.
  std::vector<Rat> closeness;                             // ||z_i - y_i|| per i
  std::vector<std::pair<IndexTuple, Rat>> alt_sum_norms;  // per odd tuple of output
  std::vector<Rat> attain_values;                         // functional value on z_i, i in A
  Rat attain_sum_norm;                                    // ||sum_{i in A} z_i||
  std::optional<Rat> coeff_mass;                          // sum_{i in A} alpha_i

  std::vector<PositiveTraceLevel> trace;

  // Kind-specific audit data.
  int rotation = 0;
  int n0_extended = 0;
  std::map<int, int> flip_signs;  // indices conjugated to -1
  std::optional<Rat> lift_t;
  int lift_m = 0;
  std::shared_ptr<const BpbCertificate> oracle_certificate;  // ahsp_from_bpbp
  std::optional<DomainVector> projected_u0;                  // ahsp_from_bpbp
  std::vector<Rat> betas;                                    // ahsp_from_bpbp
};

/// Corrects a tuple in M over l1 whose first n0 members nearly attain the
/// summing functional (u*(y_i) > 1 - rho(n, eps)) into a tuple in M with
/// ||z_i - y_i|| < eps for all i and z_i >= 0, u*(z_i) = 1 for i <= n0.
CorrectionCertificate correct_positive(const OperatorTuple& ys, int n0, const Rat& eps);

/// Same via an arbitrary sign-vector functional f with f(y_i) > 1 -
/// rho(n, eps)/2 on the attainment set: conjugates signs so f becomes the
/// summing functional, rotates until 1 lies in the set, extends the set to
/// an interval, runs correct_positive, and undoes the isometries. The output
/// satisfies ||sum_{i in A} z_i|| = |A| exactly.
CorrectionCertificate correct_for_functional(const OperatorTuple& ys,
                                             std::vector<int> attain_set,
                                             const DualFunctional& f, const Rat& eps);

/// Given convex weights with ||sum alpha_i y_i|| > 1 - nu(n, eps), selects
/// the set C of indices nearly attaining the norming sign functional and
/// corrects on it; sum_{i in C} alpha_i > 1 - eps.
std::pair<std::vector<int>, CorrectionCertificate> correct_convex(
    const OperatorTuple& ys, const std::vector<Rat>& alphas, const Rat& eps);

/// Correction through the dense chain of coordinate subspaces: scales the
/// tuple into the span of the first m coordinates, corrects there at stage
/// eps/2, and returns a certificate valid for the original vectors. The
/// hypothesis level is f(y_i) > 1 - gamma_prime(n, eps/2) on the set.
CorrectionCertificate truncation_lift(const OperatorTuple& ys, std::vector<int> attain_set,
                                      const DualFunctional& f, const Rat& eps);

}  // namespace bpb
