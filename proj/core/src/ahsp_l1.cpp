#include "bpb/ahsp_l1.hpp"

#include <algorithm>

#include "correction_detail.hpp"

namespace bpb {

namespace detail {

std::string tuple_to_string(const IndexTuple& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.indices().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(tuple.indices()[i]);
  }
  return out + ")";
}

void check_membership(const OperatorTuple& ys, const char* what) {
  for (const IndexTuple& tuple : enumerate_odd_tuples(ys.domain_dim())) {
    const Rat norm = exact_norm(alternating_sum(ys, tuple));
    if (norm > 1) {
      throw precondition_error(std::string(what) + ": membership failure, alternating sum " +
                               tuple_to_string(tuple) + " has norm " + rat_to_string(norm));
    }
  }
}

}  // namespace detail

namespace {

using detail::check_membership;
using detail::tuple_to_string;

void require_eps(const Rat& eps) {
  if (!(eps > 0 && eps < 1)) {
    throw precondition_error("epsilon must lie in (0,1), got " + rat_to_string(eps));
  }
}

void require_dim(int n) {
  if (n < 1 || n > 60) throw std::invalid_argument("dimension must lie in 1..60");
}

void require_l1_op(const OperatorTuple& op, const char* what) {
  if (op.ambient().kind != Ambient::Kind::L1) {
    throw std::invalid_argument(std::string(what) + " requires the l1 ambient, got " +
                                op.ambient().describe());
  }
}

Rat pow2(int k) { return Rat(mpz_class(1) << k); }

std::vector<int> normalize_attain_set(std::vector<int> set, int n, const char* what) {
  if (set.empty()) throw std::invalid_argument(std::string(what) + ": empty attainment set");
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.front() < 1 || set.back() > n) {
    throw std::invalid_argument(std::string(what) + ": attainment index out of range 1.." +
                                std::to_string(n));
  }
  return set;
}

struct PositiveResult {
  std::vector<TargetVector> z;
  std::vector<PositiveTraceLevel> trace;  // outermost level first
};

// Recursive core; hypotheses are validated once by the public entry points.
PositiveResult positive_correct_rec(const std::vector<TargetVector>& ys, int n0,
                                    const Rat& eps) {
  const int dim = static_cast<int>(ys.size());
  PositiveTraceLevel level;
  level.dim = dim;
  level.n0 = n0;
  level.eps = eps;
  level.rho = rho(dim, eps);

  if (dim == 1) {
    const TargetVector a = positive_part(ys[0]);
    TargetVector z = a;
    z.set(1, a.at(1) + (1 - exact_norm(a)));
    level.branch = "base";
    level.a = a;
    PositiveResult out;
    out.z.push_back(std::move(z));
    out.trace.push_back(std::move(level));
    return out;
  }

  const int prev = dim - 1;
  const Rat stage = eps / (Rat(8 * (dim + 1)) * pow2(prev - 1));
  PositiveResult sub = positive_correct_rec(
      std::vector<TargetVector>(ys.begin(), ys.begin() + prev), std::min(n0, prev), stage);

  const Rat shrink = Rat(1) / (1 + eps / 8);
  const Rat topup = 1 - shrink;
  std::vector<TargetVector> z;
  z.reserve(dim);
  for (int i = 0; i < prev; ++i) {
    TargetVector zi = sub.z[i].scaled(shrink);
    zi.set(1, zi.at(1) + topup);
    z.push_back(std::move(zi));
  }

  const OperatorTuple prefix(sub.z);
  if (n0 < dim) {
    level.branch = "scaled_tail";
    z.push_back(ys[dim - 1].scaled(shrink));
  } else {
    level.branch = "positive_tail";
    const TargetVector a = positive_part(ys[dim - 1]);
    level.a = a;
    std::vector<TargetVector> xs;
    for (const IndexTuple& tuple : enumerate_even_tuples(prev)) {
      xs.push_back(alternating_sum(prefix, tuple));
    }
    const TargetVector w = auxiliar_w(xs, a, stage, Rat(dim) * stage);
    level.w = w;
    TargetVector z_last = w.scaled(shrink);
    z_last.set(1, z_last.at(1) + (1 - exact_norm(w) * shrink));
    z.push_back(std::move(z_last));
  }

  level.b = prefix;
  PositiveResult out;
  out.z = std::move(z);
  out.trace.push_back(std::move(level));
  for (PositiveTraceLevel& inner : sub.trace) out.trace.push_back(std::move(inner));
  return out;
}

}  // namespace

namespace detail {

CorrectionCertificate base_cert(std::string kind, const OperatorTuple& input,
                                OperatorTuple output, std::vector<int> attain_set,
                                const Rat& eps) {
  CorrectionCertificate cert;
  cert.kind = std::move(kind);
  cert.n = input.domain_dim();
  cert.epsilon = eps;
  cert.input = input;
  cert.output = std::move(output);
  cert.attain_set = std::move(attain_set);
  return cert;
}

// Recomputes and records every claimed inequality; the corrections are
// theorems, so a failure here is an implementation bug.
void finalize_correction(CorrectionCertificate& cert, bool require_positive) {
  const OperatorTuple& in = *cert.input;
  const OperatorTuple& out = *cert.output;
  cert.closeness.clear();
  cert.alt_sum_norms.clear();
  cert.attain_values.clear();
  for (int i = 0; i < cert.n; ++i) {
    Rat d = exact_norm(out.image(i) - in.image(i));
    if (!(d < cert.epsilon)) {
      throw std::logic_error(cert.kind + ": ||z_" + std::to_string(i + 1) +
                             " - y_" + std::to_string(i + 1) + "|| = " + rat_to_string(d) +
                             " >= epsilon");
    }
    cert.closeness.push_back(std::move(d));
  }
  for (const IndexTuple& tuple : enumerate_odd_tuples(cert.n)) {
    Rat norm = exact_norm(alternating_sum(out, tuple));
    if (norm > 1) {
      throw std::logic_error(cert.kind + ": output left the unit ball on " +
                             tuple_to_string(tuple));
    }
    cert.alt_sum_norms.emplace_back(tuple, std::move(norm));
  }
  const DualFunctional& f = *cert.functional;
  TargetVector attain_sum(out.ambient());
  for (int idx : cert.attain_set) {
    const TargetVector& z = out.image(idx - 1);
    Rat value = f(z);
    if (value != 1) {
      throw std::logic_error(cert.kind + ": functional value at z_" + std::to_string(idx) +
                             " is " + rat_to_string(value) + ", not 1");
    }
    if (require_positive && !z.nonnegative()) {
      throw std::logic_error(cert.kind + ": z_" + std::to_string(idx) + " has a negative entry");
    }
    cert.attain_values.push_back(std::move(value));
    attain_sum += z;
  }
  cert.attain_sum_norm = exact_norm(attain_sum);
  if (cert.attain_sum_norm != Rat(static_cast<int>(cert.attain_set.size()))) {
    throw std::logic_error(cert.kind + ": attainment sum norm " +
                           rat_to_string(cert.attain_sum_norm) + " differs from |A|");
  }
}

}  // namespace detail

namespace {

using detail::base_cert;
using detail::finalize_correction;

}  // namespace

Rat rho(int n, const Rat& eps) {
  require_dim(n);
  require_eps(eps);
  Rat e = eps;
  for (int d = n; d >= 2; --d) e /= Rat(8 * (d + 1)) * pow2(d - 2);
  return e / 2;
}

Rat gamma(int n, const Rat& eps) {
  require_dim(n);
  require_eps(eps);
  const Rat r = rho(n, eps / n);
  return r * r / 4;
}

Rat nu(int n, const Rat& eps) {
  const Rat g = gamma(n, eps);
  return g * g;
}

Rat eta(int n, const Rat& eps) {
  require_dim(n);
  require_eps(eps);
  const Rat g = gamma(n, eps / (n + 1));
  return g * g;
}

Rat gamma_prime(int n, const Rat& eps) { return rho(n, eps) / 2; }

ModulusChain ModulusChain::at(int n, const Rat& eps) {
  ModulusChain chain;
  chain.n = n;
  chain.eps = eps;
  chain.rho = bpb::rho(n, eps);
  chain.gamma = bpb::gamma(n, eps);
  chain.nu = bpb::nu(n, eps);
  chain.eta = bpb::eta(n, eps);
  return chain;
}

TargetVector auxiliar_w(const std::vector<TargetVector>& xs, const TargetVector& y,
                        const Rat& r, const Rat& s) {
  if (xs.empty()) throw std::invalid_argument("auxiliar_w needs at least one x");
  if (r < 0 || s < 0) throw std::invalid_argument("auxiliar_w needs r, s >= 0");
  if (y.ambient().kind != Ambient::Kind::L1) {
    throw std::invalid_argument("auxiliar_w requires the l1 ambient");
  }
  const Rat lower = 1 - r;
  const Rat upper = 1 + s;
  std::vector<TargetVector> singles;
  singles.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const TargetVector xy = xs[i] + y;
    const Rat mass = u_star(xy);
    if (mass < lower) {
      throw precondition_error("auxiliar_w: u*(x_" + std::to_string(i + 1) +
                               " + y) = " + rat_to_string(mass) + " < 1 - r = " +
                               rat_to_string(lower));
    }
    const Rat norm = exact_norm(xy);
    if (norm > upper) {
      throw precondition_error("auxiliar_w: ||x_" + std::to_string(i + 1) +
                               " + y|| = " + rat_to_string(norm) + " > 1 + s = " +
                               rat_to_string(upper));
    }
    singles.push_back(coordinate_max({y, -xs[i]}));
  }
  return coordinate_max(singles);
}

CorrectionCertificate correct_positive(const OperatorTuple& ys, int n0, const Rat& eps) {
  require_l1_op(ys, "correct_positive");
  require_eps(eps);
  const int n = ys.domain_dim();
  if (n0 < 1 || n0 > n) {
    throw std::invalid_argument("correct_positive: n0 must lie in 1.." + std::to_string(n));
  }
  check_membership(ys, "correct_positive");
  const Rat rho_n = rho(n, eps);
  const Rat threshold = 1 - rho_n;
  for (int i = 0; i < n0; ++i) {
    const Rat mass = u_star(ys.image(i));
    if (!(mass > threshold)) {
      throw precondition_error("correct_positive: hypothesis gap, u*(y_" +
                               std::to_string(i + 1) + ") = " + rat_to_string(mass) +
                               " <= 1 - rho = " + rat_to_string(threshold));
    }
  }

  PositiveResult result = positive_correct_rec(ys.images(), n0, eps);
  std::vector<int> attain(n0);
  for (int i = 0; i < n0; ++i) attain[i] = i + 1;
  CorrectionCertificate cert =
      base_cert("correct_positive", ys, OperatorTuple(std::move(result.z)), std::move(attain), eps);
  cert.moduli["rho"] = rho_n;
  cert.functional = DualFunctional::summing();
  cert.trace = std::move(result.trace);
  finalize_correction(cert, /*require_positive=*/true);
  return cert;
}

CorrectionCertificate correct_for_functional(const OperatorTuple& ys,
                                             std::vector<int> attain_set,
                                             const DualFunctional& f, const Rat& eps) {
  require_l1_op(ys, "correct_for_functional");
  require_eps(eps);
  const int n = ys.domain_dim();
  attain_set = normalize_attain_set(std::move(attain_set), n, "correct_for_functional");
  if (f.kind() == DualFunctional::Kind::Coordinate) {
    throw std::invalid_argument(
        "correct_for_functional needs a summing or sign-vector functional");
  }
  check_membership(ys, "correct_for_functional");

  const Rat rho_n = rho(n, eps);
  const Rat gp = gamma_prime(n, eps);
  const Rat threshold = 1 - gp;
  for (int idx : attain_set) {
    const Rat value = f(ys.image(idx - 1));
    if (!(value > threshold)) {
      throw precondition_error("correct_for_functional: hypothesis gap, f(y_" +
                               std::to_string(idx) + ") = " + rat_to_string(value) +
                               " <= 1 - rho/2 = " + rat_to_string(threshold));
    }
  }

  const std::set<int> negatives =
      f.kind() == DualFunctional::Kind::SignVector ? f.negative_indices() : std::set<int>{};
  const OperatorTuple flipped = flip_signs(ys, negatives);

  const int rotation = attain_set.front() - 1;
  const OperatorTuple rotated = tau_pow(flipped, rotation);
  const int n0 = attain_set.back() - rotation;

  // The two hypothesis indices sandwiching every gap force the summing
  // functional above 1 - rho on the whole interval 1..n0.
  const Rat interval_threshold = 1 - rho_n;
  for (int i = 0; i < n0; ++i) {
    const Rat mass = u_star(rotated.image(i));
    if (!(mass > interval_threshold)) {
      throw std::logic_error("correct_for_functional: interval extension failed at slot " +
                             std::to_string(i + 1));
    }
  }

  PositiveResult result = positive_correct_rec(rotated.images(), n0, eps);
  const OperatorTuple unrotated =
      tau_pow(OperatorTuple(std::move(result.z)), 2 * n - rotation);
  OperatorTuple output = flip_signs(unrotated, negatives);

  CorrectionCertificate cert =
      base_cert("correct_for_functional", ys, std::move(output), attain_set, eps);
  cert.moduli["rho"] = rho_n;
  cert.moduli["gamma_prime"] = gp;
  cert.functional = f;
  cert.rotation = rotation;
  cert.n0_extended = n0;
  for (int idx : negatives) cert.flip_signs[idx] = -1;
  cert.trace = std::move(result.trace);
  finalize_correction(cert, /*require_positive=*/false);
  return cert;
}

std::pair<std::vector<int>, CorrectionCertificate> correct_convex(
    const OperatorTuple& ys, const std::vector<Rat>& alphas, const Rat& eps) {
  require_l1_op(ys, "correct_convex");
  require_eps(eps);
  const int n = ys.domain_dim();
  if (static_cast<int>(alphas.size()) != n) {
    throw std::invalid_argument("correct_convex: weight count differs from n");
  }
  Rat total(0);
  for (const Rat& a : alphas) {
    if (a < 0) throw std::invalid_argument("correct_convex: negative convex weight");
    total += a;
  }
  if (total != 1) throw std::invalid_argument("correct_convex: weights must sum to 1");
  check_membership(ys, "correct_convex");

  TargetVector combination(ys.ambient());
  for (int i = 0; i < n; ++i) {
    if (alphas[i] != 0) combination += ys.image(i).scaled(alphas[i]);
  }
  const Rat achieved = exact_norm(combination);
  const Rat nu_n = nu(n, eps);
  if (!(achieved > 1 - nu_n)) {
    throw precondition_error("correct_convex: hypothesis gap, ||sum alpha_i y_i|| = " +
                             rat_to_string(achieved) + " <= 1 - nu = " +
                             rat_to_string(Rat(1 - nu_n)));
  }

  // The sign functional of the combination norms it exactly, so no
  // replacement of (y_i) by (-y_i) can raise the value.
  const DualFunctional f = sign_functional(combination);
  const Rat gp = gamma_prime(n, eps);
  std::vector<int> selected;
  Rat mass(0);
  for (int i = 0; i < n; ++i) {
    if (f(ys.image(i)) > 1 - gp) {
      selected.push_back(i + 1);
      mass += alphas[i];
    }
  }
  if (selected.empty()) {
    throw std::logic_error("correct_convex: empty attainment set despite the hypothesis");
  }
  if (!(mass > 1 - eps)) {
    throw std::logic_error("correct_convex: selected weight mass " + rat_to_string(mass) +
                           " <= 1 - epsilon");
  }

  CorrectionCertificate cert = correct_for_functional(ys, selected, f, eps);
  cert.kind = "correct_convex";
  cert.alphas = alphas;
  cert.coeff_mass = mass;
  cert.moduli["nu"] = nu_n;
  return {std::move(selected), std::move(cert)};
}

CorrectionCertificate truncation_lift(const OperatorTuple& ys, std::vector<int> attain_set,
                                      const DualFunctional& f, const Rat& eps) {
  require_l1_op(ys, "truncation_lift");
  require_eps(eps);
  const int n = ys.domain_dim();
  attain_set = normalize_attain_set(std::move(attain_set), n, "truncation_lift");
  if (f.kind() == DualFunctional::Kind::Coordinate) {
    throw std::invalid_argument("truncation_lift needs a summing or sign-vector functional");
  }
  check_membership(ys, "truncation_lift");

  const Rat stage_eps = eps / 2;
  const Rat level = gamma_prime(n, stage_eps);
  Rat min_slack;
  bool first = true;
  for (int idx : attain_set) {
    const Rat value = f(ys.image(idx - 1));
    const Rat slack = value - (1 - level);
    if (!(slack > 0)) {
      throw precondition_error("truncation_lift: hypothesis gap, f(y_" + std::to_string(idx) +
                               ") = " + rat_to_string(value) + " <= 1 - gamma_prime(eps/2) = " +
                               rat_to_string(Rat(1 - level)));
    }
    if (first || slack < min_slack) {
      min_slack = slack;
      first = false;
    }
  }

  const Rat bound = std::min(stage_eps, min_slack) / (n + 1);
  const Rat t = bound / 2;
  int m = 1;
  for (const TargetVector& img : ys.images()) m = std::max(m, img.max_support_index());

  const OperatorTuple scaled_ys = scale(ys, Rat(1) / (1 + Rat(n) * t));
  CorrectionCertificate cert = correct_for_functional(scaled_ys, attain_set, f, stage_eps);
  cert.kind = "truncation_lift";
  cert.epsilon = eps;
  cert.input = ys;
  cert.lift_t = t;
  cert.lift_m = m;
  finalize_correction(cert, /*require_positive=*/false);
  return cert;
}

}  // namespace bpb
