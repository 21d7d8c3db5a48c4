#include "bpb/bpbp_transfer.hpp"

#include <algorithm>
#include <numeric>

#include "correction_detail.hpp"

namespace bpb {

namespace {

void require_eps(const Rat& eps) {
  if (!(eps > 0 && eps < 1)) {
    throw precondition_error("epsilon must lie in (0,1), got " + rat_to_string(eps));
  }
}

void require_l1_op(const OperatorTuple& op, const char* what) {
  if (op.ambient().kind != Ambient::Kind::L1) {
    throw std::invalid_argument(std::string(what) + " requires the l1 ambient, got " +
                                op.ambient().describe());
  }
}

}  // namespace

DomainIsometry DomainIsometry::identity(int n) {
  std::vector<int> source(n), signs(n, 1);
  std::iota(source.begin(), source.end(), 1);
  return DomainIsometry(std::move(source), std::move(signs));
}

DomainIsometry::DomainIsometry(std::vector<int> source, std::vector<int> signs)
    : source_(std::move(source)), signs_(std::move(signs)) {
  const int n = static_cast<int>(source_.size());
  if (n < 1 || signs_.size() != source_.size()) {
    throw std::invalid_argument("isometry needs matching source/sign lists, n >= 1");
  }
  std::vector<bool> seen(n, false);
  for (int s : source_) {
    if (s < 1 || s > n || seen[s - 1]) {
      throw std::invalid_argument("isometry source is not a permutation of 1..n");
    }
    seen[s - 1] = true;
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("isometry signs must be +1 or -1");
  }
}

DomainVector DomainIsometry::apply(const DomainVector& x) const {
  if (x.dim() != dim()) throw std::invalid_argument("isometry dimension mismatch");
  DomainVector out = DomainVector::zero(dim());
  for (int i = 0; i < dim(); ++i) {
    Rat value = x[source_[i] - 1];
    if (signs_[i] < 0) value = -value;
    out.set(i, value);
  }
  return out;
}

DomainIsometry DomainIsometry::inverse() const {
  std::vector<int> source(dim()), signs(dim());
  for (int i = 0; i < dim(); ++i) {
    source[source_[i] - 1] = i + 1;
    signs[source_[i] - 1] = signs_[i];
  }
  return DomainIsometry(std::move(source), std::move(signs));
}

DomainIsometry DomainIsometry::compose_after(const DomainIsometry& inner) const {
  if (inner.dim() != dim()) throw std::invalid_argument("isometry dimension mismatch");
  std::vector<int> source(dim()), signs(dim());
  for (int i = 0; i < dim(); ++i) {
    source[i] = inner.source_[source_[i] - 1];
    signs[i] = signs_[i] * inner.signs_[source_[i] - 1];
  }
  return DomainIsometry(std::move(source), std::move(signs));
}

OperatorTuple precompose(const OperatorTuple& op, const DomainIsometry& g) {
  if (g.dim() != op.domain_dim()) throw std::invalid_argument("precompose dimension mismatch");
  std::vector<TargetVector> images;
  images.reserve(op.domain_dim());
  for (int i = 1; i <= op.domain_dim(); ++i) {
    images.push_back(apply(op, g.apply(basis_vector(i, op.domain_dim()))));
  }
  return OperatorTuple(std::move(images));
}

DomainVector face_project(const OperatorTuple& op, const DomainVector& y,
                          const DomainVector& x, const Rat& eps) {
  require_eps(eps);
  const int n = op.domain_dim();
  if (y.dim() != n || x.dim() != n) throw std::invalid_argument("face_project dimension mismatch");
  if (operator_norm(op) != 1) {
    throw precondition_error("face_project: operator norm must be exactly 1");
  }
  if (sup_norm(y) != 1) throw precondition_error("face_project: y must have sup-norm 1");
  if (exact_norm(apply(op, y)) != 1) {
    throw precondition_error("face_project: the operator does not attain its norm at y");
  }
  if (!in_convex_hull_B(x)) {
    throw precondition_error("face_project: x lies outside the basis hull");
  }
  const Rat gap = sup_dist(y, x);
  if (!(gap < eps)) {
    throw precondition_error("face_project: ||y - x|| = " + rat_to_string(gap) +
                             " >= epsilon = " + rat_to_string(eps));
  }

  int last_minus = 1;   // max index with y = -1, at least 1
  int first_plus = n + 1;  // min index >= 2 with y = +1
  for (int i = 2; i <= n; ++i) {
    if (y[i - 1] == -1) last_minus = i;
    if (y[i - 1] == 1 && first_plus == n + 1) first_plus = i;
  }

  DomainVector z = DomainVector::zero(n);
  z.set(0, Rat(1));
  for (int i = 2; i <= n; ++i) {
    if (i <= last_minus) {
      z.set(i - 1, Rat(-1));
    } else if (i < first_plus) {
      z.set(i - 1, x[i - 1]);
    } else {
      z.set(i - 1, Rat(1));
    }
  }

  if (!in_convex_hull_B(z)) {
    throw std::logic_error("face_project: output left the basis hull");
  }
  if (exact_norm(apply(op, z)) != 1) {
    throw std::logic_error("face_project: output lost norm attainment");
  }
  if (!(sup_dist(z, x) < eps)) {
    throw std::logic_error("face_project: output drifted from x");
  }
  return z;
}

std::pair<DomainIsometry, DomainVector> normalize_to_O(const DomainVector& x0) {
  if (sup_norm(x0) != 1) {
    throw precondition_error("normalize_to_O: input must have sup-norm exactly 1");
  }
  const int n = x0.dim();

  int pivot = 0;  // first modulus-one coordinate, 1-based
  for (int i = 1; i <= n; ++i) {
    if (rat_abs(x0[i - 1]) == 1) {
      pivot = i;
      break;
    }
  }

  std::vector<int> source(n), signs(n, 1);
  std::iota(source.begin(), source.end(), 1);
  std::swap(source[0], source[pivot - 1]);
  if (x0[pivot - 1] < 0) signs[0] = -1;

  const DomainIsometry first_stage(source, signs);
  const DomainVector staged = first_stage.apply(x0);

  std::vector<int> order(n - 1);
  std::iota(order.begin(), order.end(), 1);  // slots 2..n as 0-based 1..n-1
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return staged[a] < staged[b]; });

  std::vector<int> sorted_source(n), sorted_signs(n, 1);
  sorted_source[0] = 1;
  for (int i = 1; i < n; ++i) sorted_source[i] = order[i - 1] + 1;
  const DomainIsometry sort_stage(std::move(sorted_source), std::move(sorted_signs));

  DomainIsometry full = sort_stage.compose_after(first_stage);
  DomainVector image = full.apply(x0);
  if (!in_O(image)) throw std::logic_error("normalize_to_O: image left the monotone cone");
  return {std::move(full), std::move(image)};
}

BpbCertificate bpbp_correct(const OperatorTuple& T, const DomainVector& x0, const Rat& eps) {
  require_l1_op(T, "bpbp_correct");
  require_eps(eps);
  const int n = T.domain_dim();
  if (x0.dim() != n) throw std::invalid_argument("bpbp_correct dimension mismatch");
  if (operator_norm(T) != 1) {
    throw precondition_error("bpbp_correct: operator norm must be exactly 1, got " +
                             rat_to_string(operator_norm(T)));
  }
  if (sup_norm(x0) != 1) {
    throw precondition_error("bpbp_correct: x0 must have sup-norm exactly 1");
  }
  const Rat eta_n = eta(n, eps);
  const Rat achieved = exact_norm(apply(T, x0));
  if (!(achieved > 1 - eta_n)) {
    throw precondition_error("bpbp_correct: hypothesis gap, ||T(x0)|| = " +
                             rat_to_string(achieved) + " <= 1 - eta = " +
                             rat_to_string(Rat(1 - eta_n)));
  }

  auto [iso, x0_normalized] = normalize_to_O(x0);
  const OperatorTuple T_normalized = precompose(T, iso.inverse());
  const std::vector<Rat> alphas = basis_decompose(x0_normalized).alphas;

  const Rat stage = eps / (n + 1);
  auto [selected, inner] = correct_convex(T_normalized, alphas, stage);

  Rat mass(0);
  for (int idx : selected) mass += alphas[idx - 1];
  BasisCoefficients u0_coeffs{std::vector<Rat>(n, Rat(0))};
  for (int idx : selected) u0_coeffs.alphas[idx - 1] = alphas[idx - 1] / mass;
  const DomainVector u0_normalized = recompose(u0_coeffs);

  const OperatorTuple S = precompose(OperatorTuple(inner.output->images()), iso);
  const DomainVector u0 = iso.inverse().apply(u0_normalized);

  BpbCertificate cert;
  cert.n = n;
  cert.epsilon = eps;
  cert.eta = eta_n;
  cert.input_op = T;
  cert.x0 = x0;
  cert.output_op = S;
  cert.u0 = u0;
  cert.isometry = iso;
  cert.alphas = alphas;
  cert.attain_set = selected;
  cert.inner = std::make_shared<const CorrectionCertificate>(std::move(inner));

  cert.s_norm = operator_norm(S);
  cert.su0_norm = exact_norm(apply(S, u0));
  cert.u0_dist = sup_dist(u0, x0);
  cert.st_dist = operator_norm(difference(S, T));
  if (cert.s_norm != 1 || cert.su0_norm != 1) {
    throw std::logic_error("bpbp_correct: output does not attain norm one");
  }
  if (!(cert.u0_dist < eps) || !(cert.st_dist < eps)) {
    throw std::logic_error("bpbp_correct: output drifted beyond epsilon");
  }
  return cert;
}

std::pair<std::vector<int>, CorrectionCertificate> ahsp_from_bpbp(
    const BpbOracle& oracle, const OperatorTuple& ys, const std::vector<Rat>& alphas,
    const Rat& eps) {
  require_l1_op(ys, "ahsp_from_bpbp");
  require_eps(eps);
  const int n = ys.domain_dim();
  if (static_cast<int>(alphas.size()) != n) {
    throw std::invalid_argument("ahsp_from_bpbp: weight count differs from n");
  }
  Rat total(0);
  for (const Rat& a : alphas) {
    if (a < 0) throw std::invalid_argument("ahsp_from_bpbp: negative convex weight");
    total += a;
  }
  if (total != 1) throw std::invalid_argument("ahsp_from_bpbp: weights must sum to 1");
  detail::check_membership(ys, "ahsp_from_bpbp");

  const Rat stage = eps / (n + 1);
  const Rat threshold = eta(n, stage);
  const DomainVector x0 = recompose(BasisCoefficients{alphas});
  const Rat achieved = exact_norm(apply(ys, x0));
  if (!(achieved > 1 - threshold)) {
    throw precondition_error("ahsp_from_bpbp: hypothesis gap, ||sum alpha_i y_i|| = " +
                             rat_to_string(achieved) + " <= 1 - eta(n, eps/(n+1)) = " +
                             rat_to_string(Rat(1 - threshold)));
  }

  const Rat t_norm = operator_norm(ys);
  const OperatorTuple unit_op = t_norm == 1 ? ys : scale(ys, Rat(1) / t_norm);
  BpbCertificate oracle_cert = oracle(unit_op, x0, stage);
  if (!oracle_cert.output_op || !oracle_cert.u0) {
    throw std::runtime_error("ahsp_from_bpbp: oracle returned an incomplete certificate");
  }
  const OperatorTuple& S = *oracle_cert.output_op;
  const DomainVector& u0 = *oracle_cert.u0;

  const DomainVector projected = face_project(S, u0, x0, stage);
  const std::vector<Rat> betas = basis_decompose(projected).alphas;
  std::vector<int> selected;
  Rat mass(0);
  for (int i = 0; i < n; ++i) {
    if (betas[i] != 0) {
      selected.push_back(i + 1);
      mass += alphas[i];
    }
  }
  if (!(mass > 1 - eps)) {
    throw std::logic_error("ahsp_from_bpbp: selected weight mass " + rat_to_string(mass) +
                           " <= 1 - epsilon");
  }

  CorrectionCertificate cert = detail::base_cert(
      "ahsp_from_bpbp", ys, OperatorTuple(S.images()), selected, eps);
  cert.moduli["eta_stage"] = threshold;
  cert.alphas = alphas;
  cert.betas = betas;
  cert.coeff_mass = mass;
  cert.projected_u0 = projected;
  cert.functional = sign_functional(apply(S, projected));
  cert.oracle_certificate = std::make_shared<const BpbCertificate>(std::move(oracle_cert));
  detail::finalize_correction(cert, /*require_positive=*/false);
  return {std::move(selected), std::move(cert)};
}

}  // namespace bpb
