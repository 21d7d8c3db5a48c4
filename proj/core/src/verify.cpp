#include "bpb/verify.hpp"

#include <cmath>

#include "bpb/harness.hpp"
#include "correction_detail.hpp"
#include "json_detail.hpp"

namespace bpb {

namespace {

struct Value {
  Rat v;
  bool exact = true;
  double tol = 0.0;
};

Value value_of(const NormEstimate& e) { return Value{e.value, e.exact, e.tolerance}; }

bool value_lt(const Value& a, const Rat& bound) {
  if (a.exact) return a.v < bound;
  return rat_to_double(a.v) < rat_to_double(bound) + a.tol;
}

bool value_leq(const Value& a, const Rat& bound) {
  if (a.exact) return a.v <= bound;
  return rat_to_double(a.v) <= rat_to_double(bound) + a.tol;
}

bool value_eq(const Value& a, const Rat& target) {
  if (a.exact) return a.v == target;
  return std::fabs(rat_to_double(a.v) - rat_to_double(target)) <= a.tol;
}

class ClauseSink {
 public:
  explicit ClauseSink(std::string prefix) : prefix_(std::move(prefix)) {}

  void add(const std::string& name, bool pass, const std::string& detail = "",
           bool approximate = false, double tolerance = 0.0) {
    clauses_.push_back(ClauseResult{prefix_ + name, pass, approximate, tolerance,
                                    pass ? std::string() : detail});
  }

  void add_value(const std::string& name, const Value& v, bool pass,
                 const std::string& detail) {
    add(name, pass, detail, !v.exact, v.tol);
  }

  void take(std::vector<ClauseResult>&& other) {
    for (ClauseResult& c : other) clauses_.push_back(std::move(c));
  }

  std::vector<ClauseResult> done() { return std::move(clauses_); }

 private:
  std::string prefix_;
  std::vector<ClauseResult> clauses_;
};

void check_membership_clause(ClauseSink& sink, const std::string& name,
                             const OperatorTuple& op) {
  bool pass = true;
  bool approx = false;
  double tol = 0.0;
  std::string detail;
  for (const IndexTuple& tuple : enumerate_odd_tuples(op.domain_dim())) {
    const Value norm = value_of(norm_estimate(alternating_sum(op, tuple)));
    approx |= !norm.exact;
    tol = std::max(tol, norm.tol);
    if (!value_leq(norm, Rat(1))) {
      pass = false;
      detail = "alternating sum " + detail::tuple_to_string(tuple) + " has norm " +
               rat_to_string(norm.v);
      break;
    }
  }
  sink.add(name, pass, detail, approx, tol);
}

std::vector<ClauseResult> correction_clauses(const CorrectionCertificate& cert,
                                             const std::string& prefix);

std::vector<ClauseResult> bpb_clauses(const BpbCertificate& cert, const std::string& prefix) {
  ClauseSink sink(prefix);
  if (!cert.input_op || !cert.x0 || !cert.output_op || !cert.u0) {
    sink.add("structure", false, "certificate lacks T, x0, S or u0");
    return sink.done();
  }
  const OperatorTuple& T = *cert.input_op;
  const OperatorTuple& S = *cert.output_op;
  const DomainVector& x0 = *cert.x0;
  const DomainVector& u0 = *cert.u0;
  if (T.domain_dim() != cert.n || S.domain_dim() != cert.n || x0.dim() != cert.n ||
      u0.dim() != cert.n) {
    sink.add("structure", false, "dimension mismatch against n");
    return sink.done();
  }
  sink.add("structure", true);

  const Value t_norm = value_of(operator_norm_estimate(T));
  sink.add_value("t_norm_one", t_norm, value_eq(t_norm, Rat(1)),
                 "||T|| = " + rat_to_string(t_norm.v));
  sink.add("x0_unit", sup_norm(x0) == 1, "||x0|| = " + rat_to_string(sup_norm(x0)));

  const Value s_norm = value_of(operator_norm_estimate(S));
  sink.add_value("s_norm_one", s_norm,
                 value_eq(s_norm, Rat(1)) && value_eq(s_norm, cert.s_norm),
                 "||S|| = " + rat_to_string(s_norm.v) + ", recorded " +
                     rat_to_string(cert.s_norm));

  const Value su0 = value_of(norm_estimate(apply(S, u0)));
  sink.add_value("su0_attains", su0, value_eq(su0, Rat(1)) && value_eq(su0, cert.su0_norm),
                 "||S(u0)|| = " + rat_to_string(su0.v) + ", recorded " +
                     rat_to_string(cert.su0_norm));

  const Rat u0_dist = sup_dist(u0, x0);
  sink.add("u0_close", u0_dist < cert.epsilon && u0_dist == cert.u0_dist,
           "||u0 - x0|| = " + rat_to_string(u0_dist) + ", recorded " +
               rat_to_string(cert.u0_dist) + ", eps = " + rat_to_string(cert.epsilon));

  const Value st = value_of(operator_norm_estimate(difference(S, T)));
  sink.add_value("st_close", st,
                 value_lt(st, cert.epsilon) && value_eq(st, cert.st_dist),
                 "||S - T|| = " + rat_to_string(st.v) + ", recorded " +
                     rat_to_string(cert.st_dist));

  if (cert.inner) {
    sink.take(correction_clauses(*cert.inner, prefix + "inner."));
  }
  return sink.done();
}

std::vector<ClauseResult> correction_clauses(const CorrectionCertificate& cert,
                                             const std::string& prefix) {
  ClauseSink sink(prefix);
  if (!cert.input || !cert.output) {
    sink.add("structure", false, "certificate lacks input or output tuple");
    return sink.done();
  }
  const OperatorTuple& in = *cert.input;
  const OperatorTuple& out = *cert.output;
  if (in.domain_dim() != cert.n || out.domain_dim() != cert.n) {
    sink.add("structure", false, "dimension mismatch against n");
    return sink.done();
  }
  if (cert.attain_set.empty()) {
    sink.add("structure", false, "empty attainment set");
    return sink.done();
  }
  for (int idx : cert.attain_set) {
    if (idx < 1 || idx > cert.n) {
      sink.add("structure", false, "attainment index out of range");
      return sink.done();
    }
  }
  sink.add("structure", true);

  check_membership_clause(sink, "input_in_M", in);
  check_membership_clause(sink, "output_in_M", out);

  for (int i = 0; i < cert.n; ++i) {
    const Value d = value_of(norm_estimate(out.image(i) - in.image(i)));
    const bool recorded_ok = i < static_cast<int>(cert.closeness.size()) &&
                             value_eq(d, cert.closeness[i]);
    sink.add_value("closeness_" + std::to_string(i + 1), d,
                   value_lt(d, cert.epsilon) && recorded_ok,
                   "||z - y|| = " + rat_to_string(d.v) + ", eps = " +
                       rat_to_string(cert.epsilon));
  }

  {
    bool pass = true;
    bool approx = false;
    double tol = 0.0;
    std::string detail;
    const auto tuples = enumerate_odd_tuples(cert.n);
    if (cert.alt_sum_norms.size() != tuples.size()) {
      pass = false;
      detail = "recorded " + std::to_string(cert.alt_sum_norms.size()) + " of " +
               std::to_string(tuples.size()) + " alternating-sum norms";
    } else {
      for (const auto& [tuple, recorded] : cert.alt_sum_norms) {
        const Value norm = value_of(norm_estimate(alternating_sum(out, tuple)));
        approx |= !norm.exact;
        tol = std::max(tol, norm.tol);
        if (!value_eq(norm, recorded)) {
          pass = false;
          detail = "recorded norm of " + detail::tuple_to_string(tuple) + " is " +
                   rat_to_string(recorded) + ", recomputed " + rat_to_string(norm.v);
          break;
        }
      }
    }
    sink.add("alt_sum_claims", pass, detail, approx, tol);
  }

  if (cert.functional) {
    const DualFunctional& f = *cert.functional;
    bool can_evaluate = f.kind() == DualFunctional::Kind::Coordinate ||
                        out.ambient().kind == Ambient::Kind::L1;
    if (can_evaluate) {
      for (std::size_t k = 0; k < cert.attain_set.size(); ++k) {
        const int idx = cert.attain_set[k];
        const Rat value = f(out.image(idx - 1));
        const bool recorded_ok =
            k < cert.attain_values.size() && value == cert.attain_values[k];
        sink.add("attain_value_" + std::to_string(idx), value == 1 && recorded_ok,
                 "f(z_" + std::to_string(idx) + ") = " + rat_to_string(value));
      }
    }
  }

  if (cert.kind == "correct_positive") {
    for (int idx : cert.attain_set) {
      sink.add("positivity_" + std::to_string(idx), out.image(idx - 1).nonnegative(),
               "z_" + std::to_string(idx) + " has a negative entry");
    }
  }

  {
    TargetVector attain_sum(out.ambient());
    for (int idx : cert.attain_set) attain_sum += out.image(idx - 1);
    const Value norm = value_of(norm_estimate(attain_sum));
    const Rat size(static_cast<int>(cert.attain_set.size()));
    sink.add_value("attain_sum_norm", norm,
                   value_eq(norm, size) && value_eq(norm, cert.attain_sum_norm),
                   "||sum z_i|| = " + rat_to_string(norm.v) + ", |A| = " +
                       rat_to_string(size));
  }

  if (!cert.alphas.empty()) {
    bool pass = static_cast<int>(cert.alphas.size()) == cert.n;
    Rat total(0);
    for (const Rat& a : cert.alphas) {
      if (a < 0) pass = false;
      total += a;
    }
    pass = pass && total == 1;
    sink.add("convex_weights", pass, "weights are not a convex combination");

    if (cert.coeff_mass) {
      Rat mass(0);
      for (int idx : cert.attain_set) mass += cert.alphas[idx - 1];
      sink.add("coeff_mass", mass == *cert.coeff_mass && mass > 1 - cert.epsilon,
               "selected mass " + rat_to_string(mass) + ", recorded " +
                   rat_to_string(*cert.coeff_mass) + ", needs > " +
                   rat_to_string(Rat(1 - cert.epsilon)));
    }
  }

  if (cert.kind == "ahsp_from_bpbp" && cert.projected_u0 && !cert.betas.empty() &&
      !cert.alphas.empty()) {
    const DomainVector& u = *cert.projected_u0;
    sink.add("projected_in_hull", in_convex_hull_B(u),
             "projected point left the basis hull");
    const std::vector<Rat> betas = basis_decompose(u).alphas;
    sink.add("betas_match", betas == cert.betas, "recorded hull coefficients are stale");

    const DomainVector x0 = recompose(BasisCoefficients{cert.alphas});
    const Rat dist = sup_dist(x0, u);
    bool stable = true;
    std::string detail;
    for (int i = 0; i < cert.n; ++i) {
      const Rat gap = rat_abs(Rat(cert.alphas[i] - betas[i]));
      const bool endpoint = cert.n >= 2 && (i == 0 || i == cert.n - 1);
      const Rat bound = endpoint ? Rat(dist / 2) : dist;
      if (gap > bound) {
        stable = false;
        detail = "coefficient " + std::to_string(i + 1) + " moved by " + rat_to_string(gap) +
                 " > " + rat_to_string(bound);
        break;
      }
    }
    sink.add("coefficient_stability", stable, detail);
  }

  if (cert.oracle_certificate) {
    sink.take(bpb_clauses(*cert.oracle_certificate, prefix + "oracle."));
  }
  return sink.done();
}

std::vector<ClauseResult> auxw_clauses(const detail::Json& node) {
  ClauseSink sink("");
  const TargetVector y = detail::target_vector_from_node(node.at("y"));
  const TargetVector w = detail::target_vector_from_node(node.at("w"));
  const Rat r = detail::rat_from_node(node.at("r"));
  const Rat s = detail::rat_from_node(node.at("s"));
  std::vector<TargetVector> xs;
  for (const detail::Json& x : node.at("xs")) xs.push_back(detail::target_vector_from_node(x));
  const Rat count(static_cast<int>(xs.size()));

  for (std::size_t i = 0; i < xs.size(); ++i) {
    const TargetVector xy = xs[i] + y;
    const bool ok = u_star(xy) >= 1 - r && exact_norm(xy) <= 1 + s;
    sink.add("precondition_" + std::to_string(i + 1), ok,
             "u*(x+y) = " + rat_to_string(u_star(xy)) + ", ||x+y|| = " +
                 rat_to_string(exact_norm(xy)));
  }
  sink.add("w_dominates_y", w.entrywise_geq(y), "w < y at some entry");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sink.add("nonneg_" + std::to_string(i + 1), (xs[i] + w).nonnegative(),
             "x_" + std::to_string(i + 1) + " + w has a negative entry");
  }
  const Rat dist = exact_norm(w - y);
  const Rat bound = count * (r + s);
  const detail::Json& claims = node.at("claims");
  sink.add("distance_claim", dist == detail::rat_from_node(claims.at("distance")),
           "recorded distance is stale");
  sink.add("bound_claim",
           bound == detail::rat_from_node(claims.at("bound")) &&
               Rat(bound / 2) == detail::rat_from_node(claims.at("half_bound")),
           "recorded bounds are stale");
  sink.add("distance_bound", dist <= bound,
           "||w - y|| = " + rat_to_string(dist) + " > m(r+s) = " + rat_to_string(bound));
  sink.add("distance_half_bound", dist <= bound / 2,
           "||w - y|| = " + rat_to_string(dist) + " > m(r+s)/2");
  return sink.done();
}

std::vector<ClauseResult> norms_clauses(const detail::Json& node) {
  ClauseSink sink("");
  const OperatorTuple op = detail::operator_tuple_from_node(node.at("op"));
  const Rat via_tuples = operator_norm(op);
  const Rat via_vertices = brute_norm(op);
  sink.add("claims_match",
           via_tuples == detail::rat_from_node(node.at("operator_norm")) &&
               via_vertices == detail::rat_from_node(node.at("brute_norm")),
           "recorded norms are stale");
  sink.add("oracle_equality", via_tuples == via_vertices,
           "operator_norm " + rat_to_string(via_tuples) + " != brute_norm " +
               rat_to_string(via_vertices));
  return sink.done();
}

}  // namespace

bool VerifyReport::all_pass() const {
  for (const ClauseResult& c : clauses) {
    if (!c.pass) return false;
  }
  return true;
}

VerifyReport verify(const CorrectionCertificate& cert) {
  VerifyReport report;
  report.schema = "bpb.correction/1";
  report.clauses = correction_clauses(cert, "");
  return report;
}

VerifyReport verify(const BpbCertificate& cert) {
  VerifyReport report;
  report.schema = "bpb.bpbp/1";
  report.clauses = bpb_clauses(cert, "");
  return report;
}

VerifyReport verify_json(const std::string& text) {
  const detail::Json node = detail::Json::parse(text);
  const std::string schema = node.value("schema", "");
  if (schema == "bpb.correction/1") return verify(detail::correction_from_node(node));
  if (schema == "bpb.bpbp/1") return verify(detail::bpb_from_node(node));
  if (schema == "bpb.auxw/1") {
    VerifyReport report;
    report.schema = schema;
    report.clauses = auxw_clauses(node);
    return report;
  }
  if (schema == "bpb.norms/1") {
    VerifyReport report;
    report.schema = schema;
    report.clauses = norms_clauses(node);
    return report;
  }
  throw std::invalid_argument("unknown certificate schema \"" + schema + "\"");
}

std::string to_json(const VerifyReport& report) {
  detail::Json clauses = detail::Json::array();
  for (const ClauseResult& c : report.clauses) {
    detail::Json node{{"name", c.name}, {"pass", c.pass}};
    if (c.approximate) {
      node["approximate"] = true;
      node["tolerance"] = c.tolerance;
    }
    if (!c.detail.empty()) node["detail"] = c.detail;
    clauses.push_back(std::move(node));
  }
  detail::Json node{{"schema", "bpb.verify/1"},
                    {"certificate_schema", report.schema},
                    {"all_pass", report.all_pass()},
                    {"clauses", std::move(clauses)}};
  return node.dump(1);
}

}  // namespace bpb
