#include "bpb/harness.hpp"

#include <algorithm>
#include <cstdio>

#include "bpb/serialization.hpp"
#include "json_detail.hpp"

namespace bpb {

namespace {

Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

constexpr int kBruteCap = 20;

}  // namespace

Rat brute_norm(const OperatorTuple& op) {
  if (!op.ambient().exact()) {
    throw std::invalid_argument("brute_norm requires an exact ambient");
  }
  const int n = op.domain_dim();
  if (n > kBruteCap) {
    throw std::invalid_argument("brute_norm: dimension " + std::to_string(n) +
                                " exceeds the 2^n enumeration cap " + std::to_string(kBruteCap));
  }
  std::vector<TargetVector> cols;
  cols.reserve(n);
  for (int j = 1; j <= n; ++j) cols.push_back(apply(op, DomainVector::standard_unit(n, j)));

  std::vector<int> support;
  for (const TargetVector& col : cols) {
    for (const auto& [idx, val] : col.entries()) {
      (void)val;
      support.push_back(idx);
    }
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const int u = static_cast<int>(support.size());
  std::vector<std::vector<Rat>> dense(n, std::vector<Rat>(u, Rat(0)));
  for (int j = 0; j < n; ++j) {
    for (const auto& [idx, val] : cols[j].entries()) {
      const int c = static_cast<int>(
          std::lower_bound(support.begin(), support.end(), idx) - support.begin());
      dense[j][c] = val;
    }
  }

  const bool l1 = op.ambient().kind == Ambient::Kind::L1;
  const auto norm_of = [&](const std::vector<Rat>& acc) {
    Rat out(0);
    if (l1) {
      for (const Rat& x : acc) out += rat_abs(x);
    } else {
      for (const Rat& x : acc) {
        Rat a = rat_abs(x);
        if (a > out) out = a;
      }
    }
    return out;
  };

  // Start at the all-plus vertex and flip one coordinate per Gray-code step.
  std::vector<Rat> acc(u, Rat(0));
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < u; ++c) acc[c] += dense[j][c];
  }
  Rat best = norm_of(acc);
  std::vector<int> sign(n, 1);
  for (unsigned long k = 1; k < (1ul << n); ++k) {
    const int b = __builtin_ctzl(k);
    sign[b] = -sign[b];
    for (int c = 0; c < u; ++c) {
      if (sign[b] > 0) {
        acc[c] += dense[b][c] * 2;
      } else {
        acc[c] -= dense[b][c] * 2;
      }
    }
    Rat norm = norm_of(acc);
    if (norm > best) best = norm;
  }
  return best;
}

int Rng::below(int bound) {
  if (bound < 1) throw std::invalid_argument("Rng::below needs bound >= 1");
  return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound));
}

Rat Rng::rat_in_unit(int denominator) {
  return make_rat(below(2 * denominator + 1) - denominator, denominator);
}

Rat Rng::rat_nonneg_unit(int denominator) {
  return make_rat(below(denominator + 1), denominator);
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(out[i], out[below(i + 1)]);
  return out;
}

namespace {

// A positive fraction of the bound, strictly below it.
Rat scaled_fraction(Rng& rng, const Rat& bound) {
  return bound * make_rat(1 + rng.below(14), 16);
}

OperatorTuple constant_tuple(const TargetVector& p, int n) {
  return OperatorTuple(std::vector<TargetVector>(n, p));
}

TargetVector gen_sparse_vector(Rng& rng, int m, int denominator) {
  TargetVector v{Ambient::l1()};
  for (int k = 1; k <= m; ++k) {
    if (rng.below(4) != 0) v.set(k, rng.rat_in_unit(denominator));
  }
  return v;
}

[[noreturn]] void generator_bug(const char* what) {
  throw std::logic_error(std::string("instance generator emitted a bad instance: ") + what);
}

}  // namespace

TargetVector gen_unit_positive(Rng& rng, int m) {
  while (true) {
    std::vector<int> raw(m);
    long total = 0;
    for (int i = 0; i < m; ++i) {
      raw[i] = rng.below(17);
      total += raw[i];
    }
    if (total == 0) continue;
    TargetVector p{Ambient::l1()};
    for (int i = 0; i < m; ++i) {
      if (raw[i] != 0) p.set(i + 1, make_rat(raw[i], total));
    }
    return p;
  }
}

OperatorTuple gen_member_tuple(Rng& rng, int n, int m) {
  std::vector<TargetVector> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i) images.push_back(gen_sparse_vector(rng, m, 16));
  OperatorTuple op(std::move(images));
  const Rat norm = operator_norm(op);
  if (norm > 1) op = scale(op, Rat(1) / norm);
  return op;
}

OperatorTuple gen_raw_tuple(Rng& rng, int n, int m) {
  std::vector<TargetVector> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i) images.push_back(gen_sparse_vector(rng, m, 16));
  return OperatorTuple(std::move(images));
}

PositiveInstance gen_positive_instance(Rng& rng, int n, int m, const Rat& eps, int n0) {
  if (n0 == 0) n0 = 1 + rng.below(n);
  const TargetVector p = gen_unit_positive(rng, m);
  const OperatorTuple drift = gen_member_tuple(rng, n, m);
  const Rat rho_n = rho(n, eps);
  const Rat theta = scaled_fraction(rng, rho_n / 2);
  OperatorTuple ys = combine(constant_tuple(p, n), 1 - theta, drift, theta);
  if (!in_M(ys)) generator_bug("positive instance left M");
  for (int i = 0; i < n0; ++i) {
    if (!(u_star(ys.image(i)) > 1 - rho_n)) generator_bug("positive hypothesis");
  }
  return PositiveInstance{std::move(ys), n0, eps, theta};
}

FunctionalInstance gen_functional_instance(Rng& rng, int n, int m, const Rat& eps,
                                           const Rat& hypothesis_level) {
  const TargetVector p = gen_unit_positive(rng, m);
  const OperatorTuple drift = gen_member_tuple(rng, n, m);
  const Rat theta = scaled_fraction(rng, hypothesis_level / 2);
  const OperatorTuple base = combine(constant_tuple(p, n), 1 - theta, drift, theta);

  std::vector<int> attain_set;
  for (int i = 1; i <= n; ++i) {
    if (rng.below(2) == 1) attain_set.push_back(i);
  }
  if (attain_set.empty()) attain_set.push_back(1 + rng.below(n));

  std::set<int> negatives;
  for (int k = 1; k <= m; ++k) {
    if (rng.below(2) == 1) negatives.insert(k);
  }
  OperatorTuple ys = flip_signs(base, negatives);
  DualFunctional f = DualFunctional::sign_vector(negatives);
  if (!in_M(ys)) generator_bug("functional instance left M");
  for (int idx : attain_set) {
    if (!(f(ys.image(idx - 1)) > 1 - hypothesis_level)) generator_bug("functional hypothesis");
  }
  return FunctionalInstance{std::move(ys), std::move(attain_set), std::move(f), eps, theta};
}

ConvexInstance gen_convex_instance(Rng& rng, int n, int m, const Rat& eps,
                                   const Rat& hypothesis_level) {
  const TargetVector p = gen_unit_positive(rng, m);
  const OperatorTuple drift = gen_member_tuple(rng, n, m);
  const Rat theta = scaled_fraction(rng, hypothesis_level / 2);
  OperatorTuple ys = combine(constant_tuple(p, n), 1 - theta, drift, theta);

  std::vector<Rat> alphas(n);
  while (true) {
    std::vector<int> raw(n);
    long total = 0;
    for (int i = 0; i < n; ++i) {
      raw[i] = rng.below(9);
      total += raw[i];
    }
    if (total == 0) continue;
    for (int i = 0; i < n; ++i) alphas[i] = make_rat(raw[i], total);
    break;
  }

  if (!in_M(ys)) generator_bug("convex instance left M");
  TargetVector comb(ys.ambient());
  for (int i = 0; i < n; ++i) {
    if (alphas[i] != 0) comb += ys.image(i).scaled(alphas[i]);
  }
  if (!(exact_norm(comb) > 1 - hypothesis_level)) generator_bug("convex hypothesis");
  return ConvexInstance{std::move(ys), std::move(alphas), eps, theta};
}

BpbInstance gen_bpb_instance(Rng& rng, int n, int m, const Rat& eps) {
  const Rat eta_n = eta(n, eps);
  const Rat theta = scaled_fraction(rng, eta_n / 4);
  const TargetVector p = gen_unit_positive(rng, m);
  const OperatorTuple drift = gen_member_tuple(rng, n, m);
  const OperatorTuple blended = combine(constant_tuple(p, n), 1 - theta, drift, theta);
  const Rat blended_norm = operator_norm(blended);
  const OperatorTuple unit = scale(blended, Rat(1) / blended_norm);

  DomainVector x0 = DomainVector::zero(n);
  x0.set(0, Rat(1));
  for (int j = 1; j < n; ++j) x0.set(j, rng.rat_in_unit(16));

  std::vector<int> signs(n);
  for (int i = 0; i < n; ++i) signs[i] = rng.below(2) == 0 ? 1 : -1;
  const DomainIsometry g(rng.permutation(n), signs);
  OperatorTuple T = precompose(unit, g);
  DomainVector placed = g.inverse().apply(x0);

  if (operator_norm(T) != 1) generator_bug("bpb instance norm");
  if (sup_norm(placed) != 1) generator_bug("bpb instance unit vector");
  if (!(exact_norm(apply(T, placed)) > 1 - eta_n)) generator_bug("bpb hypothesis");
  return BpbInstance{std::move(T), std::move(placed), eps, theta};
}

AuxwInstance gen_auxw_instance(Rng& rng, int count, int m) {
  if (count < 1) throw std::invalid_argument("gen_auxw_instance needs count >= 1");
  const TargetVector y = gen_sparse_vector(rng, m, 16);
  const Rat r = rng.rat_nonneg_unit(8);
  const Rat s = rng.rat_nonneg_unit(8);
  const Rat slack = std::min(r, s) / 2;

  std::vector<TargetVector> xs;
  xs.reserve(count);
  for (int i = 0; i < count; ++i) {
    TargetVector q = gen_unit_positive(rng, m);
    if (slack > 0) {
      TargetVector e = gen_sparse_vector(rng, m, 16);
      const Rat norm = exact_norm(e);
      if (norm > slack) e = e.scaled(slack / norm);
      q += e;
    }
    xs.push_back(q - y);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const TargetVector xy = xs[i] + y;
    if (u_star(xy) < 1 - r || exact_norm(xy) > 1 + s) generator_bug("auxw preconditions");
  }
  return AuxwInstance{std::move(xs), y, r, s};
}

namespace {

using detail::Json;

Json positive_instance_node(const PositiveInstance& inst) {
  return Json{{"target", "positive"},
              {"eps", detail::rat_node(inst.eps)},
              {"theta", detail::rat_node(inst.theta)},
              {"n0", inst.n0},
              {"ys", detail::operator_tuple_node(inst.ys)}};
}

Json functional_instance_node(const FunctionalInstance& inst, const std::string& target) {
  return Json{{"target", target},
              {"eps", detail::rat_node(inst.eps)},
              {"theta", detail::rat_node(inst.theta)},
              {"attain_set", inst.attain_set},
              {"functional", detail::functional_node(inst.functional)},
              {"ys", detail::operator_tuple_node(inst.ys)}};
}

Json convex_instance_node(const ConvexInstance& inst, const std::string& target) {
  Json alphas = Json::array();
  for (const Rat& a : inst.alphas) alphas.push_back(detail::rat_node(a));
  return Json{{"target", target},
              {"eps", detail::rat_node(inst.eps)},
              {"theta", detail::rat_node(inst.theta)},
              {"alphas", std::move(alphas)},
              {"ys", detail::operator_tuple_node(inst.ys)}};
}

Json bpb_instance_node(const BpbInstance& inst) {
  return Json{{"target", "bpbp"},
              {"eps", detail::rat_node(inst.eps)},
              {"theta", detail::rat_node(inst.theta)},
              {"T", detail::operator_tuple_node(inst.T)},
              {"x0", detail::domain_vector_node(inst.x0)}};
}

Json auxw_instance_node(const AuxwInstance& inst) {
  Json xs = Json::array();
  for (const TargetVector& x : inst.xs) xs.push_back(detail::target_vector_node(x));
  return Json{{"target", "auxw"},
              {"r", detail::rat_node(inst.r)},
              {"s", detail::rat_node(inst.s)},
              {"y", detail::target_vector_node(inst.y)},
              {"xs", std::move(xs)}};
}

Json auxw_result_node(const AuxwInstance& inst, const TargetVector& w) {
  Json node = auxw_instance_node(inst);
  node.erase("target");
  node["schema"] = "bpb.auxw/1";
  node["count"] = static_cast<int>(inst.xs.size());
  node["w"] = detail::target_vector_node(w);
  const Rat dist = exact_norm(w - inst.y);
  const Rat bound = Rat(static_cast<int>(inst.xs.size())) * (inst.r + inst.s);
  node["claims"] = Json{{"distance", detail::rat_node(dist)},
                        {"bound", detail::rat_node(bound)},
                        {"half_bound", detail::rat_node(Rat(bound / 2))}};
  return node;
}

Json spec_node(const ExperimentSpec& spec) {
  return Json{{"n", spec.n},
              {"m", spec.m},
              {"eps", detail::rat_node(spec.eps)},
              {"trials", spec.trials},
              {"seed", spec.seed},
              {"n0", spec.n0}};
}

Json gen_instance_node(const std::string& target, Rng& rng, const ExperimentSpec& spec) {
  const int n = spec.n;
  const int m = spec.m;
  const Rat& eps = spec.eps;
  if (target == "positive") {
    return positive_instance_node(gen_positive_instance(rng, n, m, eps, spec.n0));
  }
  if (target == "functional") {
    return functional_instance_node(
        gen_functional_instance(rng, n, m, eps, gamma_prime(n, eps)), "functional");
  }
  if (target == "lift") {
    return functional_instance_node(
        gen_functional_instance(rng, n, m, eps, gamma_prime(n, eps / 2)), "lift");
  }
  if (target == "convex") {
    return convex_instance_node(gen_convex_instance(rng, n, m, eps, nu(n, eps)), "convex");
  }
  if (target == "roundtrip") {
    return convex_instance_node(
        gen_convex_instance(rng, n, m, eps, eta(n, eps / (n + 1))), "roundtrip");
  }
  if (target == "bpbp") {
    return bpb_instance_node(gen_bpb_instance(rng, n, m, eps));
  }
  if (target == "auxw") {
    return auxw_instance_node(gen_auxw_instance(rng, n, m));
  }
  if (target == "norms") {
    return Json{{"target", "norms"}, {"op", detail::operator_tuple_node(gen_raw_tuple(rng, n, m))}};
  }
  throw std::invalid_argument("unknown generation target \"" + target + "\"");
}

struct InstanceOutcome {
  std::string certificate_json;
  Rat max_dz;
  std::optional<Rat> u0_dist;
  std::optional<Rat> st_dist;
  bool checked_inline = false;  // pass decided without the verify path
  bool inline_pass = false;
  std::string inline_detail;
};

InstanceOutcome run_instance_node(const Json& inst, const std::optional<Rat>& eps_override) {
  const std::string target = inst.at("target").get<std::string>();
  InstanceOutcome out;
  const auto eps_of = [&](const Json& node) {
    return eps_override ? *eps_override : detail::rat_from_node(node.at("eps"));
  };
  if (target == "positive") {
    const OperatorTuple ys = detail::operator_tuple_from_node(inst.at("ys"));
    const CorrectionCertificate cert = correct_positive(ys, inst.at("n0").get<int>(), eps_of(inst));
    out.certificate_json = to_json(cert);
    out.max_dz = *std::max_element(cert.closeness.begin(), cert.closeness.end());
    return out;
  }
  if (target == "functional" || target == "lift") {
    const OperatorTuple ys = detail::operator_tuple_from_node(inst.at("ys"));
    const std::vector<int> attain = inst.at("attain_set").get<std::vector<int>>();
    const DualFunctional f = detail::functional_from_node(inst.at("functional"));
    const CorrectionCertificate cert =
        target == "lift" ? truncation_lift(ys, attain, f, eps_of(inst))
                         : correct_for_functional(ys, attain, f, eps_of(inst));
    out.certificate_json = to_json(cert);
    out.max_dz = *std::max_element(cert.closeness.begin(), cert.closeness.end());
    return out;
  }
  if (target == "convex" || target == "roundtrip") {
    const OperatorTuple ys = detail::operator_tuple_from_node(inst.at("ys"));
    std::vector<Rat> alphas;
    for (const Json& a : inst.at("alphas")) alphas.push_back(detail::rat_from_node(a));
    if (target == "convex") {
      const auto [selected, cert] = correct_convex(ys, alphas, eps_of(inst));
      (void)selected;
      out.certificate_json = to_json(cert);
      out.max_dz = *std::max_element(cert.closeness.begin(), cert.closeness.end());
    } else {
      const auto [selected, cert] = ahsp_from_bpbp(
          [](const OperatorTuple& T, const DomainVector& x0, const Rat& e) {
            return bpbp_correct(T, x0, e);
          },
          ys, alphas, eps_of(inst));
      (void)selected;
      out.certificate_json = to_json(cert);
      out.max_dz = *std::max_element(cert.closeness.begin(), cert.closeness.end());
      if (cert.oracle_certificate) {
        out.u0_dist = cert.oracle_certificate->u0_dist;
        out.st_dist = cert.oracle_certificate->st_dist;
      }
    }
    return out;
  }
  if (target == "bpbp") {
    const OperatorTuple T = detail::operator_tuple_from_node(inst.at("T"));
    const DomainVector x0 = detail::domain_vector_from_node(inst.at("x0"));
    const BpbCertificate cert = bpbp_correct(T, x0, eps_of(inst));
    out.certificate_json = to_json(cert);
    if (cert.inner && !cert.inner->closeness.empty()) {
      out.max_dz =
          *std::max_element(cert.inner->closeness.begin(), cert.inner->closeness.end());
    }
    out.u0_dist = cert.u0_dist;
    out.st_dist = cert.st_dist;
    return out;
  }
  if (target == "auxw") {
    AuxwInstance aux;
    aux.y = detail::target_vector_from_node(inst.at("y"));
    for (const Json& x : inst.at("xs")) aux.xs.push_back(detail::target_vector_from_node(x));
    aux.r = detail::rat_from_node(inst.at("r"));
    aux.s = detail::rat_from_node(inst.at("s"));
    const TargetVector w = auxiliar_w(aux.xs, aux.y, aux.r, aux.s);
    out.certificate_json = auxw_result_node(aux, w).dump(1);
    out.max_dz = exact_norm(w - aux.y);
    return out;
  }
  if (target == "norms") {
    const OperatorTuple op = detail::operator_tuple_from_node(inst.at("op"));
    const Rat via_tuples = operator_norm(op);
    const Rat via_vertices = brute_norm(op);
    Json node{{"schema", "bpb.norms/1"},
              {"op", inst.at("op")},
              {"operator_norm", detail::rat_node(via_tuples)},
              {"brute_norm", detail::rat_node(via_vertices)}};
    out.certificate_json = node.dump(1);
    out.checked_inline = true;
    out.inline_pass = via_tuples == via_vertices;
    if (!out.inline_pass) {
      out.inline_detail = "operator_norm " + rat_to_string(via_tuples) + " != brute_norm " +
                          rat_to_string(via_vertices);
    }
    return out;
  }
  throw std::invalid_argument("unknown instance target \"" + target + "\"");
}

}  // namespace

std::string to_json(const PositiveInstance& inst) { return positive_instance_node(inst).dump(1); }
std::string to_json(const FunctionalInstance& inst) {
  return functional_instance_node(inst, "functional").dump(1);
}
std::string to_json(const ConvexInstance& inst) {
  return convex_instance_node(inst, "convex").dump(1);
}
std::string to_json(const BpbInstance& inst) { return bpb_instance_node(inst).dump(1); }
std::string to_json(const AuxwInstance& inst) { return auxw_instance_node(inst).dump(1); }

InstanceRunResult run_instance_file(const std::string& text, int index,
                                    const std::optional<Rat>& eps_override) {
  const Json doc = Json::parse(text);
  const Json* inst = &doc;
  if (doc.contains("schema") && doc.value("schema", "") == "bpb.instances/1") {
    const Json& list = doc.at("instances");
    if (index < 0 || index >= static_cast<int>(list.size())) {
      throw std::invalid_argument("instance index " + std::to_string(index) +
                                  " out of range 0.." + std::to_string(list.size() - 1));
    }
    inst = &list.at(index);
  }
  InstanceRunResult result;
  result.target = inst->at("target").get<std::string>();
  result.certificate_json = run_instance_node(*inst, eps_override).certificate_json;
  return result;
}

std::string instances_json(const std::string& target, const ExperimentSpec& spec) {
  Rng rng(spec.seed);
  Json instances = Json::array();
  for (int i = 0; i < spec.trials; ++i) instances.push_back(gen_instance_node(target, rng, spec));
  Json node{{"schema", "bpb.instances/1"},
            {"target", target},
            {"spec", spec_node(spec)},
            {"instances", std::move(instances)}};
  return node.dump(1);
}

BatchReport run_batch(const std::string& target, const ExperimentSpec& spec) {
  BatchReport report;
  report.target = target;
  report.spec = spec;
  Rng rng(spec.seed);
  for (int id = 0; id < spec.trials; ++id) {
    ReportRow row;
    row.id = id;
    row.n = spec.n;
    row.m = spec.m;
    row.eps = spec.eps;
    if (target != "norms" && target != "auxw") row.moduli = ModulusChain::at(spec.n, spec.eps);
    try {
      const Json inst = gen_instance_node(target, rng, spec);
      InstanceOutcome outcome = run_instance_node(inst, std::nullopt);
      row.max_dz = outcome.max_dz;
      row.u0_dist = outcome.u0_dist;
      row.st_dist = outcome.st_dist;
      row.certificate_json = std::move(outcome.certificate_json);
      if (outcome.checked_inline) {
        row.pass = outcome.inline_pass;
        row.detail = outcome.inline_detail;
      } else {
        const VerifyReport vr = verify_json(row.certificate_json);
        row.pass = vr.all_pass();
        if (!row.pass) {
          for (const ClauseResult& c : vr.clauses) {
            if (!c.pass) {
              row.detail = c.name + ": " + c.detail;
              break;
            }
          }
        }
      }
    } catch (const std::exception& e) {
      row.pass = false;
      row.detail = e.what();
    }
    if (!row.pass) ++report.failures;
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string approx_str(const Rat& value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", rat_to_double(value));
  return buf;
}

std::string csv_quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_json(const BatchReport& report) {
  Json rows = Json::array();
  for (const ReportRow& row : report.rows) {
    Json node{{"id", row.id}, {"n", row.n}, {"m", row.m}, {"eps", detail::rat_node(row.eps)}};
    if (row.moduli) {
      node["moduli"] = Json{{"rho", detail::rat_node(row.moduli->rho)},
                            {"gamma", detail::rat_node(row.moduli->gamma)},
                            {"nu", detail::rat_node(row.moduli->nu)},
                            {"eta", detail::rat_node(row.moduli->eta)}};
    }
    node["max_dz"] = detail::rat_node(row.max_dz);
    if (row.u0_dist) node["u0_dist"] = detail::rat_node(*row.u0_dist);
    if (row.st_dist) node["st_dist"] = detail::rat_node(*row.st_dist);
    node["pass"] = row.pass;
    if (!row.detail.empty()) node["detail"] = row.detail;
    if (!row.certificate_json.empty()) node["certificate"] = Json::parse(row.certificate_json);
    rows.push_back(std::move(node));
  }
  Json node{{"schema", "bpb.report/1"},
            {"target", report.target},
            {"spec", spec_node(report.spec)},
            {"failures", report.failures},
            {"rows", std::move(rows)}};
  return node.dump(1);
}

std::string report_csv(const BatchReport& report) {
  std::string out =
      "id,n,m,eps,eps_approx,rho,rho_approx,gamma,gamma_approx,nu,nu_approx,eta,eta_approx,"
      "max_dz,max_dz_approx,u0_dist,u0_dist_approx,st_dist,st_dist_approx,pass,detail\n";
  // The *_approx columns are decimal renderings for human reading only.
  for (const ReportRow& row : report.rows) {
    out += std::to_string(row.id) + "," + std::to_string(row.n) + "," + std::to_string(row.m);
    out += "," + rat_to_string(row.eps) + "," + approx_str(row.eps);
    if (row.moduli) {
      out += "," + rat_to_string(row.moduli->rho) + "," + approx_str(row.moduli->rho);
      out += "," + rat_to_string(row.moduli->gamma) + "," + approx_str(row.moduli->gamma);
      out += "," + rat_to_string(row.moduli->nu) + "," + approx_str(row.moduli->nu);
      out += "," + rat_to_string(row.moduli->eta) + "," + approx_str(row.moduli->eta);
    } else {
      out += ",,,,,,,,";
    }
    out += "," + rat_to_string(row.max_dz) + "," + approx_str(row.max_dz);
    out += row.u0_dist ? "," + rat_to_string(*row.u0_dist) + "," + approx_str(*row.u0_dist) : ",,";
    out += row.st_dist ? "," + rat_to_string(*row.st_dist) + "," + approx_str(*row.st_dist) : ",,";
    out += std::string(",") + (row.pass ? "pass" : "FAIL");
    out += "," + csv_quote(row.detail) + "\n";
  }
  return out;
}

}  // namespace bpb
