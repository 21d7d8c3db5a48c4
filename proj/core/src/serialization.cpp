#include "bpb/serialization.hpp"

#include <map>
#include <mutex>

#include "json_detail.hpp"

namespace bpb {

namespace {

std::map<std::string, std::shared_ptr<const NormOracle>>& oracle_registry() {
  static std::map<std::string, std::shared_ptr<const NormOracle>> registry = {
      {"euclid", make_euclidean_oracle()}};
  return registry;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void register_norm_oracle(std::shared_ptr<const NormOracle> oracle) {
  if (!oracle) throw std::invalid_argument("null norm oracle");
  std::lock_guard<std::mutex> lock(registry_mutex());
  oracle_registry()[oracle->name()] = std::move(oracle);
}

namespace detail {

Json rat_node(const Rat& value) { return rat_to_string(value); }

Rat rat_from_node(const Json& node) {
  if (!node.is_string()) throw std::invalid_argument("expected a \"p/q\" string");
  return rat_from_string(node.get<std::string>());
}

Json domain_vector_node(const DomainVector& v) {
  Json node = Json::array();
  for (int i = 0; i < v.dim(); ++i) node.push_back(rat_node(v[i]));
  return node;
}

DomainVector domain_vector_from_node(const Json& node) {
  if (!node.is_array() || node.empty()) {
    throw std::invalid_argument("domain vector must be a nonempty array");
  }
  std::vector<Rat> coords;
  coords.reserve(node.size());
  for (const Json& item : node) coords.push_back(rat_from_node(item));
  return DomainVector(std::move(coords));
}

Json ambient_node(const Ambient& ambient) {
  switch (ambient.kind) {
    case Ambient::Kind::L1:
      return "l1";
    case Ambient::Kind::LinfM:
      return Json{{"linf", ambient.m}};
    case Ambient::Kind::Oracle:
      return Json{{"oracle", ambient.oracle->name()}};
  }
  throw std::logic_error("unhandled ambient kind");
}

Ambient ambient_from_node(const Json& node) {
  if (node.is_string()) {
    if (node.get<std::string>() == "l1") return Ambient::l1();
    throw std::invalid_argument("unknown ambient \"" + node.get<std::string>() + "\"");
  }
  if (node.is_object() && node.contains("linf")) {
    return Ambient::linf(node.at("linf").get<int>());
  }
  if (node.is_object() && node.contains("oracle")) {
    const std::string name = node.at("oracle").get<std::string>();
    std::lock_guard<std::mutex> lock(registry_mutex());
    const auto it = oracle_registry().find(name);
    if (it == oracle_registry().end()) {
      throw std::invalid_argument("unregistered norm oracle \"" + name + "\"");
    }
    return Ambient::with_oracle(it->second);
  }
  throw std::invalid_argument("malformed ambient");
}

Json target_vector_node(const TargetVector& v) {
  Json entries = Json::object();
  for (const auto& [idx, val] : v.entries()) entries[std::to_string(idx)] = rat_node(val);
  return Json{{"ambient", ambient_node(v.ambient())}, {"entries", std::move(entries)}};
}

TargetVector target_vector_from_node(const Json& node) {
  TargetVector out(ambient_from_node(node.at("ambient")));
  for (const auto& [key, val] : node.at("entries").items()) {
    out.set(std::stoi(key), rat_from_node(val));
  }
  return out;
}

Json operator_tuple_node(const OperatorTuple& op) {
  Json images = Json::array();
  for (const TargetVector& img : op.images()) images.push_back(target_vector_node(img));
  return Json{{"n", op.domain_dim()}, {"images", std::move(images)}};
}

OperatorTuple operator_tuple_from_node(const Json& node) {
  const int n = node.at("n").get<int>();
  std::vector<TargetVector> images;
  for (const Json& img : node.at("images")) images.push_back(target_vector_from_node(img));
  if (static_cast<int>(images.size()) != n) {
    throw std::invalid_argument("operator tuple image count differs from n");
  }
  return OperatorTuple(std::move(images));
}

Json functional_node(const DualFunctional& f) {
  switch (f.kind()) {
    case DualFunctional::Kind::Summing:
      return Json{{"kind", "summing"}};
    case DualFunctional::Kind::SignVector: {
      Json negatives = Json::array();
      for (int idx : f.negative_indices()) negatives.push_back(idx);
      return Json{{"kind", "sign-vector"}, {"negative", std::move(negatives)}};
    }
    case DualFunctional::Kind::Coordinate:
      return Json{{"kind", "coordinate"}, {"index", f.coordinate_index()}};
  }
  throw std::logic_error("unhandled functional kind");
}

DualFunctional functional_from_node(const Json& node) {
  const std::string kind = node.at("kind").get<std::string>();
  if (kind == "summing") return DualFunctional::summing();
  if (kind == "sign-vector") {
    std::set<int> negatives;
    if (node.contains("negative")) {
      for (const Json& idx : node.at("negative")) negatives.insert(idx.get<int>());
    }
    return DualFunctional::sign_vector(std::move(negatives));
  }
  if (kind == "coordinate") return DualFunctional::coordinate(node.at("index").get<int>());
  throw std::invalid_argument("unknown functional kind \"" + kind + "\"");
}

Json isometry_node(const DomainIsometry& iso) {
  return Json{{"source", iso.source()}, {"signs", iso.signs()}};
}

DomainIsometry isometry_from_node(const Json& node) {
  return DomainIsometry(node.at("source").get<std::vector<int>>(),
                        node.at("signs").get<std::vector<int>>());
}

namespace {

Json trace_level_node(const PositiveTraceLevel& level) {
  Json node{{"dim", level.dim},
            {"n0", level.n0},
            {"eps", rat_node(level.eps)},
            {"rho", rat_node(level.rho)},
            {"branch", level.branch}};
  if (level.b) node["b"] = operator_tuple_node(*level.b);
  if (level.a) node["a"] = target_vector_node(*level.a);
  if (level.w) node["w"] = target_vector_node(*level.w);
  return node;
}

PositiveTraceLevel trace_level_from_node(const Json& node) {
  PositiveTraceLevel level;
  level.dim = node.at("dim").get<int>();
  level.n0 = node.at("n0").get<int>();
  level.eps = rat_from_node(node.at("eps"));
  level.rho = rat_from_node(node.at("rho"));
  level.branch = node.at("branch").get<std::string>();
  if (node.contains("b")) level.b = operator_tuple_from_node(node.at("b"));
  if (node.contains("a")) level.a = target_vector_from_node(node.at("a"));
  if (node.contains("w")) level.w = target_vector_from_node(node.at("w"));
  return level;
}

Json rat_list_node(const std::vector<Rat>& values) {
  Json node = Json::array();
  for (const Rat& v : values) node.push_back(rat_node(v));
  return node;
}

std::vector<Rat> rat_list_from_node(const Json& node) {
  std::vector<Rat> out;
  for (const Json& item : node) out.push_back(rat_from_node(item));
  return out;
}

}  // namespace

Json correction_node(const CorrectionCertificate& cert) {
  Json node;
  node["schema"] = "bpb.correction/1";
  node["kind"] = cert.kind;
  node["n"] = cert.n;
  node["epsilon"] = rat_node(cert.epsilon);
  if (cert.input) node["input"] = operator_tuple_node(*cert.input);
  if (cert.output) node["output"] = operator_tuple_node(*cert.output);
  node["attain_set"] = cert.attain_set;
  Json moduli = Json::object();
  for (const auto& [name, value] : cert.moduli) moduli[name] = rat_node(value);
  node["moduli"] = std::move(moduli);
  if (cert.functional) node["functional"] = functional_node(*cert.functional);
  if (!cert.alphas.empty()) node["alphas"] = rat_list_node(cert.alphas);

  Json claims;
  claims["closeness"] = rat_list_node(cert.closeness);
  Json alt = Json::array();
  for (const auto& [tuple, norm] : cert.alt_sum_norms) {
    alt.push_back(Json{{"tuple", tuple.indices()}, {"norm", rat_node(norm)}});
  }
  claims["alt_sum_norms"] = std::move(alt);
  claims["attain_values"] = rat_list_node(cert.attain_values);
  claims["attain_sum_norm"] = rat_node(cert.attain_sum_norm);
  if (cert.coeff_mass) claims["coeff_mass"] = rat_node(*cert.coeff_mass);
  node["claims"] = std::move(claims);

  if (!cert.trace.empty()) {
    Json trace = Json::array();
    for (const PositiveTraceLevel& level : cert.trace) trace.push_back(trace_level_node(level));
    node["trace"] = std::move(trace);
  }

  Json audit = Json::object();
  if (cert.rotation != 0) audit["rotation"] = cert.rotation;
  if (cert.n0_extended != 0) audit["n0_extended"] = cert.n0_extended;
  if (!cert.flip_signs.empty()) {
    Json negatives = Json::array();
    for (const auto& [idx, sign] : cert.flip_signs) {
      (void)sign;
      negatives.push_back(idx);
    }
    audit["flip_signs"] = std::move(negatives);
  }
  if (cert.lift_t) audit["lift_t"] = rat_node(*cert.lift_t);
  if (cert.lift_m != 0) audit["lift_m"] = cert.lift_m;
  if (!cert.betas.empty()) audit["betas"] = rat_list_node(cert.betas);
  if (cert.projected_u0) audit["projected_u0"] = domain_vector_node(*cert.projected_u0);
  if (cert.oracle_certificate) audit["oracle_certificate"] = bpb_node(*cert.oracle_certificate);
  if (!audit.empty()) node["audit"] = std::move(audit);
  return node;
}

CorrectionCertificate correction_from_node(const Json& node) {
  if (node.value("schema", "") != "bpb.correction/1") {
    throw std::invalid_argument("not a bpb.correction/1 document");
  }
  CorrectionCertificate cert;
  cert.kind = node.at("kind").get<std::string>();
  cert.n = node.at("n").get<int>();
  cert.epsilon = rat_from_node(node.at("epsilon"));
  if (node.contains("input")) cert.input = operator_tuple_from_node(node.at("input"));
  if (node.contains("output")) cert.output = operator_tuple_from_node(node.at("output"));
  cert.attain_set = node.at("attain_set").get<std::vector<int>>();
  for (const auto& [name, value] : node.at("moduli").items()) {
    cert.moduli[name] = rat_from_node(value);
  }
  if (node.contains("functional")) cert.functional = functional_from_node(node.at("functional"));
  if (node.contains("alphas")) cert.alphas = rat_list_from_node(node.at("alphas"));

  const Json& claims = node.at("claims");
  cert.closeness = rat_list_from_node(claims.at("closeness"));
  for (const Json& item : claims.at("alt_sum_norms")) {
    cert.alt_sum_norms.emplace_back(IndexTuple(item.at("tuple").get<std::vector<int>>()),
                                    rat_from_node(item.at("norm")));
  }
  cert.attain_values = rat_list_from_node(claims.at("attain_values"));
  cert.attain_sum_norm = rat_from_node(claims.at("attain_sum_norm"));
  if (claims.contains("coeff_mass")) cert.coeff_mass = rat_from_node(claims.at("coeff_mass"));

  if (node.contains("trace")) {
    for (const Json& level : node.at("trace")) cert.trace.push_back(trace_level_from_node(level));
  }
  if (node.contains("audit")) {
    const Json& audit = node.at("audit");
    cert.rotation = audit.value("rotation", 0);
    cert.n0_extended = audit.value("n0_extended", 0);
    if (audit.contains("flip_signs")) {
      for (const Json& idx : audit.at("flip_signs")) cert.flip_signs[idx.get<int>()] = -1;
    }
    if (audit.contains("lift_t")) cert.lift_t = rat_from_node(audit.at("lift_t"));
    cert.lift_m = audit.value("lift_m", 0);
    if (audit.contains("betas")) cert.betas = rat_list_from_node(audit.at("betas"));
    if (audit.contains("projected_u0")) {
      cert.projected_u0 = domain_vector_from_node(audit.at("projected_u0"));
    }
    if (audit.contains("oracle_certificate")) {
      cert.oracle_certificate =
          std::make_shared<const BpbCertificate>(bpb_from_node(audit.at("oracle_certificate")));
    }
  }
  return cert;
}

Json bpb_node(const BpbCertificate& cert) {
  Json node;
  node["schema"] = "bpb.bpbp/1";
  node["n"] = cert.n;
  node["epsilon"] = rat_node(cert.epsilon);
  node["eta"] = rat_node(cert.eta);
  if (cert.input_op) node["T"] = operator_tuple_node(*cert.input_op);
  if (cert.x0) node["x0"] = domain_vector_node(*cert.x0);
  if (cert.output_op) node["S"] = operator_tuple_node(*cert.output_op);
  if (cert.u0) node["u0"] = domain_vector_node(*cert.u0);
  node["claims"] = Json{{"s_norm", rat_node(cert.s_norm)},
                        {"su0_norm", rat_node(cert.su0_norm)},
                        {"u0_dist", rat_node(cert.u0_dist)},
                        {"st_dist", rat_node(cert.st_dist)}};
  Json audit = Json::object();
  if (cert.isometry) audit["isometry"] = isometry_node(*cert.isometry);
  if (!cert.alphas.empty()) audit["alphas"] = rat_list_node(cert.alphas);
  if (!cert.attain_set.empty()) audit["attain_set"] = cert.attain_set;
  if (cert.inner) audit["inner"] = correction_node(*cert.inner);
  if (!audit.empty()) node["audit"] = std::move(audit);
  return node;
}

BpbCertificate bpb_from_node(const Json& node) {
  if (node.value("schema", "") != "bpb.bpbp/1") {
    throw std::invalid_argument("not a bpb.bpbp/1 document");
  }
  BpbCertificate cert;
  cert.n = node.at("n").get<int>();
  cert.epsilon = rat_from_node(node.at("epsilon"));
  cert.eta = rat_from_node(node.at("eta"));
  if (node.contains("T")) cert.input_op = operator_tuple_from_node(node.at("T"));
  if (node.contains("x0")) cert.x0 = domain_vector_from_node(node.at("x0"));
  if (node.contains("S")) cert.output_op = operator_tuple_from_node(node.at("S"));
  if (node.contains("u0")) cert.u0 = domain_vector_from_node(node.at("u0"));
  const Json& claims = node.at("claims");
  cert.s_norm = rat_from_node(claims.at("s_norm"));
  cert.su0_norm = rat_from_node(claims.at("su0_norm"));
  cert.u0_dist = rat_from_node(claims.at("u0_dist"));
  cert.st_dist = rat_from_node(claims.at("st_dist"));
  if (node.contains("audit")) {
    const Json& audit = node.at("audit");
    if (audit.contains("isometry")) cert.isometry = isometry_from_node(audit.at("isometry"));
    if (audit.contains("alphas")) cert.alphas = rat_list_from_node(audit.at("alphas"));
    if (audit.contains("attain_set")) {
      cert.attain_set = audit.at("attain_set").get<std::vector<int>>();
    }
    if (audit.contains("inner")) {
      cert.inner =
          std::make_shared<const CorrectionCertificate>(correction_from_node(audit.at("inner")));
    }
  }
  return cert;
}

}  // namespace detail

namespace {

constexpr int kIndent = 1;

std::string dump(const detail::Json& node) { return node.dump(kIndent); }

detail::Json parse(const std::string& text) {
  return detail::Json::parse(text);  // throws nlohmann::json::parse_error
}

}  // namespace

std::string to_json(const DomainVector& v) { return dump(detail::domain_vector_node(v)); }
std::string to_json(const TargetVector& v) { return dump(detail::target_vector_node(v)); }
std::string to_json(const OperatorTuple& op) { return dump(detail::operator_tuple_node(op)); }
std::string to_json(const DualFunctional& f) { return dump(detail::functional_node(f)); }
std::string to_json(const DomainIsometry& iso) { return dump(detail::isometry_node(iso)); }
std::string to_json(const CorrectionCertificate& cert) {
  return dump(detail::correction_node(cert));
}
std::string to_json(const BpbCertificate& cert) { return dump(detail::bpb_node(cert)); }

DomainVector domain_vector_from_json(const std::string& text) {
  return detail::domain_vector_from_node(parse(text));
}
TargetVector target_vector_from_json(const std::string& text) {
  return detail::target_vector_from_node(parse(text));
}
OperatorTuple operator_tuple_from_json(const std::string& text) {
  return detail::operator_tuple_from_node(parse(text));
}
DualFunctional dual_functional_from_json(const std::string& text) {
  return detail::functional_from_node(parse(text));
}
DomainIsometry domain_isometry_from_json(const std::string& text) {
  return detail::isometry_from_node(parse(text));
}
CorrectionCertificate correction_certificate_from_json(const std::string& text) {
  return detail::correction_from_node(parse(text));
}
BpbCertificate bpb_certificate_from_json(const std::string& text) {
  return detail::bpb_from_node(parse(text));
}

}  // namespace bpb
