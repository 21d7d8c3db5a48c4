#pragma once

#include <string>

#include "bpb/bpbp_transfer.hpp"

namespace bpb {

// Rationals serialize as "p/q" strings in lowest terms with q > 0.
// DomainVector:  ["p/q", ...]
// TargetVector:  {"ambient": "l1" | {"linf": m} | {"oracle": name},
//                 "entries": {"k": "p/q", ...}}
// OperatorTuple: {"n": n, "images": [TargetVector, ...]}

std::string to_json(const DomainVector& v);
std::string to_json(const TargetVector& v);
std::string to_json(const OperatorTuple& op);
std::string to_json(const DualFunctional& f);
std::string to_json(const DomainIsometry& iso);
std::string to_json(const CorrectionCertificate& cert);
std::string to_json(const BpbCertificate& cert);

DomainVector domain_vector_from_json(const std::string& text);
TargetVector target_vector_from_json(const std::string& text);
OperatorTuple operator_tuple_from_json(const std::string& text);
DualFunctional dual_functional_from_json(const std::string& text);
DomainIsometry domain_isometry_from_json(const std::string& text);
CorrectionCertificate correction_certificate_from_json(const std::string& text);
BpbCertificate bpb_certificate_from_json(const std::string& text);

/// Makes an oracle resolvable when parsing {"oracle": name} ambients.
/// The Euclidean oracle is registered out of the box.
void register_norm_oracle(std::shared_ptr<const NormOracle> oracle);

}  // namespace bpb
