#pragma once

#include <json.hpp>

#include "bpb/bpbp_transfer.hpp"

namespace bpb::detail {

using Json = nlohmann::ordered_json;

Json rat_node(const Rat& value);
Rat rat_from_node(const Json& node);

Json domain_vector_node(const DomainVector& v);
DomainVector domain_vector_from_node(const Json& node);

Json ambient_node(const Ambient& ambient);
Ambient ambient_from_node(const Json& node);

Json target_vector_node(const TargetVector& v);
TargetVector target_vector_from_node(const Json& node);

Json operator_tuple_node(const OperatorTuple& op);
OperatorTuple operator_tuple_from_node(const Json& node);

Json functional_node(const DualFunctional& f);
DualFunctional functional_from_node(const Json& node);

Json isometry_node(const DomainIsometry& iso);
DomainIsometry isometry_from_node(const Json& node);

Json correction_node(const CorrectionCertificate& cert);
CorrectionCertificate correction_from_node(const Json& node);

Json bpb_node(const BpbCertificate& cert);
BpbCertificate bpb_from_node(const Json& node);

}  // namespace bpb::detail
