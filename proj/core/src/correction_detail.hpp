#pragma once

#include <string>

#include "bpb/ahsp_l1.hpp"

namespace bpb::detail {

std::string tuple_to_string(const IndexTuple& tuple);

/// Throws precondition_error naming the first odd tuple whose alternating
/// sum leaves the unit ball.
void check_membership(const OperatorTuple& ys, const char* what);

CorrectionCertificate base_cert(std::string kind, const OperatorTuple& input,
                                OperatorTuple output, std::vector<int> attain_set,
                                const Rat& eps);

/// Recomputes and records every claimed inequality of the certificate from
/// the stored tuples; throws std::logic_error on any violation.
void finalize_correction(CorrectionCertificate& cert, bool require_positive);

}  // namespace bpb::detail
