#pragma once

#include <string>
#include <vector>

#include "bpb/bpbp_transfer.hpp"

namespace bpb {

struct ClauseResult {
  std::string name;
  bool pass = false;
  bool approximate = false;  // evaluated through an oracle norm
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::string schema;
  std::vector<ClauseResult> clauses;
  bool all_pass() const;
};

/// Recomputes every claimed inequality from the stored raw tuples; recorded
/// values are cross-checked, never trusted.
VerifyReport verify(const CorrectionCertificate& cert);
VerifyReport verify(const BpbCertificate& cert);

/// Detects the document schema ("bpb.correction/1" or "bpb.bpbp/1") and
/// dispatches.
VerifyReport verify_json(const std::string& text);

std::string to_json(const VerifyReport& report);

}  // namespace bpb
