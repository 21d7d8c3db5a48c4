#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bpb {

/// Exact rational scalar used throughout the library.
using Rat = mpq_class;

/// Thrown when a documented precondition or hypothesis of an operation fails.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q" or "p" in base 10; the result is put in lowest terms, q > 0.
Rat rat_from_string(const std::string& text);

/// Formats as "p/q" in lowest terms with q >= 1; integers print as "p/1".
std::string rat_to_string(const Rat& value);

double rat_to_double(const Rat& value);

inline Rat rat_abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

}  // namespace bpb
