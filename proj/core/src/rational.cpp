#include "bpb/rational.hpp"

namespace bpb {

Rat rat_from_string(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num_part = text.substr(0, slash);
  const std::string den_part =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
  if (num_part.empty() || den_part.empty() ||
      den_part.find('/') != std::string::npos) {
    throw std::invalid_argument("malformed rational: \"" + text + "\"");
  }
  mpz_class num, den;
  try {
    num = mpz_class(num_part);
    den = mpz_class(den_part);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: \"" + text + "\"");
  }
  if (den == 0) {
    throw std::invalid_argument("zero denominator: \"" + text + "\"");
  }
  Rat value(num, den);
  value.canonicalize();
  return value;
}

std::string rat_to_string(const Rat& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double rat_to_double(const Rat& value) { return value.get_d(); }

}  // namespace bpb
