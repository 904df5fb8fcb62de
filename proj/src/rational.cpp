#include "mlab/rational.hpp"

#include "mlab/errors.hpp"

namespace mlab {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  // mpq_set_str accepts whitespace and base prefixes we do not want; insist
  // on plain decimal digits, one optional leading sign, one optional '/'.
  bool seen_slash = false;
  bool digit_in_part = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '-' || c == '+') {
      if (i != 0) throw ParseError("misplaced sign in rational literal '" + text + "'");
      continue;
    }
    if (c == '/') {
      if (seen_slash || !digit_in_part)
        throw ParseError("malformed rational literal '" + text + "'");
      seen_slash = true;
      digit_in_part = false;
      continue;
    }
    if (c < '0' || c > '9')
      throw ParseError("invalid character in rational literal '" + text + "'");
    digit_in_part = true;
  }
  if (!digit_in_part) throw ParseError("malformed rational literal '" + text + "'");

  mpq_class value;
  if (value.set_str(text, 10) != 0)
    throw ParseError("malformed rational literal '" + text + "'");
  if (value.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace mlab
