#include "lcw/value.hpp"

#include <cctype>
#include <cstdio>

namespace lcw {

std::string Value::str() const {
  if (exact_) {
    std::string s = numerator(rat_).str();
    s += "/";
    s += denominator(rat_).str();
    return s;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", flt_);
  return buf;
}

// cpp_int reads a leading 0 as an octal prefix, so digit strings must be
// normalized before construction.
static Int parse_int(const std::string& digits, const std::string& text) {
  std::string sign;
  size_t i = 0;
  if (i < digits.size() && (digits[i] == '+' || digits[i] == '-')) {
    if (digits[i] == '-') sign = "-";
    ++i;
  }
  while (i + 1 < digits.size() && digits[i] == '0') ++i;
  std::string body = digits.substr(i);
  if (body.empty() ||
      body.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad rational literal: " + text);
  return Int(sign + body);
}

Value parse_rational(const std::string& text) {
  std::string s = text;
  // strip whitespace
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Int num = parse_int(t.substr(0, slash), text);
    Int den = parse_int(t.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Value(Rat(num, den));
  }
  auto epos = t.find_first_of("eE");
  long expo = 0;
  std::string mant = t;
  if (epos != std::string::npos) {
    expo = std::stol(t.substr(epos + 1));
    mant = t.substr(0, epos);
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  long frac = 0;
  if (dot != std::string::npos) {
    frac = long(mant.size() - dot - 1);
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
  }
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad rational literal: " + text);
  Int num = parse_int(digits, text);
  Rat r(num);
  long shift = expo - frac;
  if (shift > 0)
    r *= Rat(boost::multiprecision::pow(Int(10), unsigned(shift)));
  else if (shift < 0)
    r /= Rat(boost::multiprecision::pow(Int(10), unsigned(-shift)));
  return Value(r);
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace lcw
