#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcw {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// A scalar that is either an exact rational or a double.
/// Exact values stay exact under arithmetic; any operation touching a
/// float value yields a float value.
class Value {
 public:
  Value() : exact_(true), rat_(0), flt_(0.0) {}
  Value(int n) : exact_(true), rat_(n), flt_(double(n)) {}
  Value(long n) : exact_(true), rat_(n), flt_(double(n)) {}
  Value(const Rat& r) : exact_(true), rat_(r), flt_(0.0) {}
  Value(Rat&& r) : exact_(true), rat_(std::move(r)), flt_(0.0) {}
  explicit Value(double d) : exact_(false), rat_(0), flt_(d) {}

  static Value ratio(long num, long den) { return Value(Rat(num, den)); }

  bool exact() const { return exact_; }
  const Rat& rat() const {
    if (!exact_) throw std::logic_error("Value::rat on float value");
    return rat_;
  }
  double to_double() const {
    return exact_ ? rat_.convert_to<double>() : flt_;
  }

  Value operator-() const {
    return exact_ ? Value(Rat(-rat_)) : Value(-flt_);
  }
  friend Value operator+(const Value& a, const Value& b) {
    if (a.exact_ && b.exact_) return Value(a.rat_ + b.rat_);
    return Value(a.to_double() + b.to_double());
  }
  friend Value operator-(const Value& a, const Value& b) {
    if (a.exact_ && b.exact_) return Value(a.rat_ - b.rat_);
    return Value(a.to_double() - b.to_double());
  }
  friend Value operator*(const Value& a, const Value& b) {
    if (a.exact_ && b.exact_) return Value(a.rat_ * b.rat_);
    return Value(a.to_double() * b.to_double());
  }
  friend Value operator/(const Value& a, const Value& b) {
    if (a.exact_ && b.exact_) {
      if (b.rat_ == 0) throw std::domain_error("division by zero");
      return Value(a.rat_ / b.rat_);
    }
    return Value(a.to_double() / b.to_double());
  }
  Value& operator+=(const Value& o) { return *this = *this + o; }
  Value& operator-=(const Value& o) { return *this = *this - o; }
  Value& operator*=(const Value& o) { return *this = *this * o; }
  Value& operator/=(const Value& o) { return *this = *this / o; }

  Value abs() const {
    if (exact_) return rat_ < 0 ? Value(Rat(-rat_)) : *this;
    return Value(std::fabs(flt_));
  }

  /// Three-way comparison; eps applies only when a float value is involved.
  friend int cmp(const Value& a, const Value& b, double eps = 0.0) {
    if (a.exact_ && b.exact_) {
      if (a.rat_ < b.rat_) return -1;
      if (a.rat_ > b.rat_) return 1;
      return 0;
    }
    double x = a.to_double(), y = b.to_double();
    if (std::fabs(x - y) <= eps) return 0;
    return x < y ? -1 : 1;
  }

  /// Exact structural equality (used for AST comparison and hashing).
  friend bool operator==(const Value& a, const Value& b) {
    if (a.exact_ != b.exact_) return false;
    return a.exact_ ? a.rat_ == b.rat_ : a.flt_ == b.flt_;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

  bool is_zero(double eps = 0.0) const { return cmp(*this, Value(), eps) == 0; }

  /// "p/q" for exact values, shortest round-trip decimal otherwise.
  std::string str() const;

 private:
  bool exact_;
  Rat rat_;
  double flt_;
};

using Vec = std::vector<Value>;

inline int cmp(const Vec& a, const Vec& b, double eps = 0.0) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = cmp(a[i], b[i], eps)) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

inline Value dot(const Vec& a, const Vec& b) {
  Value s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Parses "p/q", integers, and decimals (with optional exponent).
/// Decimals parse to exact rationals; use Value(double) for float data.
Value parse_rational(const std::string& text);

std::string vec_str(const Vec& v);

}  // namespace lcw
