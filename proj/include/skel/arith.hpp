#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorKind {
  Validation,
  Domain,
  Shape,
  Mode,
  Membership,
  DimensionLimit,
  NormalForm,
  Overflow,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Rational or +inf. +inf absorbs addition and dominates min.
class ExtRational {
 public:
  ExtRational() : value_(0) {}
  ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT(implicit)
  ExtRational(long long v) : value_(Rational(v)) {}  // NOLINT(implicit)
  static ExtRational infinity();

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Rational& value() const;

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  std::optional<Rational> value_;
};

ExtRational min(const ExtRational& a, const ExtRational& b);

// "p/q", "p", or "inf" (extended only).
Rational parse_rational(const std::string& s);
ExtRational parse_ext_rational(const std::string& s);
std::string to_string(const Rational& r);
std::string to_string(const ExtRational& r);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t to_int64(const BigInt& v);
std::int64_t to_int64(const Rational& v);  // must be integral

std::int64_t gcd_of(const std::vector<std::int64_t>& v);
// Divide by the gcd of the entries; zero vector stays zero.
std::vector<std::int64_t> primitive(const std::vector<std::int64_t>& v);
// Smallest positive integer multiple of a rational vector that is integral and primitive.
std::vector<std::int64_t> primitive(const std::vector<Rational>& v);

std::vector<Rational> to_rational(const std::vector<std::int64_t>& v);

}  // namespace skel
