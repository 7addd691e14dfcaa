#include "skel/arith.hpp"

#include <limits>
#include <numeric>

namespace skel {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Mode: return "mode";
    case ErrorKind::Membership: return "membership";
    case ErrorKind::DimensionLimit: return "dimension-limit";
    case ErrorKind::NormalForm: return "normal-form";
    case ErrorKind::Overflow: return "overflow";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

ExtRational ExtRational::infinity() {
  ExtRational r;
  r.value_.reset();
  return r;
}

const Rational& ExtRational::value() const {
  if (!value_) fail(ErrorKind::Domain, "value() of +inf");
  return *value_;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtRational::infinity();
  return ExtRational(*a.value_ + *b.value_);
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
  return *a.value_ == *b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.is_infinite()) return b.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
  if (b.is_infinite()) return std::strong_ordering::less;
  if (*a.value_ < *b.value_) return std::strong_ordering::less;
  if (*a.value_ > *b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }

Rational parse_rational(const std::string& s) {
  auto bad = [&]() -> Rational { fail(ErrorKind::Validation, "malformed rational '" + s + "'"); };
  if (s.empty()) return bad();
  auto slash = s.find('/');
  auto parse_int = [&](const std::string& t) -> BigInt {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) bad();
    for (std::size_t k = i; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') bad();
    return BigInt(t[0] == '+' ? t.substr(1) : t);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  BigInt p = parse_int(s.substr(0, slash));
  BigInt q = parse_int(s.substr(slash + 1));
  if (q == 0) fail(ErrorKind::Validation, "zero denominator in '" + s + "'");
  return Rational(p, q);
}

ExtRational parse_ext_rational(const std::string& s) {
  if (s == "inf" || s == "+inf") return ExtRational::infinity();
  return ExtRational(parse_rational(s));
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const ExtRational& r) { return r.is_infinite() ? "inf" : to_string(r.value()); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorKind::Overflow, "int64 addition overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::Overflow, "int64 multiplication overflow");
  return out;
}

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fail(ErrorKind::Overflow, "integer does not fit in int64");
  return static_cast<std::int64_t>(v);
}

std::int64_t to_int64(const Rational& v) {
  if (denominator(v) != 1) fail(ErrorKind::Domain, "expected an integer, got " + to_string(v));
  return to_int64(numerator(v));
}

std::int64_t gcd_of(const std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

std::vector<std::int64_t> primitive(const std::vector<std::int64_t>& v) {
  std::int64_t g = gcd_of(v);
  if (g == 0) return v;
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

std::vector<std::int64_t> primitive(const std::vector<Rational>& v) {
  BigInt l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, BigInt(denominator(x)));
  std::vector<BigInt> ints(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = numerator(v[i]) * (l / denominator(v[i]));
    g = boost::multiprecision::gcd(g, ints[i]);
  }
  std::vector<std::int64_t> out(v.size(), 0);
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_int64(BigInt(ints[i] / g));
  return out;
}

std::vector<Rational> to_rational(const std::vector<std::int64_t>& v) {
  return std::vector<Rational>(v.begin(), v.end());
}

}  // namespace skel
