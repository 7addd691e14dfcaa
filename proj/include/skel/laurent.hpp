#pragma once

#include "skel/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skel {

// One term c * z^exp. coeff_val is the valuation of c (0 in trivial mode);
// `exact` optionally pins the coefficient so that like terms can cancel.
struct Term {
  IntVector exp;
  Rational coeff_val = 0;
  std::optional<Rational> exact;
  std::string label;

  friend bool operator==(const Term&, const Term&) = default;
};

struct LaurentPolynomial {
  std::size_t arity = 0;
  std::vector<Term> terms;

  static LaurentPolynomial constant(std::size_t arity, Rational c = 1);
  static LaurentPolynomial monomial(std::size_t arity, IntVector exp, Rational coeff_val = 0);
  bool is_zero() const { return terms.empty(); }
  bool has_negative_exponent() const;

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;
};

// Presented sum; like terms with exact, unlabeled, equal-valuation coefficients are merged.
LaurentPolynomial add(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial multiply(const LaurentPolynomial& a, const LaurentPolynomial& b);

struct LaurentRational {
  LaurentPolynomial num;
  LaurentPolynomial den;

  static LaurentRational constant(std::size_t arity, Rational c = 1);
  static LaurentRational from_polynomial(LaurentPolynomial p);
  std::size_t arity() const { return num.arity; }

  friend bool operator==(const LaurentRational&, const LaurentRational&) = default;
};

LaurentRational multiply(const LaurentRational& a, const LaurentRational& b);
LaurentRational power(const LaurentRational& a, unsigned k);

// If p is a single coordinate z_j with coefficient valuation 0, returns j.
std::optional<std::size_t> single_coordinate(const LaurentRational& f);

}  // namespace skel
