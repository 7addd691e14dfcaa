#include "skel/laurent.hpp"

#include <algorithm>
#include <map>

namespace skel {

LaurentPolynomial LaurentPolynomial::constant(std::size_t arity, Rational c) {
  LaurentPolynomial p;
  p.arity = arity;
  if (c != 0) p.terms.push_back(Term{IntVector(arity, 0), 0, c, ""});
  return p;
}

LaurentPolynomial LaurentPolynomial::monomial(std::size_t arity, IntVector exp, Rational coeff_val) {
  if (exp.size() != arity) fail(ErrorKind::Shape, "monomial exponent length mismatch");
  LaurentPolynomial p;
  p.arity = arity;
  p.terms.push_back(Term{std::move(exp), std::move(coeff_val), Rational(1), ""});
  return p;
}

bool LaurentPolynomial::has_negative_exponent() const {
  for (const auto& t : terms)
    for (auto e : t.exp)
      if (e < 0) return true;
  return false;
}

namespace {

bool mergeable(const Term& t) { return t.exact.has_value() && t.label.empty(); }

LaurentPolynomial normalize(std::size_t arity, std::vector<Term> terms) {
  LaurentPolynomial out;
  out.arity = arity;
  std::map<std::pair<IntVector, Rational>, Rational> merged;
  std::vector<std::pair<IntVector, Rational>> order;
  for (auto& t : terms) {
    if (t.exp.size() != arity) fail(ErrorKind::Shape, "term exponent length mismatch");
    if (!mergeable(t)) {
      out.terms.push_back(std::move(t));
      continue;
    }
    auto key = std::make_pair(t.exp, t.coeff_val);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, *t.exact);
      order.push_back(key);
    } else {
      it->second += *t.exact;
    }
  }
  for (const auto& key : order) {
    const Rational& c = merged[key];
    if (c == 0) continue;
    out.terms.push_back(Term{key.first, key.second, c, ""});
  }
  std::stable_sort(out.terms.begin(), out.terms.end(), [](const Term& a, const Term& b) {
    if (a.exp != b.exp) return a.exp < b.exp;
    return a.coeff_val < b.coeff_val;
  });
  return out;
}

}  // namespace

LaurentPolynomial add(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.arity != b.arity) fail(ErrorKind::Shape, "adding polynomials of different arity");
  std::vector<Term> terms = a.terms;
  terms.insert(terms.end(), b.terms.begin(), b.terms.end());
  return normalize(a.arity, std::move(terms));
}

LaurentPolynomial multiply(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.arity != b.arity) fail(ErrorKind::Shape, "multiplying polynomials of different arity");
  std::vector<Term> terms;
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) {
      Term p;
      p.exp.resize(a.arity);
      for (std::size_t i = 0; i < a.arity; ++i) p.exp[i] = checked_add(s.exp[i], t.exp[i]);
      p.coeff_val = s.coeff_val + t.coeff_val;
      if (s.exact && t.exact) p.exact = *s.exact * *t.exact;
      if (!s.label.empty() && !t.label.empty())
        p.label = s.label + "*" + t.label;
      else
        p.label = s.label + t.label;
      terms.push_back(std::move(p));
    }
  return normalize(a.arity, std::move(terms));
}

LaurentRational LaurentRational::constant(std::size_t arity, Rational c) {
  return LaurentRational{LaurentPolynomial::constant(arity, std::move(c)), LaurentPolynomial::constant(arity, 1)};
}

LaurentRational LaurentRational::from_polynomial(LaurentPolynomial p) {
  std::size_t n = p.arity;
  return LaurentRational{std::move(p), LaurentPolynomial::constant(n, 1)};
}

LaurentRational multiply(const LaurentRational& a, const LaurentRational& b) {
  return LaurentRational{multiply(a.num, b.num), multiply(a.den, b.den)};
}

LaurentRational power(const LaurentRational& a, unsigned k) {
  LaurentRational out = LaurentRational::constant(a.arity(), 1);
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

std::optional<std::size_t> single_coordinate(const LaurentRational& f) {
  if (f.num.terms.size() != 1 || f.den.terms.size() != 1) return std::nullopt;
  const Term& d = f.den.terms[0];
  if (d.coeff_val != 0 || std::any_of(d.exp.begin(), d.exp.end(), [](std::int64_t e) { return e != 0; }))
    return std::nullopt;
  const Term& t = f.num.terms[0];
  if (t.coeff_val != 0) return std::nullopt;
  std::optional<std::size_t> idx;
  for (std::size_t i = 0; i < t.exp.size(); ++i) {
    if (t.exp[i] == 0) continue;
    if (t.exp[i] != 1 || idx) return std::nullopt;
    idx = i;
  }
  return idx;
}

}  // namespace skel
