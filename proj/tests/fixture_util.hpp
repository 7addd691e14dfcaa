#pragma once

#include "skel/serialize.hpp"

#include <string>

namespace skel::testing {

inline Json load_fixture(const std::string& name) { return read_json_file(std::string(SKEL_FIXTURE_DIR) + "/" + name); }

inline LaurentPolynomial poly(std::size_t arity, std::vector<IntVector> exps) {
  LaurentPolynomial p{arity, {}};
  for (auto& e : exps) p.terms.push_back(Term{std::move(e), 0, Rational(1), ""});
  return add(p, LaurentPolynomial{arity, {}});
}

inline SkeletonPoint point(std::string x, std::vector<ExtRational> w, Mode m = Mode::Trivial) {
  return SkeletonPoint{std::move(x), std::move(w), m};
}

inline ExtRational q(const std::string& s) { return parse_ext_rational(s); }

}  // namespace skel::testing
