#pragma once

#include "skel/arith.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace skel {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;
using ZMatrix = std::vector<std::vector<BigInt>>;

QMatrix to_rational(const IntMatrix& m);
ZMatrix to_big(const IntMatrix& m);
IntMatrix transpose(const IntMatrix& m);
QMatrix transpose(const QMatrix& m);
ZMatrix transpose(const ZMatrix& m);
ZMatrix multiply(const ZMatrix& a, const ZMatrix& b);
ZMatrix identity_matrix(std::size_t n);

Rational dot(const QVector& a, const QVector& b);
Rational dot(const IntVector& a, const QVector& b);
std::int64_t dot(const IntVector& a, const IntVector& b);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(const QMatrix& m);
std::size_t rank(const IntMatrix& m);
// Basis of {x : m x = 0}; `cols` is the number of unknowns (needed when m has no rows).
QMatrix nullspace(const QMatrix& m, std::size_t cols);
// Some solution of m x = b (free variables zero), or nullopt.
std::optional<QVector> solve(const QMatrix& m, const QVector& b, std::size_t cols);
QMatrix inverse(const QMatrix& m);
Rational determinant(QMatrix m);

// U * A * V = D, U and V unimodular, D diagonal with d_1 | d_2 | ... (nonnegative).
struct SmithForm {
  ZMatrix U, D, V;
  std::vector<BigInt> diagonal;  // nonzero invariant factors
};
SmithForm smith_normal_form(const ZMatrix& a);
std::vector<BigInt> invariant_factors(ZMatrix a);

// Splits Z^n into the saturation L of span(vectors) and a complement.
// coords(x) gives L-coordinates of x in L; quotient(x) gives coordinates in Z^n / L.
struct LatticeSplit {
  std::size_t n = 0;
  std::size_t k = 0;
  ZMatrix U;     // unimodular, rows k.. vanish on L
  ZMatrix Uinv;  // columns 0..k-1 form a basis of L
  bool saturated = true;  // the input vectors generate L itself

  IntVector coords(const IntVector& x) const;
  IntVector quotient(const IntVector& x) const;
  QVector coords(const QVector& x) const;
  QVector quotient(const QVector& x) const;
  IntVector lift(const IntVector& y) const;
  QVector lift(const QVector& y) const;
  bool in_span(const IntVector& x) const;
};
LatticeSplit split_lattice(std::size_t n, const std::vector<IntVector>& vectors);

}  // namespace skel
