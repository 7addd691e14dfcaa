#include "skel/linalg.hpp"

#include <algorithm>
#include <utility>

namespace skel {

QMatrix to_rational(const IntMatrix& m) {
  QMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(to_rational(row));
  return out;
}

ZMatrix to_big(const IntMatrix& m) {
  ZMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

template <class M>
static M transpose_impl(const M& m) {
  if (m.empty()) return {};
  M out(m[0].size(), typename M::value_type(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

IntMatrix transpose(const IntMatrix& m) { return transpose_impl(m); }
QMatrix transpose(const QMatrix& m) { return transpose_impl(m); }
ZMatrix transpose(const ZMatrix& m) { return transpose_impl(m); }

ZMatrix multiply(const ZMatrix& a, const ZMatrix& b) {
  std::size_t inner = b.size();
  std::size_t cols = inner ? b[0].size() : 0;
  ZMatrix out(a.size(), std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

ZMatrix identity_matrix(std::size_t n) {
  ZMatrix out(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::Shape, "dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const QVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::Shape, "dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += b[i] * a[i];
  return s;
}

std::int64_t dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::Shape, "dot product length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const QMatrix& m) {
  QMatrix c = m;
  return rref(c).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

QMatrix nullspace(const QMatrix& m, std::size_t cols) {
  QMatrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  QMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b, std::size_t cols) {
  if (m.size() != b.size()) fail(ErrorKind::Shape, "solve: right-hand side length mismatch");
  QMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVector x(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

QMatrix inverse(const QMatrix& m) {
  std::size_t n = m.size();
  QMatrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    if (aug[i].size() != n) fail(ErrorKind::Shape, "inverse of a non-square matrix");
    aug[i].resize(2 * n, 0);
    aug[i][n + i] = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) fail(ErrorKind::Domain, "singular matrix");
  QMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(aug[i].begin() + n, aug[i].end());
  return out;
}

Rational determinant(QMatrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

namespace {

struct SmithWork {
  ZMatrix D, U, V;
  bool track;
  std::size_t rows, cols;

  void row_add(std::size_t dst, std::size_t src, const BigInt& q) {  // row dst += q * row src
    for (std::size_t j = 0; j < cols; ++j)
      if (D[src][j] != 0) D[dst][j] += q * D[src][j];
    if (track)
      for (std::size_t j = 0; j < rows; ++j)
        if (U[src][j] != 0) U[dst][j] += q * U[src][j];
  }
  void col_add(std::size_t dst, std::size_t src, const BigInt& q) {  // col dst += q * col src
    for (std::size_t i = 0; i < rows; ++i)
      if (D[i][src] != 0) D[i][dst] += q * D[i][src];
    if (track)
      for (std::size_t i = 0; i < cols; ++i)
        if (V[i][src] != 0) V[i][dst] += q * V[i][src];
  }
  void row_swap(std::size_t a, std::size_t b) {
    std::swap(D[a], D[b]);
    if (track) std::swap(U[a], U[b]);
  }
  void col_swap(std::size_t a, std::size_t b) {
    for (auto& row : D) std::swap(row[a], row[b]);
    if (track)
      for (auto& row : V) std::swap(row[a], row[b]);
  }
  void row_negate(std::size_t a) {
    for (auto& x : D[a]) x = -x;
    if (track)
      for (auto& x : U[a]) x = -x;
  }

  void run() {
    std::size_t t = 0;
    while (t < rows && t < cols) {
      std::size_t bi = rows, bj = cols;
      BigInt best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (D[i][j] == 0) continue;
          BigInt a = abs(D[i][j]);
          if (bi == rows || a < best) {
            best = a;
            bi = i;
            bj = j;
            if (best == 1) break;
          }
        }
      if (bi == rows) break;
      if (bi != t) row_swap(bi, t);
      if (bj != t) col_swap(bj, t);
      while (true) {
        bool changed = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (D[i][t] == 0) continue;
          BigInt q = D[i][t] / D[t][t];
          row_add(i, t, -q);
          if (D[i][t] != 0) {
            row_swap(i, t);
            changed = true;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (D[t][j] == 0) continue;
          BigInt q = D[t][j] / D[t][t];
          col_add(j, t, -q);
          if (D[t][j] != 0) {
            col_swap(j, t);
            changed = true;
          }
        }
        if (changed) continue;
        bool clean = true;
        for (std::size_t i = t + 1; i < rows && clean; ++i) clean = D[i][t] == 0;
        for (std::size_t j = t + 1; j < cols && clean; ++j) clean = D[t][j] == 0;
        if (!clean) continue;
        bool divisible = true;
        for (std::size_t i = t + 1; i < rows && divisible; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (D[i][j] % D[t][t] != 0) {
              row_add(t, i, 1);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (D[t][t] < 0) row_negate(t);
      ++t;
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const ZMatrix& a) {
  SmithWork w;
  w.rows = a.size();
  w.cols = a.empty() ? 0 : a[0].size();
  w.D = a;
  w.track = true;
  w.U = identity_matrix(w.rows);
  w.V = identity_matrix(w.cols);
  w.run();
  SmithForm out{std::move(w.U), std::move(w.D), std::move(w.V), {}};
  for (std::size_t i = 0; i < out.D.size() && i < (out.D.empty() ? 0 : out.D[0].size()); ++i)
    if (out.D[i][i] != 0) out.diagonal.push_back(out.D[i][i]);
  return out;
}

std::vector<BigInt> invariant_factors(ZMatrix a) {
  SmithWork w;
  w.rows = a.size();
  w.cols = a.empty() ? 0 : a[0].size();
  w.D = std::move(a);
  w.track = false;
  w.run();
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < w.rows && i < w.cols; ++i)
    if (w.D[i][i] != 0) out.push_back(w.D[i][i]);
  return out;
}

LatticeSplit split_lattice(std::size_t n, const std::vector<IntVector>& vectors) {
  ZMatrix a(n, std::vector<BigInt>(vectors.size(), 0));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n) fail(ErrorKind::Shape, "lattice vector length mismatch");
    for (std::size_t i = 0; i < n; ++i) a[i][j] = vectors[j][i];
  }
  LatticeSplit s;
  s.n = n;
  if (vectors.empty()) {
    s.U = identity_matrix(n);
    s.Uinv = identity_matrix(n);
    return s;
  }
  SmithForm f = smith_normal_form(a);
  s.k = f.diagonal.size();
  for (const auto& d : f.diagonal)
    if (d != 1) s.saturated = false;
  s.U = f.U;
  QMatrix uq(n, QVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) uq[i][j] = Rational(f.U[i][j]);
  QMatrix inv = inverse(uq);
  s.Uinv.assign(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.Uinv[i][j] = numerator(inv[i][j]);
  return s;
}

IntVector LatticeSplit::coords(const IntVector& x) const {
  IntVector out(k);
  for (std::size_t i = 0; i < k; ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < n; ++j) s += U[i][j] * x[j];
    out[i] = to_int64(s);
  }
  return out;
}

IntVector LatticeSplit::quotient(const IntVector& x) const {
  IntVector out(n - k);
  for (std::size_t i = k; i < n; ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < n; ++j) s += U[i][j] * x[j];
    out[i - k] = to_int64(s);
  }
  return out;
}

QVector LatticeSplit::coords(const QVector& x) const {
  QVector out(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += Rational(U[i][j]) * x[j];
  return out;
}

QVector LatticeSplit::quotient(const QVector& x) const {
  QVector out(n - k, 0);
  for (std::size_t i = k; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i - k] += Rational(U[i][j]) * x[j];
  return out;
}

IntVector LatticeSplit::lift(const IntVector& y) const {
  IntVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < k; ++j) s += Uinv[i][j] * y[j];
    out[i] = to_int64(s);
  }
  return out;
}

QVector LatticeSplit::lift(const QVector& y) const {
  QVector out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i] += Rational(Uinv[i][j]) * y[j];
  return out;
}

bool LatticeSplit::in_span(const IntVector& x) const {
  for (auto q : quotient(x))
    if (q != 0) return false;
  return true;
}

}  // namespace skel
