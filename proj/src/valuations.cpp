#include "skel/valuations.hpp"

#include <algorithm>

namespace skel {

ExtRational evaluate(const std::vector<ExtRational>& w, const LaurentPolynomial& f) {
  if (f.is_zero()) fail(ErrorKind::Domain, "valuation of the zero function");
  if (f.arity != w.size()) fail(ErrorKind::Shape, "exponent length does not match the number of weights");
  ExtRational best = ExtRational::infinity();
  for (const auto& t : f.terms) {
    ExtRational val = t.coeff_val;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (t.exp[j] == 0) continue;
      if (w[j].is_infinite()) {
        if (t.exp[j] < 0) fail(ErrorKind::Domain, "negative exponent on a coordinate of infinite weight");
        val = ExtRational::infinity();
        break;
      }
      val = val + ExtRational(w[j].value() * t.exp[j]);
    }
    best = min(best, val);
  }
  return best;
}

ExtRational evaluate(const std::vector<ExtRational>& w, const LaurentRational& f) {
  ExtRational num = evaluate(w, f.num);
  ExtRational den = evaluate(w, f.den);
  if (den.is_infinite()) fail(ErrorKind::Domain, "denominator vanishes identically at the centre");
  if (num.is_infinite()) return num;
  return ExtRational(num.value() - den.value());
}

namespace {

bool is_toric_point(const KatoPoint& p) { return p.toric.has_value() && p.generator_subset.empty(); }

void check_weights(const KatoPoint& p, const SkeletonPoint& v) {
  if (v.weights.size() != p.rank())
    fail(ErrorKind::Shape, "point " + p.id + " needs " + std::to_string(p.rank()) + " weights, got " +
                               std::to_string(v.weights.size()));
  for (const auto& w : v.weights)
    if (w.is_finite() && w.value() < 0) fail(ErrorKind::Domain, "negative weight");
}

}  // namespace

bool chart_contains(const KatoFan& k, const LogChart& chart, std::size_t point) {
  const KatoPoint& p = k.points[point];
  if (is_toric_point(p)) return chart.id == "torus";
  for (const auto& g : p.generators) {
    const BoundaryComponent* b = chart.find(g);
    if (!b || !b->coordinate) return false;
  }
  return true;
}

std::vector<ExtRational> chart_weights(const KatoFan& k, const LogChart& chart, const SkeletonPoint& v) {
  std::size_t x = k.index_of(v.kato_point);
  const KatoPoint& p = k.points[x];
  check_weights(p, v);
  std::vector<ExtRational> out(chart.coords.size(), ExtRational(0));
  if (is_toric_point(p)) {
    const auto& t = *p.toric;
    std::size_t dim = t.lattice_basis.size();
    if (chart.coords.size() != (t.lattice_basis.empty() ? chart.coords.size() : t.lattice_basis[0].size()))
      fail(ErrorKind::Shape, "torus chart dimension mismatch");
    QMatrix h;
    QVector rhs;
    for (std::size_t i = 0; i < t.generator_forms.size(); ++i) {
      if (v.weights[i].is_infinite())
        fail(ErrorKind::Domain, "infinite weight on a toric point; classify the closure point first");
      h.push_back(to_rational(t.generator_forms[i]));
      rhs.push_back(v.weights[i].value());
    }
    auto y = solve(h, rhs, dim);
    if (!y) fail(ErrorKind::Validation, "weights on " + p.id + " are not a monoid homomorphism");
    for (std::size_t j = 0; j < chart.coords.size(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < dim; ++i) s += (*y)[i] * t.lattice_basis[i][j];
      out[j] = s;
    }
    return out;
  }
  if (!chart_contains(k, chart, x)) fail(ErrorKind::Membership, "chart " + chart.id + " does not contain " + p.id);
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const BoundaryComponent* b = chart.find(p.generators[i]);
    out[*b->coordinate] = v.weights[i];
  }
  return out;
}

ExtRational evaluate(const KatoFan& k, const LogChart& chart, const SkeletonPoint& v, const LaurentRational& f) {
  if (f.arity() != chart.coords.size()) fail(ErrorKind::Shape, "function arity does not match chart " + chart.id);
  return evaluate(chart_weights(k, chart, v), f);
}

SkeletonPoint scale(const Rational& a, const SkeletonPoint& v) {
  if (v.mode == Mode::Dvf) fail(ErrorKind::Mode, "dvf-normalized points cannot be rescaled");
  if (a < 0) fail(ErrorKind::Domain, "scaling factor must be nonnegative");
  SkeletonPoint out = v;
  for (auto& w : out.weights) {
    if (w.is_infinite()) {
      if (a == 0) fail(ErrorKind::Domain, "0 * inf is undefined");
      continue;
    }
    w = ExtRational(w.value() * a);
  }
  return out;
}

QVector retract_weights(const QVector& chart_weights, const std::vector<std::size_t>& boundary_indices) {
  for (const auto& w : chart_weights)
    if (w < 0) fail(ErrorKind::Domain, "retract: negative chart weight");
  QVector out;
  for (auto i : boundary_indices) {
    if (i >= chart_weights.size()) fail(ErrorKind::Shape, "retract: boundary index out of range");
    out.push_back(chart_weights[i]);
  }
  return out;
}

SkeletonPoint retract(const KatoFan& k, const LogChart& chart, const QVector& w) {
  if (w.size() != chart.coords.size()) fail(ErrorKind::Shape, "retract: weight count does not match the chart");
  std::vector<std::pair<std::string, Rational>> comp;
  for (const auto& b : chart.boundary)
    if (b.coordinate) {
      const Rational& x = w[*b.coordinate];
      if (x < 0) fail(ErrorKind::Domain, "retract: negative chart weight");
      if (x > 0) comp.emplace_back(b.id, x);
    }
  for (const auto& x : w)
    if (x < 0) fail(ErrorKind::Domain, "retract: negative chart weight");
  std::sort(comp.begin(), comp.end());
  std::vector<std::string> ids;
  SkeletonPoint v;
  for (const auto& [id, x] : comp) {
    ids.push_back(id);
    v.weights.emplace_back(x);
  }
  v.kato_point = snc_point_id(ids);
  if (!k.find(v.kato_point)) fail(ErrorKind::Validation, "retract: " + v.kato_point + " is not a stratum");
  return v;
}

ClosureClass classify_closure_point(const KatoFan& k, const SkeletonPoint& v) {
  std::size_t x = k.index_of(v.kato_point);
  check_weights(k.points[x], v);
  std::vector<bool> finite;
  for (const auto& w : v.weights) finite.push_back(w.is_finite());
  for (std::size_t y = 0; y < k.points.size(); ++y) {
    if (!k.in_closure(x, y)) continue;
    const IntMatrix& m = k.specialization(x, y);
    bool match = true;
    for (std::size_t i = 0; i < m.size() && match; ++i) {
      bool killed = std::all_of(m[i].begin(), m[i].end(), [](std::int64_t e) { return e == 0; });
      match = killed == finite[i];
    }
    if (!match) continue;
    ClosureClass c;
    c.stratum = k.points[y].id;
    c.trace_point.kato_point = v.kato_point;
    c.trace_point.mode = v.mode;
    for (const auto& w : v.weights)
      if (w.is_finite()) c.trace_point.weights.push_back(w);
    return c;
  }
  fail(ErrorKind::Validation, "infinite weights of the point do not match any stratum in the closure of " + v.kato_point);
}

SkeletonPoint normalize_dvf(const SkeletonPoint& v, const std::vector<std::int64_t>& b) {
  if (b.size() != v.weights.size()) fail(ErrorKind::Shape, "normalize_dvf: multiplicity vector length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    if (v.weights[i].is_infinite()) fail(ErrorKind::Domain, "normalize_dvf: v(pi) is infinite");
    s += v.weights[i].value() * b[i];
  }
  if (s == 0) fail(ErrorKind::Domain, "normalize_dvf: v(pi) = 0, the point is not in the dvf skeleton");
  if (s < 0) fail(ErrorKind::Domain, "normalize_dvf: negative v(pi)");
  SkeletonPoint out = v;
  out.mode = Mode::Dvf;
  for (auto& w : out.weights)
    if (w.is_finite()) w = ExtRational(w.value() / s);
  return out;
}

SkeletonPoint specialize(const KatoFan& k, const std::string& xid, const SkeletonPoint& at_y) {
  std::size_t x = k.index_of(xid);
  std::size_t y = k.index_of(at_y.kato_point);
  check_weights(k.points[y], at_y);
  const IntMatrix& m = k.specialization(x, y);
  SkeletonPoint out;
  out.kato_point = xid;
  out.mode = at_y.mode;
  for (const auto& row : m) {
    ExtRational s = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) s = s + (at_y.weights[j].is_infinite() ? at_y.weights[j] : ExtRational(at_y.weights[j].value() * row[j]));
    out.weights.push_back(s);
  }
  return out;
}

}  // namespace skel
