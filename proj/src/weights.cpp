#include "skel/weights.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace skel {

int Form::m() const {
  if (expressions.empty()) fail(ErrorKind::Validation, "form has no local expressions");
  return expressions.front().m;
}

Form tensor_power(const Form& f, unsigned k) {
  if (k == 0) fail(ErrorKind::Domain, "tensor power exponent must be positive");
  Form out;
  for (const auto& e : f.expressions) {
    PluriForm p = e;
    p.m = e.m * static_cast<int>(k);
    p.numerator = power(e.numerator, k);
    out.expressions.push_back(std::move(p));
  }
  return out;
}

std::vector<std::string> global_axes(const LogPair& pair) {
  if (pair.toric) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < pair.toric->fan.rank(); ++i) out.push_back("n" + std::to_string(i + 1));
    return out;
  }
  return pair.component_ids();
}

namespace {

bool is_toric_point(const KatoPoint& p) { return p.toric.has_value() && p.generator_subset.empty(); }

std::size_t axis_index(const std::vector<std::string>& axes, const std::string& a) {
  auto it = std::find(axes.begin(), axes.end(), a);
  if (it == axes.end()) fail(ErrorKind::Membership, "unknown axis " + a);
  return static_cast<std::size_t>(it - axes.begin());
}

QVector mat_apply(const QMatrix& m, const QVector& y) {
  QVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], y);
  return out;
}

IntVector int_row(const QVector& v) { return primitive(v); }

QVector unit(std::size_t n, std::size_t i) {
  QVector e(n, 0);
  e[i] = 1;
  return e;
}

}  // namespace

FaceModel face_model(const LogPair& pair, const KatoFan& k, std::size_t point, const LogChart& chart) {
  const KatoPoint& p = k.points[point];
  auto axes = global_axes(pair);
  FaceModel f;
  f.point = point;
  if (is_toric_point(p)) {
    const auto& t = *p.toric;
    f.dim = t.lattice_basis.size();
    std::size_t n = pair.toric ? pair.toric->fan.rank() : chart.coords.size();
    f.domain = t.generator_forms;
    f.to_coords.assign(n, QVector(f.dim, 0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < f.dim; ++i) f.to_coords[j][i] = t.lattice_basis[i][j];
    f.to_global = f.to_coords;
    for (const auto& h : t.generator_forms) f.to_generators.push_back(to_rational(h));
    if (t.rays.size() == f.dim && f.dim > 0) {
      QMatrix basis_cols = transpose(to_rational(t.lattice_basis));
      QMatrix local(f.dim, QVector(f.dim));
      for (std::size_t r = 0; r < t.rays.size(); ++r) {
        auto y = solve(basis_cols, to_rational(t.rays[r]), f.dim);
        for (std::size_t i = 0; i < f.dim; ++i) local[i][r] = (*y)[i];
      }
      QMatrix inv = inverse(local);
      for (std::size_t r = 0; r < t.rays.size(); ++r) f.component_weight[p.components[r]] = inv[r];
    }
    return f;
  }
  if (!chart_contains(k, chart, point)) fail(ErrorKind::Membership, "chart " + chart.id + " does not contain " + p.id);
  f.dim = p.rank();
  for (std::size_t i = 0; i < f.dim; ++i) {
    IntVector e(f.dim, 0);
    e[i] = 1;
    f.domain.push_back(e);
    f.to_generators.push_back(unit(f.dim, i));
    f.component_weight[p.generators[i]] = unit(f.dim, i);
  }
  f.to_coords.assign(chart.coords.size(), QVector(f.dim, 0));
  f.to_global.assign(axes.size(), QVector(f.dim, 0));
  for (std::size_t i = 0; i < f.dim; ++i) {
    const BoundaryComponent* b = chart.find(p.generators[i]);
    f.to_coords[*b->coordinate][i] = 1;
    f.to_global[axis_index(axes, p.generators[i])][i] = 1;
  }
  return f;
}

const PluriForm* expression_at(const LogPair& pair, const KatoFan& k, const Form& f, std::size_t point) {
  for (const auto& e : f.expressions) {
    const LogChart& ch = e.chart.empty() ? pair.charts.front() : pair.chart(e.chart);
    if (is_toric_point(k.points[point]) || chart_contains(k, ch, point)) return &e;
  }
  return nullptr;
}

void check_normal_form(const LogPair& pair, const PluriForm& form) {
  const LogChart& ch = form.chart.empty() ? pair.charts.front() : pair.chart(form.chart);
  for (const auto& d : form.dlog)
    if (!ch.find(d)) fail(ErrorKind::Validation, "dlog component " + d + " is not in chart " + ch.id);
  if (pair.mode != Mode::Dvf) return;
  std::size_t outside = 0;
  for (const auto& b : ch.boundary)
    if (b.vertical() && !std::binary_search(form.dlog.begin(), form.dlog.end(), b.id)) ++outside;
  if (outside != 1)
    fail(ErrorKind::NormalForm, "chart " + ch.id + ": expected exactly one vertical component outside the dlog set, found " +
                                    std::to_string(outside));
}

namespace {

struct MinGroup {
  Rational factor;
  std::vector<Affine> terms;
};

struct PLFunction {
  Affine base;
  std::vector<MinGroup> groups;
};

void add_polynomial(PLFunction& pl, const LaurentPolynomial& p, const FaceModel& f, const Rational& factor, Mode mode) {
  if (p.is_zero()) fail(ErrorKind::Domain, "valuation of the zero function");
  MinGroup g{factor, {}};
  for (const auto& t : p.terms) {
    if (mode == Mode::Trivial && t.coeff_val != 0)
      fail(ErrorKind::Mode, "nonzero coefficient valuation in trivial mode");
    Affine a{t.coeff_val, QVector(f.dim, 0)};
    for (std::size_t j = 0; j < t.exp.size(); ++j) {
      if (t.exp[j] == 0) continue;
      for (std::size_t i = 0; i < f.dim; ++i) a.l[i] += f.to_coords[j][i] * t.exp[j];
    }
    g.terms.push_back(std::move(a));
  }
  if (g.terms.size() == 1) {
    pl.base.c += factor * g.terms[0].c;
    for (std::size_t i = 0; i < f.dim; ++i) pl.base.l[i] += factor * g.terms[0].l[i];
    return;
  }
  pl.groups.push_back(std::move(g));
}

void add_valuation(PLFunction& pl, const LaurentRational& fn, const FaceModel& f, const Rational& factor, Mode mode) {
  add_polynomial(pl, fn.num, f, factor, mode);
  add_polynomial(pl, fn.den, f, -factor, mode);
}

void add_component_weight(PLFunction& pl, const FaceModel& f, const KatoPoint& p, const std::string& id,
                          const Rational& factor) {
  auto it = f.component_weight.find(id);
  if (it == f.component_weight.end()) {
    if (std::find(p.components.begin(), p.components.end(), id) != p.components.end())
      fail(ErrorKind::Domain, "component weights need a simplicial cone");
    return;
  }
  for (std::size_t i = 0; i < f.dim; ++i) pl.base.l[i] += factor * it->second[i];
}

PLFunction weight_function(const LogPair& pair, const KatoFan& k, const PluriForm& form, const FaceModel& f,
                           const LogChart& ch) {
  PLFunction pl;
  pl.base.l.assign(f.dim, 0);
  Rational m = form.m;
  if (form.numerator.arity() != ch.coords.size())
    fail(ErrorKind::Shape, "numerator arity does not match chart " + ch.id);
  add_valuation(pl, form.numerator, f, 1, pair.mode);
  const KatoPoint& p = k.points[f.point];
  for (const auto& b : ch.boundary) {
    if (std::binary_search(form.dlog.begin(), form.dlog.end(), b.id)) continue;
    if (pair.mode == Mode::Dvf) {
      if (b.vertical()) continue;  // the eliminated coordinate, accounted for by the constant m
    } else if (b.coefficient == 0) {
      // not part of D_red: enters through m * A_(X, D_red)
      if (std::find(p.components.begin(), p.components.end(), b.id) != p.components.end())
        add_component_weight(pl, f, p, b.id, m);
      continue;
    }
    if (b.equation.num.is_zero())
      add_component_weight(pl, f, p, b.id, m);
    else
      add_valuation(pl, b.equation, f, m, pair.mode);
  }
  if (pair.mode == Mode::Dvf) pl.base.c += m;
  return pl;
}

ExtRational eval_pl(const PLFunction& pl, const QVector& y) {
  Rational v = pl.base.c + dot(pl.base.l, y);
  for (const auto& g : pl.groups) {
    std::optional<Rational> best;
    for (const auto& t : g.terms) {
      Rational x = t.c + dot(t.l, y);
      if (!best || x < *best) best = x;
    }
    v += g.factor * *best;
  }
  return v;
}

QVector face_coordinates(const FaceModel& f, const SkeletonPoint& v) {
  QVector w;
  for (const auto& x : v.weights) {
    if (x.is_infinite()) fail(ErrorKind::Domain, "infinite weight; classify the closure point first");
    w.push_back(x.value());
  }
  if (w.size() != f.to_generators.size()) fail(ErrorKind::Shape, "weight count does not match the Kato point");
  auto y = solve(f.to_generators, w, f.dim);
  if (!y) fail(ErrorKind::Validation, "weights are not a monoid homomorphism");
  for (const auto& d : f.domain)
    if (dot(d, *y) < 0) fail(ErrorKind::Domain, "point outside its face");
  return *y;
}

const LogChart& chart_for_point(const LogPair& pair, const KatoFan& k, std::size_t point) {
  for (const auto& ch : pair.charts)
    if (is_toric_point(k.points[point]) || chart_contains(k, ch, point)) return ch;
  fail(ErrorKind::Membership, "no chart contains " + k.points[point].id);
}

Rational slice_value(const LogPair& pair, const FaceModel& f, const QVector& y) {
  Rational s = 0;
  for (const auto& [id, form] : f.component_weight) s += dot(form, y) * pair.component(id).pi_multiplicity;
  return s;
}

}  // namespace

Rational log_discrepancy(const LogPair& pair, const KatoFan& k, const SkeletonPoint& v) {
  if (pair.mode != Mode::Trivial) fail(ErrorKind::Mode, "log_discrepancy is defined in trivial mode");
  std::size_t x = k.index_of(v.kato_point);
  FaceModel f = face_model(pair, k, x, chart_for_point(pair, k, x));
  QVector y = face_coordinates(f, v);
  Rational a = 0;
  for (const auto& c : k.points[x].components) {
    Rational coef = pair.component(c).coefficient;
    if (coef == 1) continue;
    auto it = f.component_weight.find(c);
    if (it == f.component_weight.end()) fail(ErrorKind::Domain, "log discrepancy needs a simplicial cone");
    a += (1 - coef) * dot(it->second, y);
  }
  return a;
}

ExtRational weight(const LogPair& pair, const KatoFan& k, const PluriForm& form, const SkeletonPoint& v) {
  check_normal_form(pair, form);
  const LogChart& ch = form.chart.empty() ? pair.charts.front() : pair.chart(form.chart);
  std::size_t x = k.index_of(v.kato_point);
  FaceModel f = face_model(pair, k, x, ch);
  QVector y = face_coordinates(f, v);
  if (pair.mode == Mode::Dvf && slice_value(pair, f, y) != 1)
    fail(ErrorKind::Validation, "dvf weight needs a normalized point (v(pi) = 1)");
  return eval_pl(weight_function(pair, k, form, f, ch), y);
}

ExtRational weight(const LogPair& pair, const KatoFan& k, const Form& form, const SkeletonPoint& v) {
  const PluriForm* e = expression_at(pair, k, form, k.index_of(v.kato_point));
  if (!e) fail(ErrorKind::Membership, "form has no local expression at " + v.kato_point);
  return weight(pair, k, *e, v);
}

namespace {

struct Region {
  std::size_t point;
  std::vector<IntVector> ineqs;
  std::vector<IntVector> eqs;
  QVector objective;  // homogeneous: (l, c) in dvf mode, l in trivial mode
  Rational min;
};

void for_each_region(const PLFunction& pl, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> choice(pl.groups.size(), 0);
  while (true) {
    fn(choice);
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == pl.groups[i].terms.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
}

QVector homog(const Affine& a, bool dvf) {
  QVector v = a.l;
  if (dvf) v.push_back(a.c);
  return v;
}

PolyCell cell_from(const FaceModel& f, const VRep& v, bool dvf) {
  PolyCell c;
  if (!dvf) c.global_vertices.push_back(QVector(f.to_global.size(), 0));
  for (const auto& r : v.rays) {
    QVector y(r.begin(), r.end() - (dvf ? 1 : 0));
    if (dvf && r.back() > 0) {
      for (auto& x : y) x /= r.back();
      c.global_vertices.push_back(mat_apply(f.to_global, y));
    } else {
      c.global_rays.push_back(mat_apply(f.to_global, y));
    }
  }
  return c;
}

}  // namespace

KsResult ks_skeleton(const LogPair& pair, const KatoFan& k, const Form& form) {
  bool dvf = pair.mode == Mode::Dvf;
  for (const auto& e : form.expressions) check_normal_form(pair, e);
  KsResult result;
  std::vector<PolyCell> cells;
  std::vector<std::string> notices;
  std::vector<Region> regions;
  std::vector<FaceModel> models;
  for (std::size_t x = 0; x < k.points.size(); ++x) {
    const PluriForm* e = expression_at(pair, k, form, x);
    if (!e) {
      notices.push_back("no local expression of the form at " + k.points[x].id);
      continue;
    }
    const LogChart& ch = e->chart.empty() ? pair.charts.front() : pair.chart(e->chart);
    FaceModel f = face_model(pair, k, x, ch);
    PLFunction pl = weight_function(pair, k, *e, f, ch);
    std::size_t dim = f.dim + (dvf ? 1 : 0);
    std::vector<IntVector> base_ineqs;
    for (const auto& d : f.domain) {
      IntVector r = d;
      if (dvf) r.push_back(0);
      base_ineqs.push_back(r);
    }
    std::vector<IntVector> base_eqs;
    if (dvf) {
      IntVector s(dim, 0);
      s.back() = 1;
      base_ineqs.push_back(s);
      QVector b(dim, 0);
      for (const auto& [id, form_y] : f.component_weight)
        for (std::size_t i = 0; i < f.dim; ++i) b[i] += form_y[i] * pair.component(id).pi_multiplicity;
      b.back() = -1;
      base_eqs.push_back(int_row(b));
    }
    bool stop = false;
    for_each_region(pl, [&](const std::vector<std::size_t>& choice) {
      if (stop) return;
      std::vector<IntVector> ineqs = base_ineqs;
      Affine total = pl.base;
      for (std::size_t g = 0; g < pl.groups.size(); ++g) {
        const Affine& act = pl.groups[g].terms[choice[g]];
        for (std::size_t j = 0; j < pl.groups[g].terms.size(); ++j) {
          if (j == choice[g]) continue;
          const Affine& other = pl.groups[g].terms[j];
          Affine d{other.c - act.c, QVector(f.dim)};
          for (std::size_t i = 0; i < f.dim; ++i) d.l[i] = other.l[i] - act.l[i];
          ineqs.push_back(int_row(homog(d, dvf)));
        }
        total.c += pl.groups[g].factor * act.c;
        for (std::size_t i = 0; i < f.dim; ++i) total.l[i] += pl.groups[g].factor * act.l[i];
      }
      QVector obj = homog(total, dvf);
      VRep v = h_to_v(dim, ineqs, base_eqs);
      if (!v.lines.empty()) fail(ErrorKind::Validation, "face domain is not pointed");
      if (!dvf) {
        for (const auto& r : v.rays) {
          Rational s = dot(r, obj);
          if (s < 0) {
            result.offending = OffendingRay{k.points[x].id, mat_apply(f.to_global, to_rational(r)), s};
            stop = true;
            return;
          }
        }
        std::vector<IntVector> eqs = base_eqs;
        eqs.push_back(int_row(obj));
        cells.push_back(cell_from(f, h_to_v(dim, ineqs, eqs), false));
        return;
      }
      std::optional<Rational> best;
      for (const auto& r : v.rays) {
        Rational s = dot(r, obj);
        if (r.back() == 0) {
          if (s < 0) {
            QVector y(r.begin(), r.end() - 1);
            result.offending = OffendingRay{k.points[x].id, mat_apply(f.to_global, y), s};
            stop = true;
            return;
          }
          continue;
        }
        Rational val = s / r.back();
        if (!best || val < *best) best = val;
      }
      if (!best) return;
      regions.push_back(Region{models.size(), ineqs, base_eqs, obj, *best});
    });
    if (stop) return result;
    models.push_back(f);
  }
  std::optional<Rational> min_value;
  if (dvf) {
    for (const auto& r : regions)
      if (!min_value || r.min < *min_value) min_value = r.min;
    for (const auto& r : regions) {
      if (r.min != *min_value) continue;
      const FaceModel& f = models[r.point];
      QVector eq = r.objective;
      eq.back() -= *min_value;
      std::vector<IntVector> eqs = r.eqs;
      eqs.push_back(int_row(eq));
      cells.push_back(cell_from(f, h_to_v(f.dim + 1, r.ineqs, eqs), true));
    }
  } else {
    min_value = Rational(0);
  }
  SubFan s = make_subfan(pair, k, pair.mode, std::move(cells));
  s.min_value = min_value;
  s.notices.insert(s.notices.begin(), notices.begin(), notices.end());
  result.skeleton = std::move(s);
  return result;
}

namespace {

QVector canonical_ray(const QVector& r) { return to_rational(primitive(r)); }

struct HomogHRep {
  HRep h;
};

HRep cell_hrep(const std::vector<QVector>& verts, const std::vector<QVector>& rays, std::size_t n) {
  std::vector<IntVector> gens;
  for (const auto& v : verts) {
    QVector w = v;
    w.push_back(1);
    gens.push_back(primitive(w));
  }
  for (const auto& r : rays) {
    QVector w = r;
    w.push_back(0);
    gens.push_back(primitive(w));
  }
  return Cone::from_generators(n + 1, gens).h_rep();
}

bool hrep_contains(const HRep& h, const QVector& p) {
  for (const auto& u : h.inequalities)
    if (dot(u, p) < 0) return false;
  for (const auto& e : h.equations)
    if (dot(e, p) != 0) return false;
  return true;
}

bool contains_cell(const HRep& h, const PolyCell& small) {
  for (auto v : small.global_vertices) {
    v.push_back(1);
    if (!hrep_contains(h, v)) return false;
  }
  for (auto r : small.global_rays) {
    r.push_back(0);
    if (!hrep_contains(h, r)) return false;
  }
  return true;
}

}  // namespace

bool cell_contains(const PolyCell& big, const PolyCell& small) {
  std::size_t n = !big.global_vertices.empty() ? big.global_vertices[0].size()
                                               : (!big.global_rays.empty() ? big.global_rays[0].size() : 0);
  return contains_cell(cell_hrep(big.global_vertices, big.global_rays, n), small);
}

SubFan make_subfan(const LogPair& pair, const KatoFan& k, Mode mode, std::vector<PolyCell> cells) {
  SubFan out;
  out.mode = mode;
  out.axes = global_axes(pair);
  std::size_t n = out.axes.size();
  std::set<std::pair<std::vector<QVector>, std::vector<QVector>>> seen;
  std::vector<PolyCell> uniq;
  for (auto& c : cells) {
    for (auto& r : c.global_rays) r = canonical_ray(r);
    c.global_rays.erase(std::remove_if(c.global_rays.begin(), c.global_rays.end(),
                                       [](const QVector& r) {
                                         return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
                                       }),
                        c.global_rays.end());
    std::sort(c.global_rays.begin(), c.global_rays.end());
    c.global_rays.erase(std::unique(c.global_rays.begin(), c.global_rays.end()), c.global_rays.end());
    std::sort(c.global_vertices.begin(), c.global_vertices.end());
    c.global_vertices.erase(std::unique(c.global_vertices.begin(), c.global_vertices.end()), c.global_vertices.end());
    if (c.global_vertices.empty()) continue;
    if (seen.insert({c.global_vertices, c.global_rays}).second) uniq.push_back(std::move(c));
  }
  std::vector<HRep> hreps;
  for (const auto& c : uniq) hreps.push_back(cell_hrep(c.global_vertices, c.global_rays, n));
  std::vector<bool> drop(uniq.size(), false);
  for (std::size_t i = 0; i < uniq.size(); ++i)
    for (std::size_t j = 0; j < uniq.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (contains_cell(hreps[j], uniq[i])) drop[i] = true;
    }
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    if (drop[i]) continue;
    PolyCell c = std::move(uniq[i]);
    std::vector<std::size_t> local_axes;
    if (!pair.toric) {
      std::vector<std::string> support;
      for (std::size_t a = 0; a < n; ++a) {
        bool nz = false;
        for (const auto& v : c.global_vertices) nz = nz || v[a] != 0;
        for (const auto& r : c.global_rays) nz = nz || r[a] != 0;
        if (nz) support.push_back(out.axes[a]);
      }
      c.kato_point = snc_point_id(support);
      if (!k.find(c.kato_point)) fail(ErrorKind::Validation, "cell support " + c.kato_point + " is not a stratum");
      for (const auto& s : support) local_axes.push_back(axis_index(out.axes, s));
    } else {
      for (std::size_t a = 0; a < n; ++a) local_axes.push_back(a);
      for (const auto& p : k.points) {
        Cone sigma = Cone::from_generators(n, p.toric->rays);
        bool all = true;
        for (const auto& v : c.global_vertices) all = all && sigma.contains(v);
        for (const auto& r : c.global_rays) all = all && sigma.contains(r);
        if (all) {
          c.kato_point = p.id;
          break;
        }
      }
    }
    auto restrict_to = [&](const QVector& v) {
      QVector o;
      for (auto a : local_axes) o.push_back(v[a]);
      return o;
    };
    for (const auto& v : c.global_vertices) c.vertices.push_back(restrict_to(v));
    for (const auto& r : c.global_rays) c.rays.push_back(restrict_to(r));
    HRep h = cell_hrep(c.vertices, c.rays, local_axes.size());
    auto push = [&](const IntVector& row, bool eq) {
      LinearConstraint lc;
      lc.coeffs = to_rational(IntVector(row.begin(), row.end() - 1));
      lc.constant = row.back();
      lc.equality = eq;
      if (std::all_of(lc.coeffs.begin(), lc.coeffs.end(), [](const Rational& x) { return x == 0; })) return;
      c.constraints.push_back(std::move(lc));
    };
    for (const auto& u : h.inequalities) push(u, false);
    for (const auto& e : h.equations) push(e, true);
    out.cells.push_back(std::move(c));
  }
  std::sort(out.cells.begin(), out.cells.end(), [](const PolyCell& a, const PolyCell& b) {
    if (a.kato_point.size() != b.kato_point.size()) return a.kato_point.size() < b.kato_point.size();
    if (a.kato_point != b.kato_point) return a.kato_point < b.kato_point;
    if (a.global_vertices != b.global_vertices) return a.global_vertices < b.global_vertices;
    return a.global_rays < b.global_rays;
  });
  return out;
}

bool same_cells(const SubFan& a, const SubFan& b) {
  auto key = [](const SubFan& s) {
    std::set<std::pair<std::vector<QVector>, std::vector<QVector>>> out;
    for (const auto& c : s.cells) out.insert({c.global_vertices, c.global_rays});
    return out;
  };
  return a.axes == b.axes && key(a) == key(b);
}

SubFan essential_logcy(const LogPair& pair, const KatoFan& k) {
  auto axes = global_axes(pair);
  std::vector<PolyCell> cells;
  for (std::size_t x = 0; x < k.points.size(); ++x) {
    const KatoPoint& p = k.points[x];
    bool all_one = true;
    for (const auto& c : p.components) all_one = all_one && pair.component(c).coefficient == 1;
    if (!all_one) continue;
    PolyCell c;
    c.global_vertices.push_back(QVector(axes.size(), 0));
    if (is_toric_point(p)) {
      for (const auto& r : p.toric->rays) c.global_rays.push_back(to_rational(r));
    } else {
      for (const auto& comp : p.components) c.global_rays.push_back(unit(axes.size(), axis_index(axes, comp)));
    }
    cells.push_back(std::move(c));
  }
  return make_subfan(pair, k, Mode::Trivial, std::move(cells));
}

SubFan essential_skeleton(const LogPair& pair, const KatoFan& k, const std::vector<Form>& forms) {
  if (forms.empty()) {
    SubFan s;
    s.mode = pair.mode;
    s.axes = global_axes(pair);
    s.notices.push_back("empty form list: the essential skeleton is empty");
    return s;
  }
  std::vector<PolyCell> cells;
  for (const auto& f : forms) {
    KsResult r = ks_skeleton(pair, k, f);
    if (r.offending) fail(ErrorKind::Validation, "form is not regular: weight unbounded below at " + r.offending->kato_point);
    for (auto& c : r.skeleton->cells) cells.push_back(std::move(c));
  }
  return make_subfan(pair, k, pair.mode, std::move(cells));
}

namespace {

// Substitutes zero for the given coordinates and deletes them.
LaurentPolynomial restrict_poly(const LaurentPolynomial& p, const std::vector<std::size_t>& coords) {
  LaurentPolynomial out;
  out.arity = p.arity - coords.size();
  for (const auto& t : p.terms) {
    bool vanishes = false;
    for (auto c : coords) {
      if (t.exp[c] < 0) fail(ErrorKind::Domain, "pole along the stratum; restriction undefined");
      if (t.exp[c] > 0) vanishes = true;
    }
    if (vanishes) continue;
    Term n = t;
    n.exp.clear();
    for (std::size_t j = 0; j < t.exp.size(); ++j)
      if (std::find(coords.begin(), coords.end(), j) == coords.end()) n.exp.push_back(t.exp[j]);
    out.terms.push_back(std::move(n));
  }
  return out;
}

std::vector<std::size_t> stratum_coords(const LogChart& ch, const std::vector<std::string>& stratum) {
  std::vector<std::size_t> out;
  for (const auto& s : stratum) {
    const BoundaryComponent* b = ch.find(s);
    if (!b || !b->coordinate) return {};
    out.push_back(*b->coordinate);
  }
  return out;
}

}  // namespace

LogPair trace_pair(const LogPair& pair, std::vector<std::string> stratum) {
  if (pair.toric) fail(ErrorKind::Validation, "trace_pair expects an snc pair");
  std::sort(stratum.begin(), stratum.end());
  if (!std::binary_search(pair.strata.begin(), pair.strata.end(), stratum))
    fail(ErrorKind::Membership, snc_point_id(stratum) + " is not a stratum");
  LogPair out;
  out.mode = pair.mode;
  out.log_calabi_yau = pair.log_calabi_yau;
  for (const auto& ch : pair.charts) {
    auto coords = stratum_coords(ch, stratum);
    if (coords.size() != stratum.size()) continue;
    LogChart n;
    n.id = ch.id;
    n.relative_dimension = ch.relative_dimension;
    for (std::size_t j = 0; j < ch.coords.size(); ++j)
      if (std::find(coords.begin(), coords.end(), j) == coords.end()) n.coords.push_back(ch.coords[j]);
    for (const auto& b : ch.boundary) {
      if (std::binary_search(stratum.begin(), stratum.end(), b.id)) continue;
      BoundaryComponent nb = b;
      nb.equation = LaurentRational{restrict_poly(b.equation.num, coords), restrict_poly(b.equation.den, coords)};
      if (nb.equation.den.is_zero()) fail(ErrorKind::Domain, "component equation denominator vanishes on the stratum");
      if (nb.equation.num.is_zero()) fail(ErrorKind::Validation, "component " + b.id + " contains the stratum");
      bool constant = true;
      for (const auto& t : nb.equation.num.terms)
        for (auto e : t.exp) constant = constant && e == 0;
      if (constant) continue;  // does not meet the stratum in this chart
      nb.coordinate.reset();
      n.boundary.push_back(std::move(nb));
    }
    out.charts.push_back(std::move(n));
  }
  if (out.charts.empty()) fail(ErrorKind::Membership, "no chart has the stratum cut by coordinates");
  for (const auto& s : pair.strata) {
    if (!std::includes(s.begin(), s.end(), stratum.begin(), stratum.end())) continue;
    std::vector<std::string> r;
    std::set_difference(s.begin(), s.end(), stratum.begin(), stratum.end(), std::back_inserter(r));
    out.strata.push_back(std::move(r));
  }
  out.finalize();
  return out;
}

PluriForm residue(const LogPair& pair, const PluriForm& form, std::vector<std::string> stratum) {
  std::sort(stratum.begin(), stratum.end());
  for (const auto& s : stratum)
    if (!std::binary_search(form.dlog.begin(), form.dlog.end(), s))
      fail(ErrorKind::Domain, "residue along " + s + " is undefined: no log pole there");
  const LogChart& ch = form.chart.empty() ? pair.charts.front() : pair.chart(form.chart);
  auto coords = stratum_coords(ch, stratum);
  if (coords.size() != stratum.size())
    fail(ErrorKind::Validation, "residue stratum must be cut by coordinates of chart " + ch.id);
  PluriForm out;
  out.m = form.m;
  out.chart = ch.id;
  std::set_difference(form.dlog.begin(), form.dlog.end(), stratum.begin(), stratum.end(), std::back_inserter(out.dlog));
  out.numerator.num = restrict_poly(form.numerator.num, coords);
  out.numerator.den = restrict_poly(form.numerator.den, coords);
  if (out.numerator.den.is_zero()) fail(ErrorKind::Domain, "denominator vanishes on the stratum");
  if (out.numerator.num.is_zero()) fail(ErrorKind::Domain, "residue is zero");
  return out;
}

std::optional<PolyCell> closure_fiber(const PolyCell& cell, const std::vector<std::string>& axes,
                                      const std::vector<std::string>& stratum,
                                      const std::vector<std::string>& target_axes) {
  std::vector<std::size_t> j;
  for (const auto& s : stratum) j.push_back(axis_index(axes, s));
  QVector cover(axes.size(), 0);
  for (const auto& r : cell.global_rays) {
    bool within = true;
    for (std::size_t a = 0; a < axes.size(); ++a)
      if (r[a] != 0 && std::find(j.begin(), j.end(), a) == j.end()) within = false;
    if (!within) continue;
    for (std::size_t a = 0; a < axes.size(); ++a) cover[a] += r[a];
  }
  for (auto a : j)
    if (cover[a] <= 0) return std::nullopt;
  std::vector<std::size_t> t;
  for (const auto& s : target_axes) t.push_back(axis_index(axes, s));
  PolyCell out;
  auto proj = [&](const QVector& v) {
    QVector o;
    for (auto a : t) o.push_back(v[a]);
    return o;
  };
  for (const auto& v : cell.global_vertices) out.global_vertices.push_back(proj(v));
  for (const auto& r : cell.global_rays) out.global_rays.push_back(proj(r));
  return out;
}

PolyComplex slice_dvf(const SubFan& trivial, const std::map<std::string, std::int64_t>& b) {
  PolyComplex out;
  out.axes = trivial.axes;
  QVector bv(out.axes.size(), 0);
  for (std::size_t a = 0; a < out.axes.size(); ++a) {
    auto it = b.find(out.axes[a]);
    if (it != b.end()) bv[a] = it->second;
  }
  std::vector<PolyCell> cells;
  for (const auto& c : trivial.cells) {
    for (const auto& v : c.global_vertices)
      if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }))
        fail(ErrorKind::Validation, "slice_dvf expects cones (trivial-mode skeleton)");
    PolyCell p;
    bool noncompact = false;
    for (const auto& r : c.global_rays) {
      Rational beta = dot(bv, r);
      if (beta < 0) fail(ErrorKind::Domain, "negative pi multiplicity on a ray");
      if (beta == 0) {
        noncompact = true;
        continue;
      }
      QVector v = r;
      for (auto& x : v) x /= beta;
      p.global_vertices.push_back(std::move(v));
    }
    if (p.global_vertices.empty()) {
      if (!c.global_rays.empty()) out.notices.push_back("face " + c.kato_point + " is purely horizontal; excluded");
      continue;
    }
    if (noncompact) out.notices.push_back("face " + c.kato_point + " has horizontal directions; compact part kept");
    std::sort(p.global_vertices.begin(), p.global_vertices.end());
    cells.push_back(std::move(p));
  }
  std::vector<bool> drop(cells.size(), false);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < cells.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (cells[i].global_vertices == cells[j].global_vertices && i < j) continue;
      if (cell_contains(cells[j], cells[i])) drop[i] = true;
    }
  std::set<std::vector<QVector>> seen;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!drop[i] && seen.insert(cells[i].global_vertices).second) out.cells.push_back(cells[i].global_vertices);
  return out;
}

GaussRecord gauss_weight_identity(const Rational& c, std::int64_t a, std::int64_t l, std::int64_t m) {
  if (c <= 0 || a < 0 || l < 1 || m < 1) fail(ErrorKind::Domain, "gauss: need c > 0, a >= 0, l >= 1, m >= 1");
  GaussRecord r;
  r.log_r = -c * (a + 1);
  r.log_triv = -c * m * (1 + (l - 1) * a);
  r.log_disc = -c * m * (2 + l * a);
  r.identity_holds = -m * r.log_r + r.log_disc == r.log_triv;
  return r;
}

}  // namespace skel
