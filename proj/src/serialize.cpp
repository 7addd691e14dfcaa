#include "skel/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace skel {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Validation, where + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorKind::Validation, where + ": expected an integer");
  return j.get<std::int64_t>();
}

IntVector int_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::Validation, where + ": expected an integer array");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::Validation, where + ": expected a string array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) fail(ErrorKind::Validation, where + ": expected strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Json qvector(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const ExtRational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(ErrorKind::Validation, "rational must be a \"p/q\" string or an integer");
  return parse_rational(j.get<std::string>());
}

ExtRational ext_rational_from_json(const Json& j) {
  if (j.is_number_integer()) return ExtRational(Rational(j.get<std::int64_t>()));
  if (!j.is_string()) fail(ErrorKind::Validation, "weight must be a \"p/q\" string, an integer or \"inf\"");
  return parse_ext_rational(j.get<std::string>());
}

Json to_json(const LaurentPolynomial& p) {
  Json a = Json::array();
  for (const auto& t : p.terms) {
    Json o{{"exp", t.exp}, {"coeff_val", to_json(t.coeff_val)}, {"nonzero", true}};
    if (t.exact) o["exact"] = to_json(*t.exact);
    if (!t.label.empty()) o["label"] = t.label;
    a.push_back(std::move(o));
  }
  return a;
}

Json to_json(const LaurentRational& f) { return Json{{"num", to_json(f.num)}, {"den", to_json(f.den)}}; }

LaurentPolynomial polynomial_from_json(const Json& j, std::size_t arity) {
  if (!j.is_array()) fail(ErrorKind::Validation, "polynomial: expected a list of terms");
  LaurentPolynomial p;
  p.arity = arity;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string where = "term " + std::to_string(i);
    Term t;
    t.exp = int_vector(require(j[i], "exp", where), where + ".exp");
    if (t.exp.size() != arity)
      fail(ErrorKind::Shape, where + ": exponent length " + std::to_string(t.exp.size()) + ", chart has " +
                                 std::to_string(arity) + " coordinates");
    if (j[i].contains("coeff_val")) t.coeff_val = rational_from_json(j[i]["coeff_val"]);
    if (t.coeff_val < 0) fail(ErrorKind::Validation, where + ": negative coefficient valuation");
    if (j[i].contains("nonzero") && !j[i]["nonzero"].get<bool>())
      fail(ErrorKind::Validation, where + ": zero coefficient");
    if (j[i].contains("exact")) {
      t.exact = rational_from_json(j[i]["exact"]);
      if (*t.exact == 0) fail(ErrorKind::Validation, where + ": zero coefficient");
    }
    if (j[i].contains("label")) t.label = j[i]["label"].get<std::string>();
    p.terms.push_back(std::move(t));
  }
  // normalize ordering and merge like terms through add()
  return add(p, LaurentPolynomial{arity, {}});
}

LaurentRational laurent_from_json(const Json& j, std::size_t arity) {
  if (j.is_array()) return LaurentRational::from_polynomial(polynomial_from_json(j, arity));
  LaurentRational f;
  f.num = polynomial_from_json(require(j, "num", "rational function"), arity);
  f.den = j.contains("den") ? polynomial_from_json(j["den"], arity) : LaurentPolynomial::constant(arity);
  if (f.den.is_zero()) fail(ErrorKind::Validation, "rational function: zero denominator");
  return f;
}

Json to_json(const Fan& f) {
  auto rays = f.rays();
  Json cones = Json::array();
  for (auto i : f.maximal_cones()) {
    std::vector<std::size_t> idx;
    for (const auto& g : f.cones()[i].generators())
      idx.push_back(static_cast<std::size_t>(std::find(rays.begin(), rays.end(), g) - rays.begin()));
    std::sort(idx.begin(), idx.end());
    cones.push_back(idx);
  }
  std::sort(cones.begin(), cones.end());
  return Json{{"rank", f.rank()}, {"rays", rays}, {"cones", cones}};
}

Fan fan_from_json(const Json& j) {
  std::size_t rank = static_cast<std::size_t>(as_int(require(j, "rank", "fan"), "fan.rank"));
  std::vector<IntVector> rays;
  for (const auto& r : require(j, "rays", "fan")) {
    rays.push_back(int_vector(r, "fan.rays"));
    if (rays.back().size() != rank) fail(ErrorKind::Shape, "fan: ray length does not match rank");
  }
  std::vector<Cone> cones;
  for (const auto& c : require(j, "cones", "fan")) {
    std::vector<IntVector> g;
    for (const auto& i : c) {
      auto k = as_int(i, "fan.cones");
      if (k < 0 || static_cast<std::size_t>(k) >= rays.size()) fail(ErrorKind::Validation, "fan: ray index out of range");
      g.push_back(rays[static_cast<std::size_t>(k)]);
    }
    cones.push_back(Cone::from_generators(rank, g));
  }
  Fan f = Fan::from_cones(rank, cones);
  if (auto v = fan_violation(f)) fail(ErrorKind::Validation, "fan: " + *v);
  return f;
}

Json to_json(const LogPair& p) {
  Json j{{"mode", to_string(p.mode)}, {"logcy", p.log_calabi_yau}};
  if (p.toric) {
    j["toric_fan"] = to_json(p.toric->fan);
    Json c = Json::array();
    for (const auto& x : p.toric->coefficients) c.push_back(to_json(x));
    j["coefficients"] = c;
    return j;
  }
  Json charts = Json::array();
  for (const auto& ch : p.charts) {
    Json bs = Json::array();
    for (const auto& b : ch.boundary)
      bs.push_back(Json{{"id", b.id},
                        {"coefficient", to_json(b.coefficient)},
                        {"equation", to_json(b.equation)},
                        {"pi_multiplicity", b.pi_multiplicity}});
    charts.push_back(
        Json{{"id", ch.id}, {"coords", ch.coords}, {"boundary", bs}, {"relative_dimension", ch.relative_dimension}});
  }
  j["charts"] = charts;
  j["strata"] = p.strata;
  return j;
}

LogPair pair_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::Validation, "pair: expected an object");
  Mode mode = j.contains("mode") ? parse_mode(j["mode"].get<std::string>()) : Mode::Trivial;
  bool logcy = j.value("logcy", false);
  if (j.contains("toric_fan")) {
    Fan f = fan_from_json(j["toric_fan"]);
    std::vector<Rational> coeffs;
    if (j.contains("coefficients"))
      for (const auto& c : j["coefficients"]) coeffs.push_back(rational_from_json(c));
    LogPair p = make_toric_pair(f, coeffs, logcy);
    p.mode = mode;
    if (mode != Mode::Trivial) fail(ErrorKind::Mode, "toric pairs are supported in trivial mode only");
    return p;
  }
  LogPair p;
  p.mode = mode;
  p.log_calabi_yau = logcy;
  const Json& charts = require(j, "charts", "pair");
  for (std::size_t c = 0; c < charts.size(); ++c) {
    std::string where = "charts[" + std::to_string(c) + "]";
    LogChart ch;
    ch.id = charts[c].value("id", "c" + std::to_string(c + 1));
    ch.coords = string_list(require(charts[c], "coords", where), where + ".coords");
    ch.relative_dimension = charts[c].value("relative_dimension", 0);
    const Json& bs = require(charts[c], "boundary", where);
    for (std::size_t i = 0; i < bs.size(); ++i) {
      std::string bw = where + ".boundary[" + std::to_string(i) + "]";
      BoundaryComponent b;
      b.id = require(bs[i], "id", bw).get<std::string>();
      if (bs[i].contains("coefficient")) b.coefficient = rational_from_json(bs[i]["coefficient"]);
      try {
        b.equation = laurent_from_json(require(bs[i], "equation", bw), ch.coords.size());
      } catch (const Error& e) {
        fail(e.kind(), bw + ".equation: " + e.what());
      }
      b.pi_multiplicity = bs[i].value("pi_multiplicity", std::int64_t{0});
      ch.boundary.push_back(std::move(b));
    }
    p.charts.push_back(std::move(ch));
  }
  if (j.contains("strata"))
    for (const auto& s : j["strata"]) p.strata.push_back(string_list(s, "strata"));
  p.finalize();
  return p;
}

Json to_json(const PluriForm& f) {
  return Json{{"m", f.m}, {"chart", f.chart}, {"dlog", f.dlog}, {"numerator", to_json(f.numerator)}};
}

Json to_json(const Form& f) {
  if (f.expressions.size() == 1) return to_json(f.expressions[0]);
  Json a = Json::array();
  for (const auto& e : f.expressions) a.push_back(to_json(e));
  return Json{{"local", a}};
}

namespace {

PluriForm pluriform_from_json(const Json& j, const LogPair& pair) {
  PluriForm f;
  f.m = static_cast<int>(as_int(require(j, "m", "form"), "form.m"));
  if (f.m < 1) fail(ErrorKind::Validation, "form: m must be positive");
  f.chart = j.value("chart", pair.charts.empty() ? std::string() : pair.charts.front().id);
  const LogChart& ch = pair.chart(f.chart);
  f.dlog = string_list(require(j, "dlog", "form"), "form.dlog");
  std::sort(f.dlog.begin(), f.dlog.end());
  for (const auto& d : f.dlog)
    if (!ch.find(d)) fail(ErrorKind::Validation, "form: dlog component " + d + " is not in chart " + ch.id);
  f.numerator = laurent_from_json(require(j, "numerator", "form"), ch.coords.size());
  return f;
}

}  // namespace

Form form_from_json(const Json& j, const LogPair& pair) {
  Form f;
  if (j.contains("local")) {
    for (const auto& e : j["local"]) f.expressions.push_back(pluriform_from_json(e, pair));
  } else {
    f.expressions.push_back(pluriform_from_json(j, pair));
  }
  for (const auto& e : f.expressions)
    if (e.m != f.expressions[0].m) fail(ErrorKind::Validation, "form: local expressions disagree on m");
  return f;
}

Json to_json(const SkeletonPoint& v) {
  Json w = Json::array();
  for (const auto& x : v.weights) w.push_back(to_json(x));
  return Json{{"kato_point", v.kato_point}, {"weights", w}, {"mode", to_string(v.mode)}};
}

SkeletonPoint point_from_json(const Json& j, Mode default_mode) {
  SkeletonPoint v;
  v.kato_point = require(j, "kato_point", "point").get<std::string>();
  for (const auto& w : require(j, "weights", "point")) v.weights.push_back(ext_rational_from_json(w));
  v.mode = j.contains("mode") ? parse_mode(j["mode"].get<std::string>()) : default_mode;
  return v;
}

Json to_json(const KatoFan& k) {
  Json pts = Json::array();
  for (std::size_t x = 0; x < k.points.size(); ++x) {
    const auto& p = k.points[x];
    Json o{{"id", p.id}, {"components", p.components}, {"generators", p.generators}, {"rank", p.rank()}};
    if (p.toric) o["monoid_generators"] = p.toric->generator_forms;
    Json spec = Json::array();
    for (std::size_t y = 0; y < k.points.size(); ++y)
      if (y != x && k.in_closure(x, y)) spec.push_back(Json{{"to", k.points[y].id}, {"matrix", k.specialization(x, y)}});
    o["specializations"] = spec;
    pts.push_back(std::move(o));
  }
  const char* kind = k.kind == KatoKind::Snc ? "snc" : k.kind == KatoKind::Toric ? "toric" : "product";
  return Json{{"kind", kind}, {"points", pts}};
}

Json to_json(const SubFan& s) {
  Json faces = Json::array();
  for (const auto& c : s.cells) {
    Json cons = Json::array();
    for (const auto& l : c.constraints)
      cons.push_back(Json{{"coeffs", qvector(l.coeffs)}, {"constant", to_json(l.constant)}, {"relation", l.equality ? "=" : ">="}});
    Json verts = Json::array(), rays = Json::array();
    for (const auto& v : c.global_vertices) verts.push_back(qvector(v));
    for (const auto& r : c.global_rays) rays.push_back(qvector(r));
    faces.push_back(Json{{"kato_point", c.kato_point}, {"constraints", cons}, {"vertices", verts}, {"rays", rays}});
  }
  Json j{{"mode", to_string(s.mode)}, {"axes", s.axes}, {"faces", faces}, {"notices", s.notices}};
  j["min_value"] = s.min_value ? to_json(*s.min_value) : Json(nullptr);
  return j;
}

Json to_json(const PolyComplex& c) {
  Json cells = Json::array();
  for (const auto& cell : c.cells) {
    Json vs = Json::array();
    for (const auto& v : cell) vs.push_back(qvector(v));
    cells.push_back(vs);
  }
  return Json{{"axes", c.axes}, {"cells", cells}, {"notices", c.notices}};
}

Json to_json(const GaussRecord& g) {
  return Json{{"log_r", to_json(g.log_r)},
              {"log_triv", to_json(g.log_triv)},
              {"log_disc", to_json(g.log_disc)},
              {"identity_holds", g.identity_holds}};
}

Json to_json(const SimplicialComplex& k) { return Json{{"vertices", k.vertices}, {"facets", k.facets}}; }

SimplicialComplex complex_from_json(const Json& j) {
  auto vertices = string_list(require(j, "vertices", "complex"), "complex.vertices");
  std::vector<Simplex> facets;
  const Json& fs = require(j, "facets", "complex");
  if (!fs.is_array()) fail(ErrorKind::Validation, "complex.facets: expected an array");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Simplex s;
    for (auto v : int_vector(fs[i], "complex.facets[" + std::to_string(i) + "]")) {
      if (v < 0) fail(ErrorKind::Validation, "complex.facets: negative vertex index");
      s.push_back(static_cast<std::size_t>(v));
    }
    facets.push_back(std::move(s));
  }
  return SimplicialComplex::from_facets(std::move(vertices), std::move(facets));
}

GroupAction action_from_json(const Json& j, std::size_t vertices) {
  GroupAction g;
  if (!j.is_array()) fail(ErrorKind::Validation, "action: expected a list of permutations");
  for (std::size_t i = 0; i < j.size(); ++i) {
    Permutation p;
    for (auto v : int_vector(j[i], "action[" + std::to_string(i) + "]")) {
      if (v < 0) fail(ErrorKind::Validation, "action: negative vertex index");
      p.push_back(static_cast<std::size_t>(v));
    }
    g.generators.push_back(std::move(p));
  }
  group_elements(g, vertices);
  return g;
}

Json to_json(const HomologyProfile& h) {
  Json degrees = Json::array();
  for (const auto& g : h) degrees.push_back(Json{{"rank", g.rank}, {"torsion", g.torsion}});
  return Json{{"degree", degrees}};
}

HomologyProfile homology_from_json(const Json& j) {
  const Json& list = j.is_object() ? require(j, "degree", "homology") : j;
  if (!list.is_array()) fail(ErrorKind::Validation, "homology: expected a degree list");
  HomologyProfile h;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string where = "homology[" + std::to_string(i) + "]";
    HomologyGroup g;
    g.rank = static_cast<std::size_t>(as_int(require(list[i], "rank", where), where + ".rank"));
    if (list[i].contains("torsion")) g.torsion = int_vector(list[i]["torsion"], where + ".torsion");
    h.push_back(std::move(g));
  }
  return h;
}

Json to_json(const TateResult& t) {
  Json strata = Json::array();
  for (const auto& s : t.strata)
    strata.push_back(Json{{"J", s.J}, {"j", s.j}, {"exponent", s.exponent}, {"contained", s.contained}, {"divisor", s.divisor}});
  return Json{{"n", t.n},
              {"alpha", t.alpha},
              {"degree", t.degree},
              {"classification", t.classification},
              {"local_model", t.local_model},
              {"strata", strata},
              {"codim_two_boundary", t.codim_two_boundary}};
}

Json to_json(const SphereMapReport& r) {
  return Json{{"n", r.n},
              {"samples", r.samples},
              {"orbit_collapse", r.orbit_collapse},
              {"injective_on_orbits", r.injective_on_orbits},
              {"unit_norm", r.unit_norm},
              {"max_orbit_defect", r.max_orbit_defect},
              {"min_separation", r.min_separation},
              {"max_norm_defect", r.max_norm_defect},
              {"ok", r.ok()}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Validation, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Validation, path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace skel
