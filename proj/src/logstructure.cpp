#include "skel/logstructure.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace skel {

std::string to_string(Mode m) { return m == Mode::Trivial ? "trivial" : "dvf"; }

Mode parse_mode(const std::string& s) {
  if (s == "trivial") return Mode::Trivial;
  if (s == "dvf") return Mode::Dvf;
  fail(ErrorKind::Validation, "unknown mode '" + s + "' (expected trivial or dvf)");
}

const BoundaryComponent* LogChart::find(const std::string& component) const {
  for (const auto& b : boundary)
    if (b.id == component) return &b;
  return nullptr;
}

std::vector<std::string> LogChart::coordinate_components() const {
  std::vector<std::string> out;
  for (const auto& b : boundary)
    if (b.coordinate) out.push_back(b.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::string, std::int64_t>> LogChart::pi_factorization() const {
  std::vector<std::pair<std::string, std::int64_t>> out;
  for (const auto& b : boundary)
    if (b.vertical()) out.emplace_back(b.id, b.pi_multiplicity);
  return out;
}

std::string ray_label(std::size_t i) { return "r" + std::to_string(i); }

std::string snc_point_id(const std::vector<std::string>& components) {
  std::string s = "{";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += ",";
    s += components[i];
  }
  return s + "}";
}

void LogPair::finalize() {
  std::map<std::string, std::pair<Rational, std::int64_t>> seen;
  for (auto& ch : charts) {
    std::set<std::string> ids;
    std::set<std::size_t> coords_used;
    for (auto& b : ch.boundary) {
      if (!ids.insert(b.id).second) fail(ErrorKind::Validation, "chart " + ch.id + ": duplicate component " + b.id);
      if (b.coefficient > 1) fail(ErrorKind::Validation, "component " + b.id + ": coefficient exceeds 1");
      if (b.pi_multiplicity < 0) fail(ErrorKind::Validation, "component " + b.id + ": negative pi multiplicity");
      if (!toric) {
        if (b.equation.arity() != ch.coords.size())
          fail(ErrorKind::Shape, "component " + b.id + ": equation arity does not match chart coordinates");
        if (b.equation.num.is_zero()) fail(ErrorKind::Validation, "component " + b.id + ": zero equation");
        b.coordinate = single_coordinate(b.equation);
        if (b.coordinate && !coords_used.insert(*b.coordinate).second)
          fail(ErrorKind::Validation, "chart " + ch.id + ": two components cut by the same coordinate");
      }
      if (mode == Mode::Dvf && b.vertical() && !b.coordinate)
        fail(ErrorKind::Validation, "component " + b.id + ": vertical components must be single coordinates");
      if (mode == Mode::Trivial && b.vertical())
        fail(ErrorKind::Mode, "component " + b.id + ": pi multiplicity given in trivial mode");
      auto [it, fresh] = seen.emplace(b.id, std::make_pair(b.coefficient, b.pi_multiplicity));
      if (!fresh && it->second != std::make_pair(b.coefficient, b.pi_multiplicity))
        fail(ErrorKind::Validation, "component " + b.id + " has inconsistent data across charts");
    }
  }
  if (toric) return;
  if (strata.empty()) {
    std::set<std::vector<std::string>> s;
    for (const auto& ch : charts) {
      auto cc = ch.coordinate_components();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cc.size()); ++mask) {
        std::vector<std::string> sub;
        for (std::size_t i = 0; i < cc.size(); ++i)
          if (mask & (std::uint64_t{1} << i)) sub.push_back(cc[i]);
        s.insert(sub);
      }
    }
    strata.assign(s.begin(), s.end());
  }
  for (auto& st : strata) {
    std::sort(st.begin(), st.end());
    if (std::adjacent_find(st.begin(), st.end()) != st.end())
      fail(ErrorKind::Validation, "stratum lists a component twice");
    for (const auto& c : st)
      if (!seen.count(c)) fail(ErrorKind::Validation, "stratum mentions unknown component " + c);
  }
  std::sort(strata.begin(), strata.end());
  strata.erase(std::unique(strata.begin(), strata.end()), strata.end());
}

std::vector<std::string> LogPair::component_ids() const {
  std::set<std::string> ids;
  for (const auto& ch : charts)
    for (const auto& b : ch.boundary) ids.insert(b.id);
  return {ids.begin(), ids.end()};
}

const BoundaryComponent& LogPair::component(const std::string& id) const {
  for (const auto& ch : charts)
    if (auto* b = ch.find(id)) return *b;
  fail(ErrorKind::Membership, "unknown component " + id);
}

const LogChart& LogPair::chart(const std::string& id) const {
  for (const auto& ch : charts)
    if (ch.id == id) return ch;
  fail(ErrorKind::Membership, "unknown chart " + id);
}

LogPair make_toric_pair(const Fan& f, std::vector<Rational> coefficients, bool log_calabi_yau) {
  auto rays = f.rays();
  if (coefficients.empty()) coefficients.assign(rays.size(), 1);
  if (coefficients.size() != rays.size()) fail(ErrorKind::Shape, "toric pair needs one coefficient per ray");
  LogPair p;
  p.mode = Mode::Trivial;
  p.toric = ToricData{f, coefficients};
  p.log_calabi_yau = log_calabi_yau;
  LogChart ch;
  ch.id = "torus";
  for (std::size_t i = 0; i < f.rank(); ++i) ch.coords.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < rays.size(); ++i) {
    BoundaryComponent b;
    b.id = ray_label(i);
    b.coefficient = coefficients[i];
    b.equation.num.arity = b.equation.den.arity = f.rank();
    ch.boundary.push_back(std::move(b));
  }
  p.charts.push_back(std::move(ch));
  for (const auto& c : f.cones()) {
    std::vector<std::string> s;
    for (const auto& g : c.generators()) {
      auto it = std::lower_bound(rays.begin(), rays.end(), g);
      s.push_back(ray_label(static_cast<std::size_t>(it - rays.begin())));
    }
    std::sort(s.begin(), s.end());
    p.strata.push_back(std::move(s));
  }
  std::sort(p.strata.begin(), p.strata.end());
  p.finalize();
  return p;
}

namespace {

LaurentRational pad(const LaurentRational& f, std::size_t before, std::size_t after) {
  auto pad_poly = [&](const LaurentPolynomial& p) {
    LaurentPolynomial q;
    q.arity = before + p.arity + after;
    for (auto t : p.terms) {
      IntVector e(before, 0);
      e.insert(e.end(), t.exp.begin(), t.exp.end());
      e.resize(q.arity, 0);
      t.exp = std::move(e);
      q.terms.push_back(std::move(t));
    }
    return q;
  };
  return LaurentRational{pad_poly(f.num), pad_poly(f.den)};
}

}  // namespace

LogPair product_pair(const LogPair& a, const LogPair& b) {
  if (a.mode != Mode::Trivial || b.mode != Mode::Trivial)
    fail(ErrorKind::Mode, "product_pair supports trivial-mode pairs only");
  if (a.toric || b.toric) fail(ErrorKind::Validation, "product_pair expects snc pairs; use product_fan for toric pairs");
  LogPair p;
  p.mode = Mode::Trivial;
  p.log_calabi_yau = a.log_calabi_yau && b.log_calabi_yau;
  for (const auto& ca : a.charts)
    for (const auto& cb : b.charts) {
      LogChart ch;
      ch.id = ca.id + "x" + cb.id;
      for (const auto& c : ca.coords) ch.coords.push_back("1:" + c);
      for (const auto& c : cb.coords) ch.coords.push_back("2:" + c);
      for (const auto& bc : ca.boundary) {
        BoundaryComponent n = bc;
        n.id = "1:" + bc.id;
        n.equation = pad(bc.equation, 0, cb.coords.size());
        ch.boundary.push_back(std::move(n));
      }
      for (const auto& bc : cb.boundary) {
        BoundaryComponent n = bc;
        n.id = "2:" + bc.id;
        n.equation = pad(bc.equation, ca.coords.size(), 0);
        ch.boundary.push_back(std::move(n));
      }
      ch.relative_dimension = ca.relative_dimension + cb.relative_dimension;
      p.charts.push_back(std::move(ch));
    }
  for (const auto& sa : a.strata)
    for (const auto& sb : b.strata) {
      std::vector<std::string> s;
      for (const auto& c : sa) s.push_back("1:" + c);
      for (const auto& c : sb) s.push_back("2:" + c);
      p.strata.push_back(std::move(s));
    }
  p.finalize();
  return p;
}

std::size_t KatoFan::index_of(const std::string& id) const {
  if (auto i = find(id)) return *i;
  fail(ErrorKind::Membership, "unknown Kato point " + id);
}

std::optional<std::size_t> KatoFan::find(const std::string& id) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].id == id) return i;
  return std::nullopt;
}

bool KatoFan::in_closure(std::size_t x, std::size_t y) const { return specializations.count({x, y}) > 0; }

const IntMatrix& KatoFan::specialization(std::size_t x, std::size_t y) const {
  auto it = specializations.find({x, y});
  if (it == specializations.end())
    fail(ErrorKind::Membership, points[x].id + " is not in the closure of " + points[y].id);
  return it->second;
}

namespace {

bool includes_sorted(const std::vector<std::string>& big, const std::vector<std::string>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void sort_points(KatoFan& k) {
  std::vector<std::size_t> order(k.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = k.points[a];
    const auto& pb = k.points[b];
    if (pa.components.size() != pb.components.size()) return pa.components.size() < pb.components.size();
    return pa.components < pb.components;
  });
  std::vector<std::size_t> inv(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = i;
  std::vector<KatoPoint> pts;
  for (auto i : order) pts.push_back(std::move(k.points[i]));
  k.points = std::move(pts);
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> sp;
  for (auto& [key, m] : k.specializations) sp[{inv[key.first], inv[key.second]}] = std::move(m);
  k.specializations = std::move(sp);
}

// Nonnegative integer c with sum c_k g_k = target.
std::optional<IntVector> decompose(const std::vector<IntVector>& gens, const IntVector& target, const IntVector& weight) {
  auto w = [&](const IntVector& v) { return dot(weight, v); };
  std::vector<std::int64_t> gw;
  for (const auto& g : gens) {
    gw.push_back(w(g));
    if (gw.back() <= 0) fail(ErrorKind::Validation, "decompose: weight not positive on generators");
  }
  IntVector c(gens.size(), 0);
  std::function<bool(std::size_t, IntVector&)> rec = [&](std::size_t i, IntVector& rest) -> bool {
    bool zero = std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; });
    if (zero) return true;
    if (i == gens.size()) return false;
    std::int64_t budget = w(rest);
    for (std::int64_t t = budget / gw[i]; t >= 0; --t) {
      IntVector r = rest;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= t * gens[i][j];
      c[i] = t;
      if (rec(i + 1, r)) return true;
    }
    c[i] = 0;
    return false;
  };
  IntVector rest = target;
  if (!rec(0, rest)) return std::nullopt;
  return c;
}

}  // namespace

KatoFan kato_fan_snc(const std::vector<std::string>& components, const std::vector<std::vector<std::string>>& strata) {
  std::set<std::vector<std::string>> fam;
  std::set<std::string> comps(components.begin(), components.end());
  for (auto s : strata) {
    std::sort(s.begin(), s.end());
    for (const auto& c : s)
      if (!comps.count(c)) fail(ErrorKind::Validation, "stratum mentions unknown component " + c);
    fam.insert(s);
  }
  if (!fam.count({})) fail(ErrorKind::Validation, "strata must contain the empty set (generic point)");
  for (const auto& s : fam)
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto t = s;
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
      if (!fam.count(t))
        fail(ErrorKind::Validation, "strata are not closed under the poset: " + snc_point_id(s) + " listed without " +
                                        snc_point_id(t));
    }
  KatoFan k;
  k.kind = KatoKind::Snc;
  for (const auto& s : fam) k.points.push_back(KatoPoint{snc_point_id(s), s, s, std::nullopt, {}});
  for (std::size_t x = 0; x < k.points.size(); ++x)
    for (std::size_t y = 0; y < k.points.size(); ++y) {
      const auto& ix = k.points[x].components;
      const auto& iy = k.points[y].components;
      if (!includes_sorted(ix, iy)) continue;
      IntMatrix m(ix.size(), IntVector(iy.size(), 0));
      for (std::size_t i = 0; i < ix.size(); ++i) {
        auto it = std::find(iy.begin(), iy.end(), ix[i]);
        if (it != iy.end()) m[i][static_cast<std::size_t>(it - iy.begin())] = 1;
      }
      k.specializations[{x, y}] = std::move(m);
    }
  sort_points(k);
  return k;
}

KatoFan kato_fan_toric(const Fan& f) {
  KatoFan k;
  k.kind = KatoKind::Toric;
  auto rays = f.rays();
  std::vector<LatticeSplit> splits;
  for (const auto& c : f.cones()) {
    KatoPoint p;
    for (const auto& g : c.generators()) {
      auto it = std::lower_bound(rays.begin(), rays.end(), g);
      p.components.push_back(ray_label(static_cast<std::size_t>(it - rays.begin())));
    }
    std::vector<std::size_t> order(p.components.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.components[a] < p.components[b]; });
    ToricPointData t;
    std::vector<std::string> labels;
    for (auto i : order) {
      labels.push_back(p.components[i]);
      t.rays.push_back(c.generators()[i]);
    }
    p.components = labels;
    p.id = snc_point_id(p.components);
    LatticeSplit s = split_lattice(f.rank(), c.generators());
    std::size_t kdim = s.k;
    for (std::size_t j = 0; j < kdim; ++j) {
      IntVector e(kdim, 0);
      e[j] = 1;
      t.lattice_basis.push_back(s.lift(e));
    }
    std::vector<IntVector> local;
    for (const auto& r : t.rays) local.push_back(s.coords(r));
    if (kdim > 0) t.generator_forms = hilbert_basis(dual_cone(Cone::from_generators(kdim, local)));
    bool smooth = t.generator_forms.size() == kdim;
    for (std::size_t g = 0; g < t.generator_forms.size(); ++g) {
      std::string label = "h" + std::to_string(g);
      if (smooth) {
        for (std::size_t r = 0; r < local.size(); ++r)
          if (dot(t.generator_forms[g], local[r]) != 0) label = p.components[r] + "*";
      }
      p.generators.push_back(label);
    }
    p.toric = std::move(t);
    splits.push_back(std::move(s));
    k.points.push_back(std::move(p));
  }
  for (std::size_t x = 0; x < k.points.size(); ++x) {
    const auto& px = *k.points[x].toric;
    for (std::size_t y = 0; y < k.points.size(); ++y) {
      if (!includes_sorted(k.points[x].components, k.points[y].components)) continue;
      const auto& py = *k.points[y].toric;
      std::size_t ky = py.lattice_basis.size();
      IntMatrix m;
      IntVector positive(ky, 0);
      for (const auto& r : py.rays) {
        IntVector rc = splits[y].coords(r);
        for (std::size_t j = 0; j < ky; ++j) positive[j] += rc[j];
      }
      for (const auto& h : px.generator_forms) {
        IntVector restricted(ky, 0);
        for (std::size_t j = 0; j < ky; ++j) restricted[j] = dot(h, splits[x].coords(py.lattice_basis[j]));
        // positivity functional on C_y: evaluation at the sum of the rays of y
        auto c = decompose(py.generator_forms, restricted, positive);
        if (!c) fail(ErrorKind::Validation, "toric specialization: restricted generator not in the monoid");
        m.push_back(*c);
      }
      k.specializations[{x, y}] = std::move(m);
    }
  }
  sort_points(k);
  return k;
}

KatoFan kato_fan(const LogPair& pair) {
  if (pair.toric) return kato_fan_toric(pair.toric->fan);
  return kato_fan_snc(pair.component_ids(), pair.strata);
}

KatoFan trace(const KatoFan& k, const std::string& yid) {
  std::size_t y = k.index_of(yid);
  KatoFan out;
  out.kind = k.kind;
  std::vector<std::size_t> keep;
  std::vector<std::vector<std::size_t>> kept_gens;
  for (std::size_t x = 0; x < k.points.size(); ++x) {
    if (!k.in_closure(x, y)) continue;
    const IntMatrix& m = k.specialization(x, y);
    KatoPoint p = k.points[x];
    std::vector<std::size_t> gens;
    p.generators.clear();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (std::all_of(m[i].begin(), m[i].end(), [](std::int64_t v) { return v == 0; })) {
        gens.push_back(i);
        p.generators.push_back(k.points[x].generators[i]);
      }
    std::vector<std::string> comps;
    const auto& iy = k.points[y].components;
    for (const auto& c : k.points[x].components)
      if (!std::binary_search(iy.begin(), iy.end(), c)) comps.push_back(c);
    p.components = comps;
    std::vector<std::size_t> sub;
    for (auto g : gens) sub.push_back(k.points[x].generator_subset.empty() ? g : k.points[x].generator_subset[g]);
    p.generator_subset = sub;
    keep.push_back(x);
    kept_gens.push_back(gens);
    out.points.push_back(std::move(p));
  }
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) {
      if (!k.in_closure(keep[a], keep[b])) continue;
      const IntMatrix& m = k.specialization(keep[a], keep[b]);
      IntMatrix r;
      for (auto i : kept_gens[a]) {
        IntVector row;
        for (auto j : kept_gens[b]) row.push_back(m[i][j]);
        r.push_back(std::move(row));
      }
      out.specializations[{a, b}] = std::move(r);
    }
  return out;
}

KatoFan product(const KatoFan& a, const KatoFan& b) {
  KatoFan out;
  out.kind = KatoKind::Product;
  for (const auto& pa : a.points)
    for (const auto& pb : b.points) {
      KatoPoint p;
      p.id = "(" + pa.id + "," + pb.id + ")";
      for (const auto& c : pa.components) p.components.push_back("1:" + c);
      for (const auto& c : pb.components) p.components.push_back("2:" + c);
      std::sort(p.components.begin(), p.components.end());
      for (const auto& g : pa.generators) p.generators.push_back("1:" + g);
      for (const auto& g : pb.generators) p.generators.push_back("2:" + g);
      out.points.push_back(std::move(p));
    }
  std::size_t nb = b.points.size();
  for (const auto& [ka, ma] : a.specializations)
    for (const auto& [kb, mb] : b.specializations) {
      std::size_t x = ka.first * nb + kb.first;
      std::size_t y = ka.second * nb + kb.second;
      std::size_t ra = ma.size(), rb = mb.size();
      std::size_t ca = a.points[ka.second].rank(), cb = b.points[kb.second].rank();
      IntMatrix m(ra + rb, IntVector(ca + cb, 0));
      for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ca; ++j) m[i][j] = ma[i][j];
      for (std::size_t i = 0; i < rb; ++i)
        for (std::size_t j = 0; j < cb; ++j) m[ra + i][ca + j] = mb[i][j];
      out.specializations[{x, y}] = std::move(m);
    }
  sort_points(out);
  return out;
}

}  // namespace skel
