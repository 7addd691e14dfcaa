#include "skel/polyhedra.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace skel {

namespace {

using Bits = std::vector<std::uint64_t>;

struct DDRay {
  IntVector v;
  Bits tight;
};

bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

std::size_t popcount(const Bits& a) {
  std::size_t c = 0;
  for (auto w : a) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

IntVector lin_comb(std::int64_t a, const IntVector& x, std::int64_t b, const IntVector& y) {
  IntVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = checked_add(checked_mul(a, x[i]), checked_mul(b, y[i]));
  return primitive(out);
}

// Double description for {x : A x >= 0} in dimension d.
VRep dd_core(std::size_t d, const std::vector<IntVector>& ineqs) {
  std::vector<IntVector> lines;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, 0);
    e[i] = 1;
    lines.push_back(e);
  }
  std::vector<DDRay> rays;
  std::size_t words = (ineqs.size() + 63) / 64;
  Bits processed(words, 0);
  auto set_bit = [](Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); };

  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    const IntVector& a = ineqs[i];
    if (a.size() != d) fail(ErrorKind::Shape, "inequality length mismatch");
    if (std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; })) {
      set_bit(processed, i);
      for (auto& r : rays) set_bit(r.tight, i);
      continue;
    }
    std::size_t piv = lines.size();
    for (std::size_t j = 0; j < lines.size(); ++j)
      if (dot(a, lines[j]) != 0) {
        piv = j;
        break;
      }
    if (piv < lines.size()) {
      IntVector l0 = lines[piv];
      std::int64_t s = dot(a, l0);
      if (s < 0) {
        for (auto& x : l0) x = -x;
        s = -s;
      }
      lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(piv));
      for (auto& l : lines) {
        std::int64_t t = dot(a, l);
        if (t != 0) l = lin_comb(s, l, -t, l0);
      }
      for (auto& r : rays) {
        std::int64_t t = dot(a, r.v);
        if (t != 0) r.v = lin_comb(s, r.v, -t, l0);
        set_bit(r.tight, i);
      }
      rays.push_back(DDRay{l0, processed});
      set_bit(processed, i);
      continue;
    }
    std::vector<std::int64_t> val(rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j) val[j] = dot(a, rays[j].v);
    std::vector<DDRay> next;
    std::size_t need = (d >= lines.size() + 2) ? d - lines.size() - 2 : 0;
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (val[n] >= 0) continue;
        Bits z(words);
        for (std::size_t w = 0; w < words; ++w) z[w] = rays[p].tight[w] & rays[n].tight[w];
        if (popcount(z) < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (subset_of(z, rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        DDRay c{lin_comb(val[p], rays[n].v, -val[n], rays[p].v), z};
        set_bit(c.tight, i);
        next.push_back(std::move(c));
      }
    }
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (val[j] < 0) continue;
      DDRay r = rays[j];
      if (val[j] == 0) set_bit(r.tight, i);
      next.push_back(std::move(r));
    }
    rays = std::move(next);
    set_bit(processed, i);
  }
  VRep out;
  out.lines = std::move(lines);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

std::vector<IntVector> integral_basis(const QMatrix& basis) {
  std::vector<IntVector> out;
  for (const auto& v : basis) out.push_back(primitive(v));
  return out;
}

}  // namespace

VRep h_to_v(std::size_t dim, const std::vector<IntVector>& inequalities, const std::vector<IntVector>& equations) {
  if (equations.empty()) return dd_core(dim, inequalities);
  QMatrix e = to_rational(equations);
  std::vector<IntVector> k = integral_basis(nullspace(e, dim));
  std::vector<IntVector> reduced;
  for (const auto& a : inequalities) {
    IntVector r(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) r[j] = dot(a, k[j]);
    reduced.push_back(std::move(r));
  }
  VRep inner = dd_core(k.size(), reduced);
  auto lift = [&](const IntVector& y) {
    IntVector x(dim, 0);
    for (std::size_t j = 0; j < k.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) x[i] = checked_add(x[i], checked_mul(y[j], k[j][i]));
    return primitive(x);
  };
  VRep out;
  for (const auto& l : inner.lines) out.lines.push_back(lift(l));
  for (const auto& r : inner.rays) out.rays.push_back(lift(r));
  return out;
}

Cone Cone::zero(std::size_t ambient_rank) {
  Cone c;
  c.rank_ = ambient_rank;
  return c;
}

Cone Cone::from_generators(std::size_t ambient_rank, std::vector<IntVector> generators) {
  Cone c;
  c.rank_ = ambient_rank;
  std::vector<IntVector> g;
  for (auto& v : generators) {
    if (v.size() != ambient_rank) fail(ErrorKind::Shape, "generator length does not match ambient rank");
    IntVector p = primitive(v);
    if (gcd_of(p) != 0) g.push_back(std::move(p));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.empty()) return c;
  std::size_t r = rank(g);
  if (r == g.size()) {
    c.gens_ = std::move(g);
    c.dim_ = r;
    return c;
  }
  VRep dual = h_to_v(ambient_rank, g);
  VRep primal = h_to_v(ambient_rank, dual.rays, dual.lines);
  std::vector<IntVector> out;
  if (!primal.lines.empty()) {
    QMatrix l = to_rational(primal.lines);
    auto piv = rref(l);
    l.resize(piv.size());
    QMatrix gram(l.size(), QVector(l.size()));
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t j = 0; j < l.size(); ++j) gram[i][j] = dot(l[i], l[j]);
    for (const auto& row : l) {
      IntVector p = primitive(row);
      out.push_back(p);
      for (auto& x : p) x = -x;
      out.push_back(p);
    }
    for (const auto& ray : primal.rays) {
      QVector rq = to_rational(ray);
      QVector rhs(l.size());
      for (std::size_t i = 0; i < l.size(); ++i) rhs[i] = dot(l[i], rq);
      auto coef = solve(gram, rhs, l.size());
      for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < ambient_rank; ++j) rq[j] -= (*coef)[i] * l[i][j];
      IntVector p = primitive(rq);
      if (gcd_of(p) != 0) out.push_back(p);
    }
    c.lineality_ = l.size();
  } else {
    out = primal.rays;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  c.dim_ = rank(out);
  c.gens_ = std::move(out);
  return c;
}

std::strong_ordering operator<=>(const Cone& a, const Cone& b) {
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  return a.gens_ <=> b.gens_;
}

HRep Cone::h_rep() const {
  VRep dual = h_to_v(rank_, gens_);
  return HRep{std::move(dual.rays), std::move(dual.lines)};
}

bool Cone::contains(const QVector& x) const {
  if (x.size() != rank_) fail(ErrorKind::Shape, "point length does not match ambient rank");
  HRep h = h_rep();
  for (const auto& u : h.inequalities)
    if (dot(u, x) < 0) return false;
  for (const auto& e : h.equations)
    if (dot(e, x) != 0) return false;
  return true;
}

bool Cone::contains(const IntVector& x) const { return contains(to_rational(x)); }

bool Cone::contains_relint(const QVector& x) const {
  HRep h = h_rep();
  for (const auto& u : h.inequalities)
    if (dot(u, x) <= 0) return false;
  for (const auto& e : h.equations)
    if (dot(e, x) != 0) return false;
  return true;
}

Cone dual_cone(const Cone& c) {
  if (c.ambient_rank() > kMaxConeRank)
    fail(ErrorKind::DimensionLimit, "dual_cone supports ambient rank <= " + std::to_string(kMaxConeRank));
  VRep v = h_to_v(c.ambient_rank(), c.generators());
  std::vector<IntVector> g = v.rays;
  for (const auto& l : v.lines) {
    g.push_back(l);
    IntVector m = l;
    for (auto& x : m) x = -x;
    g.push_back(std::move(m));
  }
  return Cone::from_generators(c.ambient_rank(), std::move(g));
}

std::vector<IntVector> hilbert_basis(const Cone& c) {
  if (c.ambient_rank() > kMaxConeRank)
    fail(ErrorKind::DimensionLimit, "hilbert_basis supports ambient rank <= " + std::to_string(kMaxConeRank));
  if (!c.is_pointed()) fail(ErrorKind::Validation, "hilbert_basis of a non-pointed cone (monoid has units)");
  if (c.generators().empty()) return {};
  std::size_t n = c.ambient_rank();
  LatticeSplit split = split_lattice(n, c.generators());
  std::size_t k = split.k;
  std::vector<IntVector> g;
  for (const auto& v : c.generators()) g.push_back(split.coords(v));
  Cone full = Cone::from_generators(k, g);
  HRep h = full.h_rep();
  auto in_cone = [&](const IntVector& x) {
    for (const auto& u : h.inequalities)
      if (dot(u, x) < 0) return false;
    return true;
  };
  std::set<IntVector> cand(g.begin(), g.end());
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      IntMatrix cols;
      for (auto i : idx) cols.push_back(g[i]);
      if (rank(cols) < k) return;
      IntMatrix b = transpose(cols);  // columns are generators
      QMatrix binv = inverse(to_rational(b));
      SmithForm f = smith_normal_form(to_big(b));
      QMatrix uq(k, QVector(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) uq[i][j] = Rational(f.U[i][j]);
      QMatrix uinv = inverse(uq);
      std::vector<std::int64_t> mod(k);
      for (std::size_t i = 0; i < k; ++i) mod[i] = to_int64(f.D[i][i]);
      std::vector<std::int64_t> r(k, 0);
      while (true) {
        QVector x(k, 0);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) x[i] += uinv[i][j] * r[j];
        QVector lam(k, 0);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) lam[i] += binv[i][j] * x[j];
        for (auto& l : lam) {
          BigInt fl = numerator(l) / denominator(l);
          if (l < 0 && Rational(fl) != l) fl -= 1;
          l -= Rational(fl);
        }
        QVector p(k, 0);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) p[i] += Rational(b[i][j]) * lam[j];
        IntVector pi(k);
        for (std::size_t i = 0; i < k; ++i) pi[i] = to_int64(p[i]);
        if (gcd_of(pi) != 0) cand.insert(pi);
        std::size_t pos = 0;
        while (pos < k && ++r[pos] == mod[pos]) r[pos++] = 0;
        if (pos == k) break;
      }
      return;
    }
    for (std::size_t i = start; i < g.size(); ++i) {
      idx[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  std::vector<IntVector> out;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& hh : cand) {
      if (hh == x) continue;
      IntVector d(k);
      for (std::size_t i = 0; i < k; ++i) d[i] = x[i] - hh[i];
      if (in_cone(d)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(split.lift(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cone> faces(const Cone& c) {
  if (!c.is_pointed()) fail(ErrorKind::Validation, "faces() of a non-pointed cone");
  std::size_t n = c.ambient_rank();
  std::set<Cone> found;
  if (c.is_simplicial()) {
    const auto& g = c.generators();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
      std::vector<IntVector> s;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) s.push_back(g[i]);
      found.insert(Cone::from_generators(n, std::move(s)));
    }
    return {found.begin(), found.end()};
  }
  std::vector<Cone> todo{c};
  found.insert(c);
  while (!todo.empty()) {
    Cone cur = todo.back();
    todo.pop_back();
    if (cur.is_simplicial()) {
      for (auto& f : faces(cur)) found.insert(std::move(f));
      continue;
    }
    HRep h = cur.h_rep();
    for (const auto& u : h.inequalities) {
      std::vector<IntVector> s;
      for (const auto& g : cur.generators())
        if (dot(u, g) == 0) s.push_back(g);
      Cone f = Cone::from_generators(n, std::move(s));
      if (found.insert(f).second) todo.push_back(f);
    }
  }
  found.insert(Cone::zero(n));
  return {found.begin(), found.end()};
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) fail(ErrorKind::Shape, "intersect: ambient rank mismatch");
  HRep ha = a.h_rep(), hb = b.h_rep();
  std::vector<IntVector> ineq = ha.inequalities, eq = ha.equations;
  ineq.insert(ineq.end(), hb.inequalities.begin(), hb.inequalities.end());
  eq.insert(eq.end(), hb.equations.begin(), hb.equations.end());
  VRep v = h_to_v(a.ambient_rank(), ineq, eq);
  std::vector<IntVector> g = v.rays;
  for (const auto& l : v.lines) {
    g.push_back(l);
    IntVector m = l;
    for (auto& x : m) x = -x;
    g.push_back(std::move(m));
  }
  return Cone::from_generators(a.ambient_rank(), std::move(g));
}

Fan Fan::zero(std::size_t rank) { return from_cones(rank, {Cone::zero(rank)}); }

Fan Fan::from_cones(std::size_t rank, const std::vector<Cone>& cones) {
  std::set<Cone> all;
  all.insert(Cone::zero(rank));
  for (const auto& c : cones) {
    if (c.ambient_rank() != rank) fail(ErrorKind::Shape, "fan cone has wrong ambient rank");
    if (!c.is_pointed()) fail(ErrorKind::Validation, "fan cones must be pointed");
    if (all.count(c)) continue;
    for (auto& f : faces(c)) all.insert(std::move(f));
  }
  Fan f;
  f.rank_ = rank;
  f.cones_.assign(all.begin(), all.end());
  return f;
}

std::size_t Fan::dimension() const {
  std::size_t d = 0;
  for (const auto& c : cones_) d = std::max(d, c.dimension());
  return d;
}

std::optional<std::size_t> Fan::index_of(const Cone& c) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
  if (it == cones_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - cones_.begin());
}

bool Fan::is_face(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  const auto& a = cones_[i].generators();
  const auto& b = cones_[j].generators();
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::pair<std::size_t, std::size_t>> Fan::face_relation() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (std::size_t j = 0; j < cones_.size(); ++j)
      if (is_face(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<IntVector> Fan::rays() const {
  std::vector<IntVector> out;
  for (const auto& c : cones_)
    if (c.dimension() == 1) out.push_back(c.generators()[0]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = i + 1; j < cones_.size() && maximal; ++j)
      if (is_face(i, j)) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

std::optional<std::string> fan_violation(const Fan& f) {
  for (const auto& c : f.cones()) {
    if (!c.is_pointed()) return "non-pointed cone";
    for (const auto& face : faces(c))
      if (!f.index_of(face)) return "a face of a listed cone is missing";
  }
  auto maxi = f.maximal_cones();
  for (std::size_t a = 0; a < maxi.size(); ++a)
    for (std::size_t b = a + 1; b < maxi.size(); ++b) {
      const Cone& x = f.cones()[maxi[a]];
      const Cone& y = f.cones()[maxi[b]];
      Cone z = intersect(x, y);
      auto zi = f.index_of(z);
      if (!zi) return "intersection of two cones is not a cone of the fan";
      const auto& zg = z.generators();
      if (!std::includes(x.generators().begin(), x.generators().end(), zg.begin(), zg.end()) ||
          !std::includes(y.generators().begin(), y.generators().end(), zg.begin(), zg.end()))
        return "intersection of two cones is not a common face";
    }
  return std::nullopt;
}

Fan product_fan(const Fan& a, const Fan& b) {
  std::size_t n = a.rank() + b.rank();
  std::vector<Cone> cones;
  for (auto i : a.maximal_cones())
    for (auto j : b.maximal_cones()) {
      std::vector<IntVector> g;
      for (const auto& v : a.cones()[i].generators()) {
        IntVector w(n, 0);
        std::copy(v.begin(), v.end(), w.begin());
        g.push_back(std::move(w));
      }
      for (const auto& v : b.cones()[j].generators()) {
        IntVector w(n, 0);
        std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(a.rank()));
        g.push_back(std::move(w));
      }
      cones.push_back(Cone::from_generators(n, std::move(g)));
    }
  return Fan::from_cones(n, cones);
}

Fan star_fan(const Fan& f, const Cone& sigma) {
  auto si = f.index_of(sigma);
  if (!si) fail(ErrorKind::Membership, "star_fan: cone is not in the fan");
  LatticeSplit split = split_lattice(f.rank(), sigma.generators());
  std::size_t q = f.rank() - split.k;
  std::vector<Cone> cones;
  for (std::size_t j = 0; j < f.cones().size(); ++j) {
    if (j != *si && !f.is_face(*si, j)) continue;
    std::vector<IntVector> g;
    for (const auto& v : f.cones()[j].generators()) g.push_back(split.quotient(v));
    cones.push_back(Cone::from_generators(q, std::move(g)));
  }
  return Fan::from_cones(q, cones);
}

std::vector<FanStratum> compactified_fan_strata(const Fan& f) {
  std::vector<FanStratum> out;
  for (const auto& c : f.cones()) out.push_back(FanStratum{c, star_fan(f, c)});
  return out;
}

Fan intersect_fan_subspace(const Fan& f, const std::vector<IntVector>& basis) {
  std::size_t n = f.rank();
  LatticeSplit split = split_lattice(n, basis);
  if (split.k != basis.size()) fail(ErrorKind::Validation, "subspace basis is linearly dependent");
  if (!split.saturated) fail(ErrorKind::Validation, "subspace basis does not span a saturated sublattice");
  std::size_t k = basis.size();
  std::vector<Cone> cones;
  for (auto i : f.maximal_cones()) {
    HRep h = f.cones()[i].h_rep();
    auto pull = [&](const std::vector<IntVector>& rows) {
      std::vector<IntVector> out;
      for (const auto& u : rows) {
        IntVector r(k);
        for (std::size_t j = 0; j < k; ++j) r[j] = dot(u, basis[j]);
        out.push_back(std::move(r));
      }
      return out;
    };
    VRep v = h_to_v(k, pull(h.inequalities), pull(h.equations));
    if (!v.lines.empty()) fail(ErrorKind::Validation, "intersection with the subspace is not pointed");
    cones.push_back(Cone::from_generators(k, v.rays));
  }
  Fan out = Fan::from_cones(k, cones);
  if (auto why = fan_violation(out)) fail(ErrorKind::Validation, "intersect_fan_subspace produced a non-fan: " + *why);
  return out;
}

}  // namespace skel
