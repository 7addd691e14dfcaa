#include "properties.hpp"

#include "skel/serialize.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace skel::properties {

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

Rational random_rational(Rng& rng, std::int64_t lo, std::int64_t hi) { return Rational(uniform(rng, lo, hi), uniform(rng, 1, 6)); }

Rational random_nonzero(Rng& rng, std::int64_t lo, std::int64_t hi) {
  Rational r = 0;
  while (r == 0) r = random_rational(rng, lo, hi);
  return r;
}

// Never the zero polynomial.
LaurentPolynomial random_poly(Rng& rng, std::size_t arity, std::size_t max_terms, std::int64_t lo, std::int64_t hi,
                              bool positive) {
  LaurentPolynomial p{arity, {}};
  while (p.terms.empty()) {
    std::size_t terms = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_terms)));
    for (std::size_t t = 0; t < terms; ++t) {
      IntVector e(arity);
      for (auto& x : e) x = uniform(rng, 0, 3);
      Rational c = positive ? Rational(uniform(rng, 1, 9), uniform(rng, 1, 4)) : random_nonzero(rng, lo, hi);
      p.terms.push_back(Term{e, 0, c, ""});
    }
    p = add(p, LaurentPolynomial{arity, {}});
  }
  return p;
}

std::vector<ExtRational> random_weights(Rng& rng, std::size_t n, bool allow_infinite) {
  std::vector<ExtRational> w;
  for (std::size_t i = 0; i < n; ++i) {
    if (allow_infinite && uniform(rng, 0, 7) == 0) w.push_back(ExtRational::infinity());
    else w.push_back(random_rational(rng, 0, 12));
  }
  return w;
}

std::string show(const std::vector<ExtRational>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + to_string(w[i]);
  return s + ")";
}

Outcome run(const std::string& name, std::uint64_t seed, std::size_t count, const std::function<std::string(Rng&)>& body) {
  Outcome o{name, 0, 0, ""};
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    std::string err;
    try {
      err = body(rng);
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    ++o.instances;
    if (!err.empty()) {
      ++o.failures;
      if (o.first_failure.empty()) o.first_failure = "instance " + std::to_string(i) + ": " + err;
    }
  }
  return o;
}

LogPair snc_pair(std::size_t coords, std::size_t boundary) {
  LogPair p;
  LogChart ch;
  ch.id = "c";
  for (std::size_t i = 0; i < coords; ++i) ch.coords.push_back("z" + std::to_string(i + 1));
  for (std::size_t i = 0; i < boundary; ++i) {
    IntVector e(coords, 0);
    e[i] = 1;
    BoundaryComponent b;
    b.id = "D" + std::to_string(i + 1);
    b.equation = LaurentRational::from_polynomial(LaurentPolynomial::monomial(coords, e));
    ch.boundary.push_back(b);
  }
  p.charts.push_back(ch);
  p.finalize();
  return p;
}

// A simplicial model of S^d drawn from several families.
SimplicialComplex random_sphere(Rng& rng, int d) {
  auto points = [] {
    return SimplicialComplex::from_facets({"p", "q"}, {{0}, {1}});
  };
  switch (uniform(rng, 0, d == 1 ? 3 : 2)) {
    case 0:
      return simplex_boundary(static_cast<std::size_t>(d + 1));
    case 1: {
      SimplicialComplex k = points();
      for (int i = 0; i < d; ++i) k = join(k, points());
      return k;
    }
    case 2: {
      if (d == 0) return points();
      // suspension of a smaller random sphere
      return join(random_sphere(rng, d - 1), points());
    }
    default:
      return cycle_complex(static_cast<std::size_t>(uniform(rng, 3, 8)));
  }
}

}  // namespace

Outcome homogeneity(std::uint64_t seed, std::size_t count) {
  return run("valuation homogeneity", seed, count, [](Rng& rng) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    auto f = random_poly(rng, n, 4, -5, 5, false);
    Rational a = uniform(rng, 0, 5) == 0 ? Rational(0) : random_rational(rng, 1, 20);
    SkeletonPoint v{"x", random_weights(rng, n, a != 0), Mode::Trivial};
    ExtRational base = evaluate(v.weights, f);
    ExtRational scaled = evaluate(scale(a, v).weights, f);
    ExtRational want = base.is_infinite() ? base : ExtRational(a * base.value());
    if (scaled != want) return "a=" + to_string(a) + " w=" + show(v.weights) + ": " + to_string(scaled) + " vs " + to_string(want);
    return std::string();
  });
}

Outcome ultrametric(std::uint64_t seed, std::size_t count) {
  return run("ultrametric bound", seed, count, [](Rng& rng) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    bool positive = uniform(rng, 0, 1) == 0;
    auto f = random_poly(rng, n, 4, -4, 4, positive);
    auto g = random_poly(rng, n, 4, -4, 4, positive);
    if (!positive && uniform(rng, 0, 2) == 0) {
      // force cancellation of some leading terms
      LaurentPolynomial neg = f;
      for (auto& t : neg.terms) t.exact = -*t.exact;
      neg.terms.resize(std::max<std::size_t>(1, neg.terms.size() / 2));
      g = add(g, neg);
    }
    auto w = random_weights(rng, n, false);
    ExtRational vf = evaluate(w, f), vg = evaluate(w, g), vs = evaluate(w, add(f, g));
    ExtRational lower = min(vf, vg);
    if (vs < lower) return "sum below min at w=" + show(w);
    bool disjoint = true;
    for (const auto& t : f.terms)
      for (const auto& u : g.terms) disjoint = disjoint && t.exp != u.exp;
    if ((positive || disjoint) && vs != lower) return "expected equality at w=" + show(w);
    return std::string();
  });
}

Outcome multiplicativity(std::uint64_t seed, std::size_t count) {
  return run("cancellation-free multiplicativity", seed, count, [](Rng& rng) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    auto f = random_poly(rng, n, 4, 1, 9, true);
    auto g = random_poly(rng, n, 4, 1, 9, true);
    auto w = random_weights(rng, n, true);
    ExtRational prod = evaluate(w, multiply(f, g));
    ExtRational sum = evaluate(w, f) + evaluate(w, g);
    if (prod != sum) return "w=" + show(w) + ": " + to_string(prod) + " vs " + to_string(sum);
    return std::string();
  });
}

Outcome retraction(std::uint64_t seed, std::size_t count) {
  return run("retraction inequality", seed, count, [](Rng& rng) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 4));
    std::size_t r = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(n)));
    LogPair pair = snc_pair(n, r);
    KatoFan k = kato_fan(pair);
    QVector w(n);
    for (auto& x : w) x = uniform(rng, 0, 2) == 0 ? Rational(0) : random_rational(rng, 1, 12);
    auto f = LaurentRational::from_polynomial(random_poly(rng, n, 5, -5, 5, false));
    std::vector<ExtRational> we(w.begin(), w.end());
    ExtRational at_w = evaluate(we, f);
    auto v = retract(k, pair.charts[0], w);
    ExtRational at_r = evaluate(k, pair.charts[0], v, f);
    if (at_w < at_r) return "w=" + show(we) + ": " + to_string(at_w) + " < " + to_string(at_r);
    return std::string();
  });
}

Outcome tensor_power_linearity(std::uint64_t seed, std::size_t count) {
  return run("tensor-power weight linearity", seed, count, [](Rng& rng) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    LogPair pair = snc_pair(n, n);
    KatoFan k = kato_fan(pair);
    PluriForm e;
    e.m = static_cast<int>(uniform(rng, 1, 2));
    e.chart = "c";
    for (std::size_t i = 0; i < n; ++i)
      if (uniform(rng, 0, 1)) e.dlog.push_back("D" + std::to_string(i + 1));
    e.numerator = LaurentRational::from_polynomial(random_poly(rng, n, 3, -4, 4, false));
    Form f{{e}};
    unsigned power = static_cast<unsigned>(uniform(rng, 1, 4));
    const KatoPoint& x = k.points[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(k.points.size()) - 1))];
    SkeletonPoint v{x.id, {}, Mode::Trivial};
    for (std::size_t i = 0; i < x.rank(); ++i) v.weights.push_back(random_rational(rng, 0, 10));
    ExtRational one = weight(pair, k, f, v);
    ExtRational many = weight(pair, k, tensor_power(f, power), v);
    ExtRational want = one.is_infinite() ? one : ExtRational(Rational(power) * one.value());
    if (many != want) return "k=" + std::to_string(power) + " at " + x.id + ": " + to_string(many) + " vs " + to_string(want);
    return std::string();
  });
}

Outcome join_spheres(std::uint64_t seed, std::size_t count) {
  return run("join homology of spheres", seed, count, [](Rng& rng) {
    int a = static_cast<int>(uniform(rng, 0, 4));
    int b = static_cast<int>(uniform(rng, 0, 4 - a));
    auto sa = random_sphere(rng, a);
    auto sb = random_sphere(rng, b);
    if (homology(sa) != sphere_profile(a) || homology(sb) != sphere_profile(b)) return std::string("bad sphere model");
    if (homology(join(sa, sb)) != sphere_profile(a + b + 1)) return "S^" + std::to_string(a) + " * S^" + std::to_string(b);
    return std::string();
  });
}

Outcome smith_self_check(std::uint64_t seed, std::size_t count) {
  return run("Smith normal form self-check", seed, count, [](Rng& rng) {
    std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 5)), c = static_cast<std::size_t>(uniform(rng, 1, 5));
    ZMatrix a(r, std::vector<BigInt>(c, 0));
    std::int64_t density = uniform(rng, 1, 3);
    for (auto& row : a)
      for (auto& x : row)
        if (uniform(rng, 0, density) != 0) x = uniform(rng, -9, 9);
    auto s = smith_normal_form(a);
    if (multiply(multiply(s.U, a), s.V) != s.D) return std::string("U A V != D");
    auto det = [](const ZMatrix& m) {
      QMatrix q(m.size(), QVector(m.size()));
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) q[i][j] = Rational(m[i][j]);
      return determinant(q);
    };
    Rational du = det(s.U), dv = det(s.V);
    if ((du != 1 && du != -1) || (dv != 1 && dv != -1)) return std::string("U or V not unimodular");
    std::vector<BigInt> diag;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        if (i != j && s.D[i][j] != 0) return std::string("D not diagonal");
        if (i == j && s.D[i][j] != 0) diag.push_back(s.D[i][j]);
      }
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (diag[i] < 0) return std::string("negative invariant factor");
      if (i + 1 < diag.size() && diag[i + 1] % diag[i] != 0) return std::string("divisibility chain broken");
    }
    // sparse elimination must agree with the dense form
    SparseMatrix m{r, c, std::vector<std::vector<std::pair<std::size_t, std::int64_t>>>(c)};
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i)
        if (a[i][j] != 0) m.columns[j].push_back({i, to_int64(a[i][j])});
    auto inv = smith_invariants(m);
    std::vector<std::int64_t> torsion;
    for (const auto& d : diag)
      if (d > 1) torsion.push_back(to_int64(d));
    if (inv.rank != diag.size() || inv.torsion != torsion) return std::string("sparse invariants disagree");
    return std::string();
  });
}

Outcome hilbert_irreducible(std::uint64_t seed, std::size_t count) {
  return run("Hilbert basis irreducibility", seed, count, [](Rng& rng) {
    std::size_t d = static_cast<std::size_t>(uniform(rng, 2, 3));
    Cone c;
    do {
      std::vector<IntVector> gens(static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(d), static_cast<std::int64_t>(d) + 1)));
      for (auto& g : gens) {
        g.assign(d, 0);
        for (auto& x : g) x = uniform(rng, -3, 3);
      }
      c = Cone::from_generators(d, gens);
    } while (c.dimension() != d || !c.is_pointed());
    auto hb = hilbert_basis(c);
    auto normals = c.h_rep().inequalities;
    // coordinates of a point of C ∩ (h - C) are bounded through d independent facet normals
    IntMatrix basis;
    for (const auto& nrm : normals) {
      auto trial = basis;
      trial.push_back(nrm);
      if (rank(trial) > basis.size()) basis = trial;
      if (basis.size() == d) break;
    }
    QMatrix inv = inverse(to_rational(basis));
    for (const auto& h : hb) {
      if (std::all_of(h.begin(), h.end(), [](std::int64_t x) { return x == 0; })) return std::string("zero in basis");
      if (!c.contains(h)) return std::string("basis element outside the cone");
      std::vector<std::int64_t> bound(d, 0);
      for (std::size_t j = 0; j < d; ++j) {
        Rational b = 0;
        for (std::size_t i = 0; i < d; ++i) b += abs(inv[j][i]) * Rational(dot(basis[i], h));
        bound[j] = to_int64(BigInt(numerator(b) / denominator(b))) + 1;
      }
      IntVector x(d);
      std::function<bool(std::size_t)> split = [&](std::size_t i) {
        if (i == d) {
          if (x == h || std::all_of(x.begin(), x.end(), [](std::int64_t t) { return t == 0; })) return false;
          IntVector rest(d);
          for (std::size_t t = 0; t < d; ++t) rest[t] = h[t] - x[t];
          return c.contains(x) && c.contains(rest);
        }
        for (x[i] = -bound[i]; x[i] <= bound[i]; ++x[i])
          if (split(i + 1)) return true;
        return false;
      };
      if (split(0)) return "reducible element " + Json(h).dump();
    }
    return std::string();
  });
}

std::vector<Outcome> run_all(std::uint64_t seed, std::size_t count) {
  return {homogeneity(seed, count),       ultrametric(seed + 1, count),          multiplicativity(seed + 2, count),
          retraction(seed + 3, count),        tensor_power_linearity(seed + 4, count), join_spheres(seed + 5, count),
          smith_self_check(seed + 6, count),  hilbert_irreducible(seed + 7, count)};
}

}  // namespace skel::properties
