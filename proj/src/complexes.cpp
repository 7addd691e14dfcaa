#include "skel/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace skel {

namespace {

SimplicialComplex make_complex(std::vector<std::string> vertices, std::vector<Simplex> facets) {
  SimplicialComplex k;
  k.vertices = std::move(vertices);
  k.facets = std::move(facets);
  std::sort(k.facets.begin(), k.facets.end());
  return k;
}

// Sorts the list in place and returns the sign of the sorting permutation.
int sort_with_sign(std::vector<std::size_t>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return sign;
}

Simplex image(const Permutation& g, const Simplex& s) {
  Simplex out;
  out.reserve(s.size());
  for (auto v : s) out.push_back(g[v]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string simplex_label(const SimplicialComplex& k, const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += k.vertices[s[i]];
  }
  return out + "]";
}

}  // namespace

SimplicialComplex SimplicialComplex::from_facets(std::vector<std::string> vertices, std::vector<Simplex> facets) {
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) fail(ErrorKind::Validation, "facet repeats a vertex");
    if (f.empty()) fail(ErrorKind::Validation, "empty facet");
    for (auto v : f)
      if (v >= vertices.size()) fail(ErrorKind::Validation, "facet vertex index out of range");
  }
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  std::vector<std::vector<std::size_t>> by_vertex(vertices.size());
  for (std::size_t i = 0; i < facets.size(); ++i)
    for (auto v : facets[i]) by_vertex[v].push_back(i);
  std::vector<Simplex> keep;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    bool contained = false;
    for (auto j : by_vertex[facets[i][0]]) {
      if (j == i || facets[j].size() <= facets[i].size()) continue;
      if (std::includes(facets[j].begin(), facets[j].end(), facets[i].begin(), facets[i].end())) {
        contained = true;
        break;
      }
    }
    if (!contained) keep.push_back(facets[i]);
  }
  std::vector<bool> used(vertices.size(), false);
  for (const auto& f : keep)
    for (auto v : f) used[v] = true;
  for (std::size_t v = 0; v < used.size(); ++v)
    if (!used[v]) fail(ErrorKind::Validation, "vertex " + vertices[v] + " lies in no facet");
  return make_complex(std::move(vertices), std::move(keep));
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (const auto& f : facets) d = std::max(d, static_cast<int>(f.size()) - 1);
  return d;
}

std::vector<std::vector<Simplex>> SimplicialComplex::simplices() const {
  std::vector<std::set<Simplex>> sets(static_cast<std::size_t>(dimension() + 1));
  for (const auto& f : facets) {
    if (f.size() > 20) fail(ErrorKind::DimensionLimit, "facet too large to enumerate faces");
    for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      sets[s.size() - 1].insert(std::move(s));
    }
  }
  std::vector<std::vector<Simplex>> out;
  for (auto& s : sets) out.emplace_back(s.begin(), s.end());
  return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& s : simplices()) f.push_back(s.size());
  return f;
}

std::int64_t SimplicialComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  auto f = f_vector();
  for (std::size_t i = 0; i < f.size(); ++i) chi += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(f[i]);
  return chi;
}

std::vector<Permutation> group_elements(const GroupAction& g, std::size_t n) {
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& p : g.generators) {
    if (p.size() != n) fail(ErrorKind::Validation, "group generator has the wrong length");
    std::vector<bool> hit(n, false);
    for (auto v : p) {
      if (v >= n || hit[v]) fail(ErrorKind::Validation, "group generator is not a permutation");
      hit[v] = true;
    }
  }
  std::set<Permutation> seen{id};
  std::vector<Permutation> out{id};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& p : g.generators) {
      Permutation c(n);
      for (std::size_t v = 0; v < n; ++v) c[v] = p[out[i][v]];
      if (seen.insert(c).second) {
        out.push_back(c);
        if (out.size() > 100000) fail(ErrorKind::DimensionLimit, "group too large");
      }
    }
  return out;
}

void check_simplicial_action(const SimplicialComplex& k, const GroupAction& g) {
  group_elements(g, k.vertices.size());
  std::set<Simplex> facets(k.facets.begin(), k.facets.end());
  for (const auto& p : g.generators)
    for (const auto& f : k.facets)
      if (!facets.count(image(p, f))) fail(ErrorKind::Validation, "group generator does not map facets to facets");
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.facets.empty()) return b;
  if (b.facets.empty()) return a;
  std::set<std::string> la(a.vertices.begin(), a.vertices.end());
  bool clash = std::any_of(b.vertices.begin(), b.vertices.end(), [&](const std::string& s) { return la.count(s) > 0; });
  std::vector<std::string> vs;
  for (const auto& v : a.vertices) vs.push_back(clash ? "a:" + v : v);
  for (const auto& v : b.vertices) vs.push_back(clash ? "b:" + v : v);
  std::vector<Simplex> fs;
  for (const auto& fa : a.facets)
    for (const auto& fb : b.facets) {
      Simplex s = fa;
      for (auto v : fb) s.push_back(v + a.vertices.size());
      fs.push_back(std::move(s));
    }
  return make_complex(std::move(vs), std::move(fs));
}

SimplicialComplex cycle_complex(std::size_t n, const std::string& prefix) {
  if (n < 3) fail(ErrorKind::Validation, "a cycle needs at least 3 vertices");
  std::vector<std::string> vs;
  std::vector<Simplex> fs;
  for (std::size_t i = 0; i < n; ++i) {
    vs.push_back(prefix + std::to_string(i));
    fs.push_back({i, (i + 1) % n});
  }
  return SimplicialComplex::from_facets(vs, fs);
}

SimplicialComplex simplex_boundary(std::size_t d) {
  std::vector<std::string> vs;
  std::vector<Simplex> fs;
  for (std::size_t i = 0; i <= d; ++i) vs.push_back("v" + std::to_string(i));
  for (std::size_t skip = 0; skip <= d; ++skip) {
    Simplex s;
    for (std::size_t i = 0; i <= d; ++i)
      if (i != skip) s.push_back(i);
    fs.push_back(s);
  }
  return SimplicialComplex::from_facets(vs, fs);
}

Subdivision barycentric_subdivision(const SimplicialComplex& k, const GroupAction& g) {
  std::vector<Simplex> all;
  for (auto& group : k.simplices())
    for (auto& s : group) all.push_back(std::move(s));
  std::sort(all.begin(), all.end());
  auto index = [&](const Simplex& s) {
    return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), s) - all.begin());
  };
  Subdivision out;
  std::vector<std::string> labels;
  for (const auto& s : all) labels.push_back(simplex_label(k, s));
  std::vector<Simplex> facets;
  for (const auto& f : k.facets) {
    Simplex order = f;
    do {
      Simplex chain;
      Simplex prefix;
      for (auto v : order) {
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
        chain.push_back(index(prefix));
      }
      std::sort(chain.begin(), chain.end());
      facets.push_back(std::move(chain));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  out.complex = make_complex(std::move(labels), std::move(facets));
  if (!k.coordinates.empty()) {
    for (const auto& s : all) {
      std::vector<double> c(k.coordinates[s[0]].size(), 0.0);
      for (auto v : s)
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += k.coordinates[v][i] / static_cast<double>(s.size());
      out.complex.coordinates.push_back(std::move(c));
    }
  }
  for (const auto& p : g.generators) {
    Permutation q(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) q[i] = index(image(p, all[i]));
    out.action.generators.push_back(std::move(q));
  }
  return out;
}

namespace {

bool stabilizers_fix_pointwise(const std::vector<std::vector<Simplex>>& simplices, const std::vector<Permutation>& elems) {
  for (const auto& group : simplices)
    for (const auto& s : group)
      for (const auto& g : elems) {
        if (image(g, s) != s) continue;
        for (auto v : s)
          if (g[v] != v) return false;
      }
  return true;
}

std::vector<std::size_t> vertex_orbits(std::size_t n, const std::vector<Permutation>& elems) {
  std::vector<std::size_t> rep(n);
  for (std::size_t v = 0; v < n; ++v) {
    rep[v] = v;
    for (const auto& g : elems) rep[v] = std::min(rep[v], g[v]);
  }
  return rep;
}

}  // namespace

bool is_regular_action(const SimplicialComplex& k, const GroupAction& g) {
  auto elems = group_elements(g, k.vertices.size());
  auto simplices = k.simplices();
  if (!stabilizers_fix_pointwise(simplices, elems)) return false;
  auto rep = vertex_orbits(k.vertices.size(), elems);
  for (const auto& group : simplices) {
    std::set<Simplex> orbit_reps, labels;
    for (const auto& s : group) {
      Simplex lab;
      for (auto v : s) lab.push_back(rep[v]);
      std::sort(lab.begin(), lab.end());
      if (std::adjacent_find(lab.begin(), lab.end()) != lab.end()) return false;
      labels.insert(lab);
      Simplex best = s;
      for (const auto& e : elems) best = std::min(best, image(e, s));
      orbit_reps.insert(best);
    }
    if (orbit_reps.size() != labels.size()) return false;
  }
  return true;
}

Quotient quotient(const SimplicialComplex& k, const GroupAction& g) {
  check_simplicial_action(k, g);
  Quotient out;
  SimplicialComplex cur = k;
  GroupAction act = g;
  auto trivial = [&] {
    for (const auto& p : act.generators)
      for (std::size_t v = 0; v < p.size(); ++v)
        if (p[v] != v) return false;
    return true;
  };
  if (trivial()) {
    out.complex = k;
    return out;
  }
  while (!is_regular_action(cur, act)) {
    if (out.subdivisions == 2) fail(ErrorKind::Validation, "action not regular after two subdivisions");
    auto sd = barycentric_subdivision(cur, act);
    cur = std::move(sd.complex);
    act = std::move(sd.action);
    ++out.subdivisions;
  }
  auto elems = group_elements(act, cur.vertices.size());
  auto rep = vertex_orbits(cur.vertices.size(), elems);
  std::vector<std::size_t> reps(rep.begin(), rep.end());
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  std::vector<std::string> labels;
  for (auto r : reps) labels.push_back(cur.vertices[r]);
  std::vector<Simplex> facets;
  for (const auto& f : cur.facets) {
    Simplex s;
    for (auto v : f) s.push_back(static_cast<std::size_t>(std::lower_bound(reps.begin(), reps.end(), rep[v]) - reps.begin()));
    facets.push_back(std::move(s));
  }
  out.complex = SimplicialComplex::from_facets(std::move(labels), std::move(facets));
  return out;
}

MatrixInvariants smith_invariants(SparseMatrix m) {
  MatrixInvariants out;
  std::vector<std::map<std::size_t, std::int64_t>> cols(m.cols);
  std::vector<std::set<std::size_t>> rows(m.rows);
  for (std::size_t c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.columns[c])
      if (v != 0) {
        cols[c][r] += v;
        rows[r].insert(c);
      }
  std::vector<bool> alive(m.cols, true);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (!alive[c]) continue;
      if (cols[c].empty()) {
        alive[c] = false;
        continue;
      }
      std::optional<std::size_t> pivot;
      for (const auto& [r, v] : cols[c])
        if ((v == 1 || v == -1) && (!pivot || rows[r].size() < rows[*pivot].size())) pivot = r;
      if (!pivot) continue;
      std::size_t r = *pivot;
      std::int64_t pv = cols[c][r];
      std::vector<std::size_t> others(rows[r].begin(), rows[r].end());
      for (auto j : others) {
        if (j == c) continue;
        std::int64_t f = checked_mul(cols[j][r], pv);
        for (const auto& [rr, vv] : cols[c]) {
          std::int64_t nv = checked_add(cols[j][rr], -checked_mul(f, vv));
          if (nv == 0) {
            cols[j].erase(rr);
            rows[rr].erase(j);
          } else {
            cols[j][rr] = nv;
            rows[rr].insert(j);
          }
        }
      }
      for (const auto& [rr, vv] : cols[c]) rows[rr].erase(c);
      cols[c].clear();
      alive[c] = false;
      ++out.rank;
      progress = true;
    }
  }
  std::vector<std::size_t> live_cols, live_rows;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (!cols[c].empty()) live_cols.push_back(c);
  for (std::size_t r = 0; r < m.rows; ++r)
    if (!rows[r].empty()) live_rows.push_back(r);
  if (!live_cols.empty()) {
    ZMatrix dense(live_rows.size(), std::vector<BigInt>(live_cols.size(), 0));
    for (std::size_t j = 0; j < live_cols.size(); ++j)
      for (const auto& [r, v] : cols[live_cols[j]])
        dense[static_cast<std::size_t>(std::lower_bound(live_rows.begin(), live_rows.end(), r) - live_rows.begin())][j] = v;
    for (const auto& d : invariant_factors(std::move(dense))) {
      ++out.rank;
      BigInt a = abs(d);
      if (a > 1) out.torsion.push_back(to_int64(a));
    }
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

namespace {

ChainComplex chains_from(const std::vector<std::vector<Simplex>>& cells,
                         const std::function<std::pair<std::size_t, int>(std::size_t, const Simplex&)>& locate) {
  ChainComplex c;
  for (const auto& g : cells) c.sizes.push_back(g.size());
  c.boundaries.resize(cells.size());
  for (std::size_t k = 1; k < cells.size(); ++k) {
    SparseMatrix& m = c.boundaries[k];
    m.rows = cells[k - 1].size();
    m.cols = cells[k].size();
    m.columns.resize(m.cols);
    for (std::size_t j = 0; j < cells[k].size(); ++j) {
      std::map<std::size_t, std::int64_t> col;
      const Simplex& s = cells[k][j];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face;
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != i) face.push_back(s[t]);
        auto [idx, sign] = locate(k - 1, face);
        col[idx] += (i % 2 ? -1 : 1) * sign;
      }
      for (const auto& [r, v] : col)
        if (v != 0) m.columns[j].push_back({r, v});
    }
  }
  return c;
}

}  // namespace

ChainComplex chain_complex(const SimplicialComplex& k) {
  auto cells = k.simplices();
  return chains_from(cells, [&](std::size_t d, const Simplex& s) {
    return std::make_pair(static_cast<std::size_t>(std::lower_bound(cells[d].begin(), cells[d].end(), s) - cells[d].begin()), 1);
  });
}

ChainComplex orbit_chain_complex(const SimplicialComplex& k, const GroupAction& g) {
  check_simplicial_action(k, g);
  auto elems = group_elements(g, k.vertices.size());
  auto simplices = k.simplices();
  if (!stabilizers_fix_pointwise(simplices, elems)) {
    auto sd = barycentric_subdivision(k, g);
    return orbit_chain_complex(sd.complex, sd.action);
  }
  // canonical representative of the orbit and the orientation sign relating the two
  auto canonical = [&](const Simplex& s) {
    Simplex best;
    int sign = 1;
    for (const auto& e : elems) {
      Simplex img;
      for (auto v : s) img.push_back(e[v]);
      int sg = sort_with_sign(img);
      if (best.empty() || img < best) {
        best = std::move(img);
        sign = sg;
      }
    }
    return std::make_pair(best, sign);
  };
  std::vector<std::vector<Simplex>> reps(simplices.size());
  for (std::size_t d = 0; d < simplices.size(); ++d) {
    std::set<Simplex> r;
    for (const auto& s : simplices[d]) r.insert(canonical(s).first);
    reps[d].assign(r.begin(), r.end());
  }
  return chains_from(reps, [&](std::size_t d, const Simplex& s) {
    auto [rep, sign] = canonical(s);
    return std::make_pair(static_cast<std::size_t>(std::lower_bound(reps[d].begin(), reps[d].end(), rep) - reps[d].begin()), sign);
  });
}

HomologyProfile homology(const ChainComplex& c) {
  std::size_t top = c.sizes.size();
  std::vector<MatrixInvariants> inv(top + 1);
  for (std::size_t k = 1; k < top; ++k) inv[k] = smith_invariants(c.boundaries[k]);
  HomologyProfile h(top);
  for (std::size_t k = 0; k < top; ++k) {
    std::size_t r_out = k >= 1 ? inv[k].rank : 0;
    std::size_t r_in = k + 1 < top ? inv[k + 1].rank : 0;
    h[k].rank = c.sizes[k] - r_out - r_in;
    if (k + 1 < top) h[k].torsion = inv[k + 1].torsion;
  }
  return h;
}

HomologyProfile homology(const SimplicialComplex& k) { return homology(chain_complex(k)); }

HomologyProfile sphere_profile(int d) {
  if (d < 0) fail(ErrorKind::Domain, "sphere dimension must be nonnegative");
  HomologyProfile h(static_cast<std::size_t>(d) + 1);
  h[0].rank = 1;
  h[static_cast<std::size_t>(d)].rank += 1;
  return h;
}

namespace {

std::string vector_label(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<double> unit_direction(const IntVector& v) {
  double n = 0;
  for (auto x : v) n += static_cast<double>(x) * static_cast<double>(x);
  n = std::sqrt(n);
  std::vector<double> out;
  for (auto x : v) out.push_back(n > 0 ? static_cast<double>(x) / n : 0.0);
  return out;
}

IntVector apply_map(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = checked_add(out[i], checked_mul(m[i][j], v[j]));
  return out;
}

}  // namespace

Link link_complex(const std::vector<Cone>& cones, const std::vector<IntMatrix>& maps) {
  std::set<Cone> all;
  std::size_t n = 0;
  for (const auto& c : cones) {
    n = c.ambient_rank();
    for (auto& f : faces(c))
      if (f.dimension() > 0) all.insert(std::move(f));
  }
  std::vector<Cone> fs(all.begin(), all.end());
  bool simplicial = std::all_of(fs.begin(), fs.end(), [](const Cone& c) { return c.is_simplicial(); });
  Link out;
  if (simplicial) {
    std::vector<IntVector> rays;
    for (const auto& c : fs)
      if (c.dimension() == 1) rays.push_back(c.generators()[0]);
    std::sort(rays.begin(), rays.end());
    auto ray_index = [&](const IntVector& r) {
      auto it = std::lower_bound(rays.begin(), rays.end(), r);
      if (it == rays.end() || *it != r) fail(ErrorKind::Validation, "link: map does not preserve the rays");
      return static_cast<std::size_t>(it - rays.begin());
    };
    std::vector<std::string> labels;
    for (const auto& r : rays) labels.push_back(vector_label(r));
    std::vector<Simplex> facets;
    for (const auto& c : fs) {
      Simplex s;
      for (const auto& g : c.generators()) s.push_back(ray_index(g));
      facets.push_back(std::move(s));
    }
    out.complex = SimplicialComplex::from_facets(std::move(labels), std::move(facets));
    for (const auto& r : rays) out.complex.coordinates.push_back(unit_direction(r));
    for (const auto& m : maps) {
      Permutation p;
      for (const auto& r : rays) p.push_back(ray_index(primitive(apply_map(m, r))));
      out.action.generators.push_back(std::move(p));
    }
    return out;
  }
  // order complex of the face poset
  auto face_index = [&](const Cone& c) {
    auto it = std::lower_bound(fs.begin(), fs.end(), c);
    if (it == fs.end() || !(*it == c)) fail(ErrorKind::Validation, "link: map does not preserve the cones");
    return static_cast<std::size_t>(it - fs.begin());
  };
  std::vector<std::vector<std::size_t>> up(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (fs[j].dimension() == fs[i].dimension() + 1 &&
          std::all_of(fs[i].generators().begin(), fs[i].generators().end(), [&](const IntVector& g) {
            return std::find(fs[j].generators().begin(), fs[j].generators().end(), g) != fs[j].generators().end();
          }))
        up[i].push_back(j);
  std::vector<Simplex> facets;
  Simplex chain;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    chain.push_back(i);
    if (up[i].empty()) {
      Simplex s = chain;
      std::sort(s.begin(), s.end());
      facets.push_back(std::move(s));
    }
    for (auto j : up[i]) walk(j);
    chain.pop_back();
  };
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (fs[i].dimension() == 1) walk(i);
  std::vector<std::string> labels;
  for (const auto& c : fs) {
    std::string s = "<";
    for (std::size_t i = 0; i < c.generators().size(); ++i) s += (i ? "," : "") + vector_label(c.generators()[i]);
    labels.push_back(s + ">");
  }
  out.complex = SimplicialComplex::from_facets(std::move(labels), std::move(facets));
  for (const auto& c : fs) {
    std::vector<double> x(n, 0.0);
    for (const auto& g : c.generators()) {
      auto u = unit_direction(g);
      for (std::size_t i = 0; i < n; ++i) x[i] += u[i] / static_cast<double>(c.generators().size());
    }
    out.complex.coordinates.push_back(std::move(x));
  }
  for (const auto& m : maps) {
    Permutation p;
    for (const auto& c : fs) {
      std::vector<IntVector> g;
      for (const auto& r : c.generators()) g.push_back(apply_map(m, r));
      p.push_back(face_index(Cone::from_generators(n, g)));
    }
    out.action.generators.push_back(std::move(p));
  }
  return out;
}

Link link_complex(const Fan& f, const std::vector<IntMatrix>& maps) {
  std::vector<Cone> cones;
  for (auto i : f.maximal_cones()) cones.push_back(f.cones()[i]);
  return link_complex(cones, maps);
}

SimplicialComplex to_simplicial(const PolyComplex& c) {
  std::vector<Cone> cones;
  std::size_t n = c.axes.size() + 1;
  for (const auto& cell : c.cells) {
    std::vector<IntVector> g;
    for (auto v : cell) {
      v.push_back(1);
      g.push_back(primitive(v));
    }
    cones.push_back(Cone::from_generators(n, g));
  }
  auto link = link_complex(cones).complex;
  // relabel ray vertices by the affine points they represent
  if (std::all_of(link.vertices.begin(), link.vertices.end(), [](const std::string& s) { return s[0] == '('; })) {
    std::vector<IntVector> rays;
    for (const auto& cone : cones)
      for (const auto& g : cone.generators()) rays.push_back(g);
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    for (std::size_t i = 0; i < rays.size() && i < link.vertices.size(); ++i) {
      std::string s = "(";
      for (std::size_t j = 0; j + 1 < n; ++j) s += (j ? "," : "") + to_string(Rational(rays[i][j], rays[i][n - 1]));
      link.vertices[i] = s + ")";
      std::vector<double> x;
      for (std::size_t j = 0; j + 1 < n; ++j) x.push_back(static_cast<double>(rays[i][j]) / static_cast<double>(rays[i][n - 1]));
      link.coordinates[i] = x;
    }
  }
  return link;
}

SimplicialComplex link_complex(const SubFan& s) {
  bool compact = std::all_of(s.cells.begin(), s.cells.end(), [](const PolyCell& c) { return c.global_rays.empty(); });
  if (compact && !s.cells.empty()) {
    PolyComplex p{s.axes, {}, {}};
    for (const auto& c : s.cells) p.cells.push_back(c.global_vertices);
    return to_simplicial(p);
  }
  std::vector<Cone> cones;
  for (const auto& c : s.cells) {
    for (const auto& v : c.global_vertices)
      if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }))
        fail(ErrorKind::Validation, "link of a subfan needs cones or compact cells");
    std::vector<IntVector> g;
    for (const auto& r : c.global_rays) g.push_back(primitive(r));
    if (!g.empty()) cones.push_back(Cone::from_generators(s.axes.size(), g));
  }
  return link_complex(cones).complex;
}

namespace {

using Cx = std::complex<double>;

std::vector<Cx> image_of(const std::vector<Cx>& z) {
  // coefficients of prod (t - z_i), highest first
  std::vector<Cx> c{1.0};
  for (const auto& zi : z) {
    std::vector<Cx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= zi * c[k];
    }
    c = std::move(next);
  }
  std::vector<Cx> phi;
  double norm = 0;
  for (std::size_t j = 1; j < c.size(); ++j) {
    double r = std::abs(c[j]);
    Cx w = r > 0 ? std::polar(std::pow(r, 1.0 / static_cast<double>(j)), std::arg(c[j])) : Cx(0.0);
    phi.push_back(w);
    norm += std::norm(w);
  }
  norm = std::sqrt(norm);
  for (auto& w : phi) w /= norm;
  return phi;
}

}  // namespace

std::vector<Cx> sphere_map(const std::vector<Cx>& z, double tolerance) {
  if (z.empty()) fail(ErrorKind::Validation, "sphere map: empty input");
  double norm = 0;
  for (const auto& x : z) norm += std::norm(x);
  if (std::abs(std::sqrt(norm) - 1.0) > tolerance) fail(ErrorKind::Domain, "sphere map: input is not a unit vector");
  return image_of(z);
}

namespace {

double distance(const std::vector<Cx>& a, const std::vector<Cx>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double orbit_distance(std::vector<Cx> a, const std::vector<Cx>& b) {
  std::vector<std::size_t> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  double best = 1e300;
  do {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[p[i]] - b[i]));
    best = std::min(best, d);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace

SphereMapReport sphere_quotient_map_check(std::size_t n, std::size_t samples, double tolerance, std::uint64_t seed) {
  if (n < 1 || n > 6) fail(ErrorKind::DimensionLimit, "sphere map check supports 1 <= n <= 6");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  SphereMapReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.min_separation = 1e300;
  std::vector<std::vector<Cx>> pts, imgs;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Cx> z(n);
    double norm = 0;
    for (auto& x : z) {
      x = Cx(gauss(rng), gauss(rng));
      norm += std::norm(x);
    }
    norm = std::sqrt(norm);
    for (auto& x : z) x /= norm;
    auto img = image_of(z);
    double nd = 0;
    for (const auto& w : img) nd += std::norm(w);
    rep.max_norm_defect = std::max(rep.max_norm_defect, std::abs(std::sqrt(nd) - 1.0));
    std::vector<Cx> perm = z;
    std::shuffle(perm.begin(), perm.end(), rng);
    rep.max_orbit_defect = std::max(rep.max_orbit_defect, distance(img, image_of(perm)));
    pts.push_back(std::move(z));
    imgs.push_back(std::move(img));
  }
  auto separate = [&](const std::vector<Cx>& a, const std::vector<Cx>& b, const std::vector<Cx>& ia, const std::vector<Cx>& ib) {
    if (orbit_distance(a, b) <= 1e-3) return;
    rep.min_separation = std::min(rep.min_separation, distance(ia, ib));
  };
  for (std::size_t s = 0; s + 1 < samples; ++s) separate(pts[s], pts[s + 1], imgs[s], imgs[s + 1]);
  // nearby points of different orbits
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Cx> w = pts[s];
    double norm = 0;
    for (auto& x : w) {
      x += 0.01 * Cx(gauss(rng), gauss(rng));
      norm += std::norm(x);
    }
    norm = std::sqrt(norm);
    for (auto& x : w) x /= norm;
    separate(pts[s], w, imgs[s], image_of(w));
  }
  rep.orbit_collapse = rep.max_orbit_defect <= tolerance;
  rep.unit_norm = rep.max_norm_defect <= tolerance;
  rep.injective_on_orbits = rep.min_separation > tolerance;
  return rep;
}

namespace {

// Block permutation of (x_1, y_1, ..., x_n, y_n) swapping factors i and i+1.
IntMatrix factor_swap(int n, int i) {
  std::size_t d = static_cast<std::size_t>(2 * n);
  IntMatrix m(d, IntVector(d, 0));
  for (std::size_t r = 0; r < d; ++r) {
    std::size_t f = r / 2, c = r;
    if (f == static_cast<std::size_t>(i)) c = r + 2;
    if (f == static_cast<std::size_t>(i + 1)) c = r - 2;
    m[r][c] = 1;
  }
  return m;
}

}  // namespace

CharacterVarietyResult character_variety_complex(Group g, int n) {
  CharacterVarietyResult out;
  out.group = g;
  out.n = n;
  if (g == Group::GL) {
    if (n < 1 || n > 3) fail(ErrorKind::DimensionLimit, "GL character variety: 1 <= n <= 3");
    SimplicialComplex k;
    for (int i = 0; i < n; ++i) k = join(k, cycle_complex(4, "s" + std::to_string(i + 1) + "_"));
    for (int i = 0; i + 1 < n; ++i) {
      Permutation p(k.vertices.size());
      std::iota(p.begin(), p.end(), 0);
      for (std::size_t v = 0; v < 4; ++v) std::swap(p[4 * i + v], p[4 * (i + 1) + v]);
      out.action.generators.push_back(std::move(p));
    }
    out.cover = std::move(k);
  } else {
    if (n < 2 || n > 3) fail(ErrorKind::DimensionLimit, "SL character variety: 2 <= n <= 3");
    Fan p1 = Fan::from_cones(1, {Cone::from_generators(1, {{1}}), Cone::from_generators(1, {{-1}})});
    Fan block = product_fan(p1, p1);
    Fan f = block;
    for (int i = 1; i < n; ++i) f = product_fan(f, block);
    std::size_t d = static_cast<std::size_t>(2 * n);
    std::vector<IntVector> basis;
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(n); ++i)
      for (std::size_t c = 0; c < 2; ++c) {
        IntVector v(d, 0);
        v[2 * i + c] = 1;
        v[d - 2 + c] = -1;
        basis.push_back(v);
      }
    Fan kf = intersect_fan_subspace(f, basis);
    // the factor permutations in subspace coordinates
    QMatrix bcols = transpose(to_rational(basis));
    std::vector<IntMatrix> maps;
    for (int i = 0; i + 1 < n; ++i) {
      IntMatrix sw = factor_swap(n, i);
      std::size_t k = basis.size();
      IntMatrix m(k, IntVector(k, 0));
      for (std::size_t c = 0; c < k; ++c) {
        auto y = solve(bcols, to_rational(apply_map(sw, basis[c])), k);
        if (!y) fail(ErrorKind::Validation, "factor permutation does not preserve the kernel");
        for (std::size_t r = 0; r < k; ++r) m[r][c] = to_int64((*y)[r]);
      }
      maps.push_back(std::move(m));
    }
    auto link = link_complex(kf, maps);
    out.cover = std::move(link.complex);
    out.action = std::move(link.action);
  }
  out.homology = homology(orbit_chain_complex(out.cover, out.action));
  out.method = "cellular chains on simplex orbits";
  if (n <= 2) {
    out.quotient = quotient(out.cover, out.action).complex;
    out.method += "; simplicial quotient after regularizing subdivisions";
  }
  return out;
}

TateResult tate_strata(int n, const std::vector<std::int64_t>& alpha) {
  if (alpha.empty()) fail(ErrorKind::Validation, "tate: empty alpha");
  if (n < 2) fail(ErrorKind::Domain, "tate: n must be at least 2");
  if (alpha.size() != static_cast<std::size_t>(n)) fail(ErrorKind::Shape, "tate: alpha must have n entries");
  if (n > 16) fail(ErrorKind::DimensionLimit, "tate: n too large");
  TateResult r;
  r.n = n;
  r.alpha = alpha;
  for (auto a : alpha) r.degree = checked_add(r.degree, a);
  std::string gm = "G_m^" + std::to_string(n - 1);
  if (r.degree > 0) {
    r.classification = "generic";
    r.local_model = "G_m^" + std::to_string(n) + " (generic fibre only)";
    return r;
  }
  if (r.degree == 0) {
    r.classification = "single_divisor";
    r.local_model = gm + " x A^1";
    r.strata.push_back(TateStratum{{}, 1, 0, true, "y_{alpha_1+1}"});
    return r;
  }
  r.classification = "strata";
  r.local_model = gm + " x A^1";
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> J;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) J.push_back(i + 1);
    for (int j : J) {
      TateStratum s;
      s.J = J;
      s.j = j;
      s.exponent = static_cast<std::int64_t>(J.size()) + r.degree;
      s.contained = s.exponent == 0 || s.exponent == 1;
      if (s.exponent == 0) s.divisor = "x_{alpha_" + std::to_string(j) + "}";
      if (s.exponent == 1) s.divisor = "y_{alpha_" + std::to_string(j) + "+1}";
      r.strata.push_back(std::move(s));
    }
  }
  // each contained stratum is cut by exactly one of the pair (x, y), never both
  r.codim_two_boundary = std::all_of(r.strata.begin(), r.strata.end(),
                                     [](const TateStratum& s) { return !s.contained || !s.divisor.empty(); });
  return r;
}

std::string to_off(const SimplicialComplex& k) {
  std::ostringstream os;
  os << "OFF\n" << k.vertices.size() << " " << k.facets.size() << " 0\n";
  for (std::size_t v = 0; v < k.vertices.size(); ++v) {
    double x[3] = {0, 0, 0};
    if (v < k.coordinates.size()) {
      for (std::size_t i = 0; i < 3 && i < k.coordinates[v].size(); ++i) x[i] = k.coordinates[v][i];
    } else {
      double t = static_cast<double>(v + 1);
      x[0] = t;
      x[1] = t * t;
      x[2] = t * t * t;
    }
    os << x[0] << " " << x[1] << " " << x[2] << "\n";
  }
  for (const auto& f : k.facets) {
    os << f.size();
    for (auto v : f) os << " " << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace skel
