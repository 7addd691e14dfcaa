#include <doctest.h>

#include "fixture_util.hpp"
#include "skel/complexes.hpp"

#include <numeric>

using namespace skel;
using namespace skel::testing;

namespace {

HomologyProfile profile(std::vector<std::size_t> ranks) {
  HomologyProfile h;
  for (auto r : ranks) h.push_back(HomologyGroup{r, {}});
  return h;
}

HomologyProfile expected(const Json& j) {
  HomologyProfile h;
  for (const auto& g : j) h.push_back(HomologyGroup{g["rank"].get<std::size_t>(), g["torsion"].get<std::vector<std::int64_t>>()});
  return h;
}

SimplicialComplex points(std::size_t n) {
  std::vector<std::string> v;
  std::vector<Simplex> f;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back("p" + std::to_string(i));
    f.push_back({i});
  }
  return SimplicialComplex::from_facets(v, f);
}

Fan p2_fan() {
  return Fan::from_cones(2, {Cone::from_generators(2, {{1, 0}, {0, 1}}), Cone::from_generators(2, {{0, 1}, {-1, -1}}),
                             Cone::from_generators(2, {{-1, -1}, {1, 0}})});
}

}  // namespace

TEST_CASE("basic complexes") {
  auto c3 = cycle_complex(3);
  CHECK(c3.f_vector() == std::vector<std::size_t>{3, 3});
  CHECK(c3.euler_characteristic() == 0);
  CHECK(homology(c3) == sphere_profile(1));

  auto s0 = points(2);
  CHECK(homology(s0) == sphere_profile(0));
  auto sq = join(s0, s0);
  CHECK(sq.f_vector() == std::vector<std::size_t>{4, 4});
  CHECK(homology(sq) == sphere_profile(1));

  CHECK(homology(simplex_boundary(3)) == sphere_profile(2));
  CHECK(simplex_boundary(3).euler_characteristic() == 2);
  CHECK(homology(join(c3, c3)) == sphere_profile(3));
  auto c4 = cycle_complex(4);
  CHECK(homology(join(join(c4, c4), c4)) == sphere_profile(5));

  auto torus_like = SimplicialComplex::from_facets({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 1, 2}});
  CHECK(torus_like.facets.size() == 1);
  CHECK(homology(torus_like) == profile({1, 0, 0}));
  CHECK_THROWS_AS(SimplicialComplex::from_facets({"a", "b"}, {{0, 0}}), Error);
  CHECK_THROWS_AS(SimplicialComplex::from_facets({"a", "b"}, {{0}}), Error);
}

TEST_CASE("torsion: real projective plane") {
  // minimal 6-vertex triangulation
  std::vector<Simplex> f = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
  auto rp2 = SimplicialComplex::from_facets({"0", "1", "2", "3", "4", "5"}, f);
  auto h = homology(rp2);
  REQUIRE(h.size() == 3);
  CHECK(h[0].rank == 1);
  CHECK(h[1].rank == 0);
  CHECK(h[1].torsion == std::vector<std::int64_t>{2});
  CHECK(h[2].rank == 0);
  CHECK(rp2.euler_characteristic() == 1);
}

TEST_CASE("smith invariants of sparse matrices") {
  SparseMatrix m{2, 2, {{{0, 2}}, {{1, 3}}}};
  auto inv = smith_invariants(m);
  CHECK(inv.rank == 2);
  CHECK(inv.torsion == std::vector<std::int64_t>{6});
  SparseMatrix z{3, 1, {{}}};
  CHECK(smith_invariants(z).rank == 0);
}

TEST_CASE("barycentric subdivision") {
  auto c = join(cycle_complex(3), points(2));
  auto sd = barycentric_subdivision(c).complex;
  CHECK(homology(sd) == homology(c));
  CHECK(sd.euler_characteristic() == c.euler_characteristic());
  CHECK(sd.facets.size() == c.facets.size() * 6);
}

TEST_CASE("quotients") {
  auto c4 = cycle_complex(4);
  GroupAction antipodal{{{2, 3, 0, 1}}};
  auto q = quotient(c4, antipodal);
  CHECK(q.subdivisions >= 1);
  CHECK(homology(q.complex) == sphere_profile(1));
  CHECK(homology(orbit_chain_complex(c4, antipodal)) == sphere_profile(1));

  GroupAction trivial{{{0, 1, 2, 3}}};
  auto same = quotient(c4, trivial);
  CHECK(same.subdivisions == 0);
  CHECK(same.complex.facets == c4.facets);

  // a reflection fixes two vertices: the quotient is an interval
  GroupAction reflect{{{0, 3, 2, 1}}};
  CHECK(homology(quotient(c4, reflect).complex) == profile({1, 0}));
  CHECK(homology(orbit_chain_complex(c4, reflect)) == profile({1, 0}));

  CHECK_THROWS_AS(quotient(c4, GroupAction{{{1, 0, 2, 3}}}), Error);
  CHECK_THROWS_AS(quotient(c4, GroupAction{{{0, 0, 2, 3}}}), Error);
}

TEST_CASE("links of fans") {
  auto p2 = link_complex(p2_fan());
  CHECK(p2.complex.f_vector() == std::vector<std::size_t>{3, 3});
  CHECK(homology(p2.complex) == sphere_profile(1));

  auto ray = link_complex(std::vector<Cone>{Cone::from_generators(2, {{1, 1}})});
  CHECK(ray.complex.f_vector() == std::vector<std::size_t>{1});

  auto octant = link_complex(std::vector<Cone>{Cone::from_generators(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
  CHECK(octant.complex.facets.size() == 1);
  CHECK(octant.complex.dimension() == 2);

  // a square cone: order complex of its faces is an octagon-subdivided disk
  auto square = link_complex(std::vector<Cone>{Cone::from_generators(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}})});
  CHECK(homology(square.complex) == profile({1, 0, 0}));
  CHECK(square.complex.vertices.size() == 9);

  // symmetries become permutations
  IntMatrix rot{{0, -1}, {1, 0}};
  Fan p1p1 = Fan::from_cones(2, {Cone::from_generators(2, {{1, 0}, {0, 1}}), Cone::from_generators(2, {{0, 1}, {-1, 0}}),
                                 Cone::from_generators(2, {{-1, 0}, {0, -1}}), Cone::from_generators(2, {{0, -1}, {1, 0}})});
  auto l = link_complex(p1p1, {rot});
  REQUIRE(l.action.generators.size() == 1);
  CHECK(group_elements(l.action, 4).size() == 4);
  CHECK(homology(orbit_chain_complex(l.complex, l.action)) == sphere_profile(1));
  CHECK_THROWS_AS(link_complex(p2_fan(), {rot}), Error);
}

TEST_CASE("P2 x P2 meets the anti-diagonal in a circle link") {
  Fan f = product_fan(p2_fan(), p2_fan());
  Fan k = intersect_fan_subspace(f, {{1, 0, -1, 0}, {0, 1, 0, -1}});
  CHECK(homology(link_complex(k).complex) == sphere_profile(1));
}

TEST_CASE("skeleton links and slices") {
  auto raw = load_fixture("p2_toric.json");
  auto pair = pair_from_json(raw["pair"]);
  auto sk = essential_logcy(pair, kato_fan(pair));
  CHECK(homology(link_complex(sk)) == expected(raw["expect"]["link_homology"]));

  auto dw = load_fixture("dwork.json");
  auto dpair = pair_from_json(dw["pair"]);
  auto slice = slice_dvf(essential_logcy(dpair, kato_fan(dpair)), {{"D1", 1}, {"D2", 1}, {"D3", 1}});
  auto tri = to_simplicial(slice);
  CHECK(tri.f_vector() == std::vector<std::size_t>{3, 3});
  CHECK(homology(tri) == expected(dw["expect"]["slice_homology"]));

  PolyComplex square{{"x", "y"}, {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}, {}};
  auto sq = to_simplicial(square);
  CHECK(homology(sq) == profile({1, 0, 0}));
}

TEST_CASE("character varieties") {
  for (int n = 1; n <= 3; ++n) {
    auto r = character_variety_complex(Group::GL, n);
    CHECK(homology(r.cover) == sphere_profile(2 * n - 1));
    CHECK(r.homology == sphere_profile(2 * n - 1));
    if (n <= 2) {
      REQUIRE(r.quotient);
      CHECK(homology(*r.quotient) == sphere_profile(2 * n - 1));
    }
  }
  for (int n = 2; n <= 3; ++n) {
    auto r = character_variety_complex(Group::SL, n);
    CHECK(homology(r.cover) == sphere_profile(2 * n - 3));
    CHECK(r.homology == sphere_profile(2 * n - 3));
  }
  auto sl2 = character_variety_complex(Group::SL, 2);
  CHECK(sl2.cover.vertices.size() == 4);
  REQUIRE(sl2.quotient);
  CHECK(homology(*sl2.quotient) == sphere_profile(1));
  CHECK_THROWS_AS(character_variety_complex(Group::GL, 4), Error);
  CHECK_THROWS_AS(character_variety_complex(Group::SL, 1), Error);
}

TEST_CASE("sphere quotient map") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto r = sphere_quotient_map_check(n, 300, 1e-9, 7 + n);
    CHECK(r.orbit_collapse);
    CHECK(r.unit_norm);
    CHECK(r.injective_on_orbits);
  }
  CHECK_THROWS_AS(sphere_quotient_map_check(0, 10, 1e-9, 1), Error);
}

TEST_CASE("Tate curve strata") {
  auto g = tate_strata(2, {2, 1});
  CHECK(g.classification == "generic");
  CHECK(g.strata.empty());

  auto s = tate_strata(2, {1, -1});
  CHECK(s.classification == "single_divisor");
  CHECK(s.local_model == "G_m^1 x A^1");

  auto t = tate_strata(2, {-1, -1});
  CHECK(t.degree == -2);
  CHECK(t.classification == "strata");
  std::size_t contained = 0;
  for (const auto& st : t.strata) {
    CHECK(st.exponent == static_cast<std::int64_t>(st.J.size()) - 2);
    if (st.contained) {
      ++contained;
      CHECK(st.J.size() == 2);
      CHECK(st.divisor.rfind("x_", 0) == 0);
    }
  }
  CHECK(contained == 2);
  CHECK(t.codim_two_boundary);

  auto u = tate_strata(3, {0, 0, -1});
  for (const auto& st : u.strata) {
    if (st.J.size() == 1) CHECK(st.divisor.rfind("x_", 0) == 0);
    if (st.J.size() == 2) CHECK(st.divisor.rfind("y_", 0) == 0);
    if (st.J.size() == 3) CHECK(!st.contained);
  }
  CHECK_THROWS_AS(tate_strata(2, {1}), Error);
  CHECK_THROWS_AS(tate_strata(1, {-1}), Error);
}

TEST_CASE("OFF export") {
  auto off = to_off(cycle_complex(3));
  CHECK(off.rfind("OFF\n3 3 0\n", 0) == 0);
}

TEST_CASE("sphere map examples") {
  using C = std::complex<double>;
  C z = std::polar(1.0, 0.7);
  auto one = sphere_map({z});
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one[0] + z) < 1e-12);

  C w = std::polar(std::sqrt(0.5), 1.9);
  auto a = sphere_map({w, -w});
  auto b = sphere_map({-w, w});
  CHECK(std::abs(a[0] - b[0]) < 1e-12);
  CHECK(std::abs(a[1] - b[1]) < 1e-12);
  CHECK_THROWS_AS(sphere_map({C(2, 0)}), Error);
}

TEST_CASE("quotient Euler characteristic counts orbits") {
  auto check = [](const SimplicialComplex& k, const GroupAction& g) {
    auto q = quotient(k, g);
    auto orbits = orbit_chain_complex(k, g);
    std::int64_t chi = 0;
    for (std::size_t d = 0; d < orbits.sizes.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<std::int64_t>(orbits.sizes[d]);
    CHECK(q.complex.euler_characteristic() == chi);
  };
  check(cycle_complex(4), GroupAction{{{2, 3, 0, 1}}});
  check(cycle_complex(6), GroupAction{{{1, 2, 3, 4, 5, 0}}});
  check(cycle_complex(4), GroupAction{{{0, 3, 2, 1}}});
  auto gl2 = character_variety_complex(Group::GL, 2);
  check(gl2.cover, gl2.action);
}

TEST_CASE("link of a product fan is the join of the links") {
  Fan p1 = Fan::from_cones(1, {Cone::from_generators(1, {{1}}), Cone::from_generators(1, {{-1}})});
  for (const auto& [a, b] : std::vector<std::pair<Fan, Fan>>{{p2_fan(), p1}, {p1, p1}, {p2_fan(), p2_fan()}}) {
    auto lhs = homology(link_complex(product_fan(a, b)).complex);
    auto rhs = homology(join(link_complex(a).complex, link_complex(b).complex));
    CHECK(lhs == rhs);
  }
}
