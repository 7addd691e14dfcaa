#include <doctest.h>

#include "skel/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace skel;

namespace {

Cone cone(std::size_t n, std::vector<IntVector> g) { return Cone::from_generators(n, std::move(g)); }

Fan p2_fan() {
  return Fan::from_cones(2, {cone(2, {{1, 0}, {0, 1}}), cone(2, {{0, 1}, {-1, -1}}), cone(2, {{-1, -1}, {1, 0}})});
}

// Oracle: primitive vectors in a box nonnegative on the generators; keep the two angular extremes (rank 2).
std::vector<IntVector> brute_dual_2d(const std::vector<IntVector>& gens) {
  std::vector<std::pair<double, IntVector>> ok;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) {
      if (std::gcd(a, b) != 1) continue;
      bool nonneg = true;
      for (const auto& g : gens) nonneg = nonneg && a * g[0] + b * g[1] >= 0;
      if (nonneg) ok.push_back({std::atan2(b, a), {a, b}});
    }
  std::sort(ok.begin(), ok.end());
  // the admissible directions form an arc; its ends are the extreme rays
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    const auto& prev = ok[(i + ok.size() - 1) % ok.size()].second;
    const auto& next = ok[(i + 1) % ok.size()].second;
    const auto& cur = ok[i].second;
    long cp = prev[0] * cur[1] - prev[1] * cur[0];
    long cn = cur[0] * next[1] - cur[1] * next[0];
    // a gap of angle >= pi on either side marks an end of the arc
    if (cp <= 0 || cn <= 0) out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("dual cone examples") {
  CHECK(dual_cone(cone(2, {{1, 0}, {0, 1}})) == cone(2, {{1, 0}, {0, 1}}));
  auto d = dual_cone(cone(2, {{1, 0}, {1, 2}}));
  CHECK(d.generators() == std::vector<IntVector>{{0, 1}, {2, -1}});
  CHECK(d.generators() == brute_dual_2d({{1, 0}, {1, 2}}));
  auto h = dual_cone(cone(2, {{1, 0}}));
  CHECK(h.lineality_dimension() == 1);
  CHECK(h.generators() == std::vector<IntVector>{{0, -1}, {0, 1}, {1, 0}});
  CHECK(dual_cone(Cone::zero(3)).dimension() == 3);
}

TEST_CASE("dual of dual is identity on full-dimensional pointed cones") {
  std::vector<Cone> cs = {cone(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {0, 0, 1}}), cone(2, {{1, 3}, {2, -1}}),
                          cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}})};
  for (const auto& c : cs) CHECK(dual_cone(dual_cone(c)) == c);
}

TEST_CASE("redundant generators are dropped") {
  auto c = cone(2, {{1, 0}, {0, 1}, {1, 1}, {2, 0}});
  CHECK(c.generators() == std::vector<IntVector>{{0, 1}, {1, 0}});
  auto sq = cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {0, 0, 1}});
  CHECK(sq.generators().size() == 4);
  CHECK_FALSE(sq.is_simplicial());
}

TEST_CASE("hilbert basis examples") {
  CHECK(hilbert_basis(cone(2, {{1, 0}, {0, 1}})) == std::vector<IntVector>{{0, 1}, {1, 0}});
  CHECK(hilbert_basis(cone(2, {{0, 1}, {2, -1}})) == std::vector<IntVector>{{0, 1}, {1, 0}, {2, -1}});
  CHECK(hilbert_basis(cone(2, {{2, 4}})) == std::vector<IntVector>{{1, 2}});
  // A1 singularity cone
  CHECK(hilbert_basis(cone(2, {{1, 0}, {1, 2}})) == std::vector<IntVector>{{1, 0}, {1, 1}, {1, 2}});
  CHECK_THROWS_AS(hilbert_basis(cone(2, {{1, 0}, {-1, 0}})), Error);
}

TEST_CASE("faces of a square cone") {
  auto sq = cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}});
  auto f = faces(sq);
  // zero + 4 rays + 4 two-dimensional faces + the cone
  CHECK(f.size() == 10);
}

TEST_CASE("fans, stars and compactified strata") {
  Fan p2 = p2_fan();
  CHECK(p2.cones().size() == 7);
  CHECK_FALSE(fan_violation(p2));
  auto strata = compactified_fan_strata(p2);
  REQUIRE(strata.size() == 7);
  std::multiset<std::size_t> dims;
  for (const auto& s : strata) dims.insert(s.star.dimension());
  CHECK(dims == std::multiset<std::size_t>{2, 1, 1, 1, 0, 0, 0});

  // independent double loop over (sigma, tau >= sigma)
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < p2.cones().size(); ++i)
    for (std::size_t j = 0; j < p2.cones().size(); ++j)
      if (i == j || p2.is_face(i, j)) ++pairs;
  std::size_t total = 0;
  for (const auto& s : strata) total += s.star.cones().size();
  CHECK(total == pairs);

  Fan star = star_fan(p2, cone(2, {{1, 0}}));
  CHECK(star.rank() == 1);
  CHECK(star.rays() == std::vector<IntVector>{{-1}, {1}});
  CHECK(star_fan(p2, Cone::zero(2)) == p2);
  Fan pt = star_fan(p2, cone(2, {{1, 0}, {0, 1}}));
  CHECK(pt.rank() == 0);
  CHECK(pt.cones().size() == 1);
  CHECK_THROWS_AS(star_fan(p2, cone(2, {{1, 1}})), Error);

  CHECK(compactified_fan_strata(Fan::zero(0)).size() == 1);
  Fan p1 = Fan::from_cones(1, {cone(1, {{1}}), cone(1, {{-1}})});
  CHECK(compactified_fan_strata(p1).size() == 3);
}

TEST_CASE("intersect fan with a subspace") {
  Fan p1 = Fan::from_cones(1, {cone(1, {{1}}), cone(1, {{-1}})});
  Fan sq = product_fan(p1, p1);
  CHECK(sq.cones().size() == 9);
  Fan line = intersect_fan_subspace(sq, {{1, -1}});
  CHECK(line.rank() == 1);
  CHECK(line.rays() == std::vector<IntVector>{{-1}, {1}});
  CHECK(intersect_fan_subspace(sq, {{1, 0}, {0, 1}}) == sq);
  CHECK_THROWS_AS(intersect_fan_subspace(sq, {{2, 0}}), Error);

  Fan p2 = p2_fan();
  Fan pp = product_fan(p2, p2);
  Fan k = intersect_fan_subspace(pp, {{1, 0, -1, 0}, {0, 1, 0, -1}});
  CHECK(k.rank() == 2);
  CHECK_FALSE(fan_violation(k));
  // the kernel fan of P2 x P2 is a complete fan in rank 2 with six rays
  CHECK(k.rays().size() == 6);
}
