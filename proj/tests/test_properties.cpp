#include <doctest.h>

#include "properties.hpp"

using namespace skel::properties;

namespace {

void expect(const Outcome& o) {
  INFO(o.name << ": " << o.first_failure);
  CHECK(o.instances >= 200);
  CHECK(o.failures == 0);
}

constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kCount = 250;

}  // namespace

TEST_CASE("valuation homogeneity") { expect(homogeneity(kSeed, kCount)); }
TEST_CASE("ultrametric bound") { expect(ultrametric(kSeed, kCount)); }
TEST_CASE("multiplicativity without cancellation") { expect(multiplicativity(kSeed, kCount)); }
TEST_CASE("retraction inequality") { expect(retraction(kSeed, kCount)); }
TEST_CASE("tensor powers scale the weight") { expect(tensor_power_linearity(kSeed, kCount)); }
TEST_CASE("joins of spheres") { expect(join_spheres(kSeed, kCount)); }
TEST_CASE("Smith normal form self-check") { expect(smith_self_check(kSeed, kCount)); }
TEST_CASE("Hilbert basis elements are irreducible") { expect(hilbert_irreducible(kSeed, kCount)); }
