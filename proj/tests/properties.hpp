#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skel::properties {

struct Outcome {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return instances > 0 && failures == 0; }
};

Outcome homogeneity(std::uint64_t seed, std::size_t count);
Outcome ultrametric(std::uint64_t seed, std::size_t count);
Outcome multiplicativity(std::uint64_t seed, std::size_t count);
Outcome retraction(std::uint64_t seed, std::size_t count);
Outcome tensor_power_linearity(std::uint64_t seed, std::size_t count);
Outcome join_spheres(std::uint64_t seed, std::size_t count);
Outcome smith_self_check(std::uint64_t seed, std::size_t count);
Outcome hilbert_irreducible(std::uint64_t seed, std::size_t count);

// All of the above with the same seed and count.
std::vector<Outcome> run_all(std::uint64_t seed, std::size_t count);

}  // namespace skel::properties
