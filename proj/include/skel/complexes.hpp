#pragma once

#include "skel/weights.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skel {

using Simplex = std::vector<std::size_t>;  // sorted vertex indices
using Permutation = std::vector<std::size_t>;

struct SimplicialComplex {
  std::vector<std::string> vertices;
  std::vector<Simplex> facets;  // sorted, none contained in another
  std::vector<std::vector<double>> coordinates;  // optional geometric realization, one per vertex

  // Sorts facets, drops non-maximal ones and checks that every vertex is used.
  static SimplicialComplex from_facets(std::vector<std::string> vertices, std::vector<Simplex> facets);
  int dimension() const;
  // All nonempty simplices grouped by dimension, each group sorted.
  std::vector<std::vector<Simplex>> simplices() const;
  std::vector<std::size_t> f_vector() const;
  std::int64_t euler_characteristic() const;
};

struct GroupAction {
  std::vector<Permutation> generators;  // permutations of the vertex indices
};

// Closure of the generators under composition, identity first.
std::vector<Permutation> group_elements(const GroupAction& g, std::size_t n);
void check_simplicial_action(const SimplicialComplex& k, const GroupAction& g);

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);
SimplicialComplex cycle_complex(std::size_t n, const std::string& prefix = "v");
SimplicialComplex simplex_boundary(std::size_t d);

struct Subdivision {
  SimplicialComplex complex;
  GroupAction action;
};
// Vertices of the subdivision are the simplices of k; the action is transported.
Subdivision barycentric_subdivision(const SimplicialComplex& k, const GroupAction& g = {});

// Stabilizers fix simplices pointwise, vertices of a simplex lie in distinct orbits and
// simplex orbits correspond bijectively to orbit-label simplices.
bool is_regular_action(const SimplicialComplex& k, const GroupAction& g);

struct Quotient {
  SimplicialComplex complex;
  int subdivisions = 0;
};
Quotient quotient(const SimplicialComplex& k, const GroupAction& g);

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns;  // sorted by row
};

struct ChainComplex {
  std::vector<std::size_t> sizes;        // rank of C_k
  std::vector<SparseMatrix> boundaries;  // boundaries[k]: C_k -> C_{k-1}; boundaries[0] is empty
};

struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, divisibility chain

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};
using HomologyProfile = std::vector<HomologyGroup>;

struct MatrixInvariants {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;
};
// Rank and invariant factors > 1: unit-pivot elimination, then dense Smith form on the residual.
MatrixInvariants smith_invariants(SparseMatrix m);

ChainComplex chain_complex(const SimplicialComplex& k);
// Cellular chains of |k|/G with one cell per orbit of simplices. Subdivides once when some
// stabilizer does not fix its simplex pointwise.
ChainComplex orbit_chain_complex(const SimplicialComplex& k, const GroupAction& g);
HomologyProfile homology(const ChainComplex& c);
HomologyProfile homology(const SimplicialComplex& k);
HomologyProfile sphere_profile(int d);

// Link of a cone complex: rays and cones when every cone is simplicial, otherwise the order
// complex of nonzero faces. Linear maps (acting on the ambient lattice) become vertex permutations.
struct Link {
  SimplicialComplex complex;
  GroupAction action;
};
Link link_complex(const std::vector<Cone>& cones, const std::vector<IntMatrix>& maps = {});
Link link_complex(const Fan& f, const std::vector<IntMatrix>& maps = {});
SimplicialComplex link_complex(const SubFan& s);
// Compact polyhedral complex to a simplicial complex (order complex if some cell is not a simplex).
SimplicialComplex to_simplicial(const PolyComplex& c);

// Unit vector of C^n to the normalized root-adjusted coefficients of prod (t - z_i).
std::vector<std::complex<double>> sphere_map(const std::vector<std::complex<double>>& z, double tolerance = 1e-9);

struct SphereMapReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  bool orbit_collapse = false;
  bool injective_on_orbits = false;
  bool unit_norm = false;
  double max_orbit_defect = 0;
  double min_separation = 0;
  double max_norm_defect = 0;
  bool ok() const { return orbit_collapse && injective_on_orbits && unit_norm; }
};
SphereMapReport sphere_quotient_map_check(std::size_t n, std::size_t samples, double tolerance, std::uint64_t seed);

enum class Group { GL, SL };
struct CharacterVarietyResult {
  Group group = Group::GL;
  int n = 0;
  SimplicialComplex cover;  // complex before the symmetric-group quotient
  GroupAction action;
  std::optional<SimplicialComplex> quotient;  // simplicial model, when small enough
  HomologyProfile homology;
  std::string method;
};
CharacterVarietyResult character_variety_complex(Group g, int n);

struct TateStratum {
  std::vector<int> J;
  int j = 0;
  std::int64_t exponent = 0;  // |J| + |alpha|
  bool contained = false;
  std::string divisor;        // local equation of the boundary at the stratum
};
struct TateResult {
  int n = 0;
  std::vector<std::int64_t> alpha;
  std::int64_t degree = 0;  // |alpha|
  std::string classification;  // "generic", "single_divisor" or "strata"
  std::string local_model;
  std::vector<TateStratum> strata;
  bool codim_two_boundary = true;
};
TateResult tate_strata(int n, const std::vector<std::int64_t>& alpha);

std::string to_off(const SimplicialComplex& k);

}  // namespace skel
