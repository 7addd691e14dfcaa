#pragma once

#include "skel/linalg.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skel {

inline constexpr std::size_t kMaxConeRank = 8;

// V-representation of {x : A x >= 0, E x = 0}: lines span the lineality space.
struct VRep {
  std::vector<IntVector> lines;
  std::vector<IntVector> rays;
};

// Double description. Rays are primitive extreme rays modulo the lineality space.
VRep h_to_v(std::size_t dim, const std::vector<IntVector>& inequalities,
            const std::vector<IntVector>& equations = {});

// H-representation: inequalities u.x >= 0 and equations e.x = 0.
struct HRep {
  std::vector<IntVector> inequalities;
  std::vector<IntVector> equations;
};

class Cone {
 public:
  Cone() = default;
  // Reduces to canonical form: primitive generators, extreme rays only,
  // lineality encoded as +-(rref basis), rays projected orthogonally to it, sorted.
  static Cone from_generators(std::size_t ambient_rank, std::vector<IntVector> generators);
  static Cone zero(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<IntVector>& generators() const { return gens_; }
  std::size_t dimension() const { return dim_; }
  std::size_t lineality_dimension() const { return lineality_; }
  bool is_pointed() const { return lineality_ == 0; }
  bool is_simplicial() const { return is_pointed() && gens_.size() == dim_; }

  HRep h_rep() const;
  bool contains(const QVector& x) const;
  bool contains(const IntVector& x) const;
  // Relative interior membership.
  bool contains_relint(const QVector& x) const;

  friend bool operator==(const Cone& a, const Cone& b) = default;
  friend std::strong_ordering operator<=>(const Cone& a, const Cone& b);

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> gens_;
  std::size_t dim_ = 0;
  std::size_t lineality_ = 0;
};

Cone dual_cone(const Cone& c);
std::vector<IntVector> hilbert_basis(const Cone& c);
// All faces of a pointed cone, including the zero cone and the cone itself, sorted.
std::vector<Cone> faces(const Cone& c);
Cone intersect(const Cone& a, const Cone& b);

class Fan {
 public:
  Fan() = default;
  // Closes the given cones under taking faces; cones must be pointed.
  static Fan from_cones(std::size_t rank, const std::vector<Cone>& cones);
  static Fan zero(std::size_t rank);

  std::size_t rank() const { return rank_; }
  const std::vector<Cone>& cones() const { return cones_; }
  std::size_t dimension() const;
  std::optional<std::size_t> index_of(const Cone& c) const;
  // Cone i is a face of cone j (i != j).
  std::vector<std::pair<std::size_t, std::size_t>> face_relation() const;
  bool is_face(std::size_t i, std::size_t j) const;
  std::vector<IntVector> rays() const;
  std::vector<std::size_t> maximal_cones() const;

  friend bool operator==(const Fan& a, const Fan& b) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Cone> cones_;  // sorted by (dimension, generators)
};

// Re-checks face closure and the pairwise intersection axiom. Returns an explanation on failure.
std::optional<std::string> fan_violation(const Fan& f);

Fan product_fan(const Fan& a, const Fan& b);
Fan star_fan(const Fan& f, const Cone& sigma);

struct FanStratum {
  Cone sigma;
  Fan star;
};
std::vector<FanStratum> compactified_fan_strata(const Fan& f);

Fan intersect_fan_subspace(const Fan& f, const std::vector<IntVector>& basis);

}  // namespace skel
