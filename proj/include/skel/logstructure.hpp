#pragma once

#include "skel/laurent.hpp"
#include "skel/polyhedra.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skel {

enum class Mode { Trivial, Dvf };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct BoundaryComponent {
  std::string id;
  Rational coefficient = 1;
  LaurentRational equation;
  std::int64_t pi_multiplicity = 0;
  std::optional<std::size_t> coordinate;  // chart coordinate cutting the component, if any

  bool vertical() const { return pi_multiplicity > 0; }
};

struct LogChart {
  std::string id;
  std::vector<std::string> coords;
  std::vector<BoundaryComponent> boundary;
  int relative_dimension = 0;

  const BoundaryComponent* find(const std::string& component) const;
  // Ids of components cut by a coordinate, sorted.
  std::vector<std::string> coordinate_components() const;
  // (component, b_i) for vertical components.
  std::vector<std::pair<std::string, std::int64_t>> pi_factorization() const;
};

struct ToricData {
  Fan fan;
  std::vector<Rational> coefficients;  // one per ray of fan.rays()
};

struct LogPair {
  Mode mode = Mode::Trivial;
  std::vector<LogChart> charts;
  std::vector<std::vector<std::string>> strata;  // snc: declared index sets, sorted
  std::optional<ToricData> toric;
  bool log_calabi_yau = false;

  // Fills coordinate links, sorts strata and checks the invariants.
  void finalize();
  std::vector<std::string> component_ids() const;
  const BoundaryComponent& component(const std::string& id) const;
  const LogChart& chart(const std::string& id) const;
};

LogPair make_toric_pair(const Fan& f, std::vector<Rational> coefficients = {}, bool log_calabi_yau = true);
// Direct product of two trivial-mode snc pairs; component ids are prefixed "1:" and "2:".
LogPair product_pair(const LogPair& a, const LogPair& b);

struct ToricPointData {
  std::vector<IntVector> lattice_basis;    // basis of span(sigma) ∩ N
  std::vector<IntVector> rays;             // rays of sigma in N
  std::vector<IntVector> generator_forms;  // generators of C_sigma on lattice_basis coordinates
};

struct KatoPoint {
  std::string id;
  std::vector<std::string> components;  // index set I_x (ray labels for toric points)
  std::vector<std::string> generators;  // labels of the generators of C_x
  std::optional<ToricPointData> toric;
  std::vector<std::size_t> generator_subset;  // for trace points: positions in the parent's generator list

  std::size_t rank() const { return generators.size(); }
};

enum class KatoKind { Snc, Toric, Product };

class KatoFan {
 public:
  KatoKind kind = KatoKind::Snc;
  std::vector<KatoPoint> points;  // generic point first
  // For x in closure{y}: row i is the image of generator i of C_x in generator coordinates of C_y.
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> specializations;

  std::size_t index_of(const std::string& id) const;
  std::optional<std::size_t> find(const std::string& id) const;
  bool in_closure(std::size_t x, std::size_t y) const;
  const IntMatrix& specialization(std::size_t x, std::size_t y) const;
};

std::string snc_point_id(const std::vector<std::string>& components);

KatoFan kato_fan_snc(const std::vector<std::string>& components, const std::vector<std::vector<std::string>>& strata);
KatoFan kato_fan_toric(const Fan& f);
KatoFan kato_fan(const LogPair& pair);
KatoFan trace(const KatoFan& k, const std::string& y);
KatoFan product(const KatoFan& a, const KatoFan& b);

// Labels of the rays of a fan in fan.rays() order.
std::string ray_label(std::size_t i);

}  // namespace skel
