#pragma once

#include "skel/valuations.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skel {

// Local expression f * (dlog z_P)^m in one chart.
struct PluriForm {
  int m = 1;
  std::string chart;
  std::vector<std::string> dlog;  // sorted component ids
  LaurentRational numerator;
};

// One global form given by local expressions in several charts.
struct Form {
  std::vector<PluriForm> expressions;
  int m() const;
};

Form tensor_power(const Form& f, unsigned k);

// Affine function c + l.y on face coordinates.
struct Affine {
  Rational c = 0;
  QVector l;
};

// Coordinates on the face of one Kato point: y with domain inequalities d.y >= 0.
struct FaceModel {
  std::size_t point = 0;
  std::size_t dim = 0;
  std::vector<IntVector> domain;
  QMatrix to_coords;      // chart coordinate weights, one row per chart coordinate
  QMatrix to_global;      // global coordinates, one row per global axis
  QMatrix to_generators;  // generator weights
  std::map<std::string, QVector> component_weight;  // c_i(y) for components through the point
};

std::vector<std::string> global_axes(const LogPair& pair);
FaceModel face_model(const LogPair& pair, const KatoFan& k, std::size_t point, const LogChart& chart);

// Picks the local expression whose chart contains the Kato point.
const PluriForm* expression_at(const LogPair& pair, const KatoFan& k, const Form& f, std::size_t point);

Rational log_discrepancy(const LogPair& pair, const KatoFan& k, const SkeletonPoint& v);
ExtRational weight(const LogPair& pair, const KatoFan& k, const PluriForm& form, const SkeletonPoint& v);
ExtRational weight(const LogPair& pair, const KatoFan& k, const Form& form, const SkeletonPoint& v);
// Checks that a dvf expression has exactly one vertical component outside its dlog set.
void check_normal_form(const LogPair& pair, const PluriForm& form);

struct LinearConstraint {
  QVector coeffs;
  Rational constant = 0;
  bool equality = false;  // coeffs.y + constant (>= | =) 0
};

// conv(vertices) + cone(rays). Coordinates are the generator weights of the Kato point
// for snc pairs and lattice coordinates of N for toric pairs.
struct PolyCell {
  std::string kato_point;
  std::vector<QVector> vertices;
  std::vector<QVector> rays;
  std::vector<QVector> global_vertices;
  std::vector<QVector> global_rays;
  std::vector<LinearConstraint> constraints;
};

struct SubFan {
  Mode mode = Mode::Trivial;
  std::vector<std::string> axes;
  std::vector<PolyCell> cells;
  std::optional<Rational> min_value;
  std::vector<std::string> notices;
};

struct OffendingRay {
  std::string kato_point;
  QVector ray;
  Rational slope;
};

struct KsResult {
  std::optional<SubFan> skeleton;
  std::optional<OffendingRay> offending;
};

KsResult ks_skeleton(const LogPair& pair, const KatoFan& k, const Form& form);
SubFan essential_skeleton(const LogPair& pair, const KatoFan& k, const std::vector<Form>& forms);
// Faces of Kato points all of whose components have coefficient 1.
SubFan essential_logcy(const LogPair& pair, const KatoFan& k);

// Builds a SubFan from global cells: dedupe, drop contained cells, attach Kato points and constraints.
SubFan make_subfan(const LogPair& pair, const KatoFan& k, Mode mode, std::vector<PolyCell> cells);
bool cell_contains(const PolyCell& big, const PolyCell& small);
// Same cells as sets (order-insensitive).
bool same_cells(const SubFan& a, const SubFan& b);

LogPair trace_pair(const LogPair& pair, std::vector<std::string> stratum);
PluriForm residue(const LogPair& pair, const PluriForm& form, std::vector<std::string> stratum);

// Points of the closure of a snc cell with infinite weight exactly on `stratum`, projected
// onto `target_axes`. Returns nullopt when the closure misses that stratum.
std::optional<PolyCell> closure_fiber(const PolyCell& cell, const std::vector<std::string>& axes,
                                      const std::vector<std::string>& stratum,
                                      const std::vector<std::string>& target_axes);

struct PolyComplex {
  std::vector<std::string> axes;
  std::vector<std::vector<QVector>> cells;  // vertex lists of compact cells
  std::vector<std::string> notices;
};
PolyComplex slice_dvf(const SubFan& trivial_skeleton, const std::map<std::string, std::int64_t>& b);

struct GaussRecord {
  Rational log_r;
  Rational log_triv;
  Rational log_disc;
  bool identity_holds = false;
};
GaussRecord gauss_weight_identity(const Rational& c, std::int64_t a, std::int64_t l, std::int64_t m);

}  // namespace skel
