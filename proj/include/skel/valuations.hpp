#pragma once

#include "skel/logstructure.hpp"

#include <string>
#include <vector>

namespace skel {

struct SkeletonPoint {
  std::string kato_point;
  std::vector<ExtRational> weights;  // over the generators of C_x
  Mode mode = Mode::Trivial;

  friend bool operator==(const SkeletonPoint&, const SkeletonPoint&) = default;
};

// Tropical value of a presented polynomial at coordinate weights (weights may be negative
// for torus coordinates). Errors on the zero polynomial.
ExtRational evaluate(const std::vector<ExtRational>& coord_weights, const LaurentPolynomial& f);
ExtRational evaluate(const std::vector<ExtRational>& coord_weights, const LaurentRational& f);

// Chart coordinate weights of a skeleton point. The chart must contain the Kato point.
std::vector<ExtRational> chart_weights(const KatoFan& k, const LogChart& chart, const SkeletonPoint& v);
ExtRational evaluate(const KatoFan& k, const LogChart& chart, const SkeletonPoint& v, const LaurentRational& f);
// Whether every component of the Kato point is cut by a coordinate of the chart.
bool chart_contains(const KatoFan& k, const LogChart& chart, std::size_t point);

SkeletonPoint scale(const Rational& a, const SkeletonPoint& v);

// Restriction of chart weights to the boundary coordinates.
QVector retract_weights(const QVector& chart_weights, const std::vector<std::size_t>& boundary_indices);
// Retraction of a chart-monomial point onto the skeleton of an snc pair.
SkeletonPoint retract(const KatoFan& k, const LogChart& chart, const QVector& chart_weights);

struct ClosureClass {
  std::string stratum;      // Kato point y
  SkeletonPoint trace_point;  // point of trace(k, y), same Kato point id as the input
};
ClosureClass classify_closure_point(const KatoFan& k, const SkeletonPoint& v);

// Divides by <b, weights>; b is indexed like the generators.
SkeletonPoint normalize_dvf(const SkeletonPoint& v, const std::vector<std::int64_t>& b);

// Point at x induced by a point at y through the specialization C_x -> C_y.
SkeletonPoint specialize(const KatoFan& k, const std::string& x, const SkeletonPoint& at_y);

}  // namespace skel
