#pragma once

#include <cmath>
#include <string>

#include "maxgraph/metric_model.hpp"

namespace maxgraph {

enum class DomainShape { GeodesicDisc, GeodesicAnnulus, PolarRectangle };

/// Region of the base surface, described in polar coordinates around the
/// basepoint.  Validation happens when a grid is built over the domain.
struct Domain {
  DomainShape shape = DomainShape::GeodesicDisc;
  double inner = 0.0;           // inner radius (annulus / polar rectangle)
  double outer = 0.0;           // outer radius
  double theta_min = 0.0;       // polar rectangle only
  double theta_max = 2.0 * M_PI;

  static Domain disc(double radius);
  static Domain annulus(double inner, double outer);
  static Domain polar_rectangle(double inner, double outer, double theta_min,
                                double theta_max);

  bool full_turn() const;       // angular range covers the whole circle
  bool contains_pole() const { return inner == 0.0; }
};

/// Result of the starlike test with respect to the basepoint.  Either a
/// positive certificate naming the argument used, a definite refusal with a
/// reason, or undecided for shapes the check does not handle.
struct StarlikeCertificate {
  enum class Status { Certified, NotStarlike, Undecided };
  Status status = Status::Undecided;
  std::string kind;  // "radial", "radial-hull", ...
  std::string note;
  bool certified() const { return status == Status::Certified; }
};

/// Checks whether the domain is starlike with respect to the basepoint: every
/// radial geodesic segment from the basepoint to a domain point stays inside.
/// Discs and pole-cornered polar rectangles certify; annuli are refused since
/// the basepoint is not in the domain.
StarlikeCertificate starlike_check(const MetricModel& model,
                                   const Domain& domain);

/// Certificate for the radial completion of the domain (the union of all
/// radial segments from the basepoint to domain points).  For pole-centered
/// annuli this adds the hole, turning the domain into a disc; pointwise
/// height-bound checks remain valid on the original nodes.
StarlikeCertificate starlike_hull_check(const MetricModel& model,
                                        const Domain& domain);

}  // namespace maxgraph
