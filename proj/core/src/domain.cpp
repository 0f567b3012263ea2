#include "maxgraph/domain.hpp"

#include <cmath>

#include "maxgraph/errors.hpp"

namespace maxgraph {

Domain Domain::disc(double radius) {
  if (!(radius > 0)) throw Error("disc: radius must be positive");
  Domain d;
  d.shape = DomainShape::GeodesicDisc;
  d.inner = 0.0;
  d.outer = radius;
  return d;
}

Domain Domain::annulus(double inner, double outer) {
  if (!(inner > 0) || !(outer > inner))
    throw Error("annulus: need 0 < inner < outer");
  Domain d;
  d.shape = DomainShape::GeodesicAnnulus;
  d.inner = inner;
  d.outer = outer;
  return d;
}

Domain Domain::polar_rectangle(double inner, double outer, double theta_min,
                               double theta_max) {
  if (!(inner >= 0) || !(outer > inner))
    throw Error("polar_rectangle: need 0 <= inner < outer");
  const double span = theta_max - theta_min;
  if (!(span > 0)) throw Error("polar_rectangle: empty angular range");
  if (span > 2.0 * M_PI + 1e-12)
    throw Error("polar_rectangle: angular range exceeds a full turn "
                "(self-overlapping chart)");
  Domain d;
  d.shape = DomainShape::PolarRectangle;
  d.inner = inner;
  d.outer = outer;
  d.theta_min = theta_min;
  d.theta_max = theta_max;
  return d;
}

bool Domain::full_turn() const {
  if (shape != DomainShape::PolarRectangle) return true;
  return std::abs((theta_max - theta_min) - 2.0 * M_PI) <= 1e-12;
}

StarlikeCertificate starlike_check(const MetricModel& model,
                                   const Domain& domain) {
  StarlikeCertificate cert;
  if (domain.outer > model.rho_max) {
    cert.status = StarlikeCertificate::Status::Undecided;
    cert.note = "domain exceeds the profile's validity range";
    return cert;
  }
  switch (domain.shape) {
    case DomainShape::GeodesicDisc:
      // Radial geodesics from the basepoint fill the disc by definition.
      cert.status = StarlikeCertificate::Status::Certified;
      cert.kind = "radial";
      cert.note = "geodesic disc around the basepoint";
      return cert;
    case DomainShape::GeodesicAnnulus:
      cert.status = StarlikeCertificate::Status::NotStarlike;
      cert.note = "basepoint is not in the domain; radial segments cross the "
                  "hole (see starlike_hull_check)";
      return cert;
    case DomainShape::PolarRectangle:
      if (domain.contains_pole()) {
        // Radial rays keep their angle, so they stay inside the sector.  The
        // apex itself sits on the boundary; checks treat it as admissible.
        cert.status = StarlikeCertificate::Status::Certified;
        cert.kind = "radial";
        cert.note = "radial rays preserve the angular range (apex on the "
                    "boundary)";
      } else {
        cert.status = StarlikeCertificate::Status::NotStarlike;
        cert.note = "basepoint is not in the domain";
      }
      return cert;
  }
  return cert;
}

StarlikeCertificate starlike_hull_check(const MetricModel& model,
                                        const Domain& domain) {
  StarlikeCertificate cert = starlike_check(model, domain);
  if (cert.certified()) return cert;
  if (domain.shape == DomainShape::GeodesicAnnulus &&
      domain.outer <= model.rho_max) {
    cert.status = StarlikeCertificate::Status::Certified;
    cert.kind = "radial-hull";
    cert.note = "radial completion is the disc of the outer radius; "
                "certificate covers domain nodes only";
  }
  return cert;
}

}  // namespace maxgraph
