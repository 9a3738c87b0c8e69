#include "rbsim/ray_optics.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "rbsim/constants.hpp"
#include "rbsim/error.hpp"

namespace rbsim::optics {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

// 1/f with 1/inf == 0; f == 0 is rejected by callers.
double power_of(double f) { return std::isinf(f) ? 0.0 : 1.0 / f; }

}  // namespace

void ResonatorGeometry::validate() const {
  require(d1 > 0.0 && std::isfinite(d1), "geometry: d1 must be > 0");
  require(d2 > 0.0 && std::isfinite(d2), "geometry: d2 must be > 0");
  require(d3 > 0.0 && std::isfinite(d3), "geometry: d3 must be > 0");
  require(std::isfinite(lt), "geometry: lt must be finite");
  require(f1 != 0.0 && !std::isnan(f1), "geometry: f1 must be non-zero");
  require(f2 != 0.0 && !std::isnan(f2), "geometry: f2 must be non-zero");
  require(fr1 != 0.0 && !std::isnan(fr1), "geometry: fr1 must be non-zero");
  require(fr2 != 0.0 && !std::isnan(fr2), "geometry: fr2 must be non-zero");
  require(r1 > 0.0 && r1 <= 1.0, "geometry: r1 must lie in (0, 1]");
  require(r2 > 0.0 && r2 <= 1.0, "geometry: r2 must lie in (0, 1]");
  require(lambda_beam > 0.0 && std::isfinite(lambda_beam),
          "geometry: lambda_beam must be > 0");
}

RayTransferMatrix free_space(double distance) {
  require(std::isfinite(distance), "free_space: distance must be finite");
  return {1.0, distance, 0.0, 1.0};
}

RayTransferMatrix thin_lens(double focal_length) {
  require(focal_length != 0.0 && !std::isnan(focal_length),
          "thin_lens: focal length must be non-zero");
  return {1.0, 0.0, -power_of(focal_length), 1.0};
}

double reflector_curvature_factor(double focal_length, double mirror_distance) {
  require(focal_length != 0.0 && std::isfinite(focal_length),
          "reflector: focal length must be non-zero and finite");
  require(mirror_distance >= 0.0 && std::isfinite(mirror_distance),
          "reflector: mirror distance must be >= 0");
  if (mirror_distance == focal_length) return kInfinity;
  return focal_length * focal_length / (2.0 * (mirror_distance - focal_length));
}

RayTransferMatrix reflector_matrix(double focal_length, double mirror_distance) {
  return reflector_from_curvature(
      reflector_curvature_factor(focal_length, mirror_distance));
}

RayTransferMatrix reflector_from_curvature(double fr) {
  require(fr != 0.0 && !std::isnan(fr),
          "reflector: curvature factor must be non-zero");
  return {-1.0, 0.0, power_of(fr), -1.0};
}

RayTransferMatrix tim_matrix(double f1, double f2, double lt) {
  return thin_lens(f2) * free_space(lt) * thin_lens(f1);
}

RayTransferMatrix partial_trip_matrix(const ResonatorGeometry& g) {
  return free_space(g.d3) * thin_lens(g.f2) * free_space(g.lt) *
         thin_lens(g.f1) * free_space(g.d2) * free_space(g.d1) *
         reflector_from_curvature(g.fr1);
}

RayTransferMatrix one_trip_matrix(const ResonatorGeometry& g) {
  return reflector_from_curvature(g.fr2) * partial_trip_matrix(g);
}

double m2_stability_edge(const ResonatorGeometry& g) {
  // D_c = b/fr2 - d of the partial product, zero at fr2 = b/d.
  const RayTransferMatrix p = partial_trip_matrix(g);
  if (p.d == 0.0) return kInfinity;
  return p.b / p.d;
}

double spot_radius_on_gain(const RayTransferMatrix& m, double lambda) {
  require(lambda > 0.0, "spot_radius_on_gain: wavelength must be > 0");
  const double ac = m.a * m.c;
  if (ac == 0.0) {
    std::ostringstream os;
    os << "degenerate cavity: A*C = 0 (A=" << m.a << ", C=" << m.c << ")";
    throw DegenerateCavity(os.str());
  }
  const double pi = constants::kPi;
  const double radicand = -lambda * lambda * m.b * m.d / (pi * pi * ac);
  if (radicand < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "unstable resonator: negative mode radicand (A=" << m.a
       << ", B=" << m.b << ", C=" << m.c << ", D=" << m.d << ")";
    throw UnstableResonator(os.str(), m.a, m.b, m.c, m.d);
  }
  return std::sqrt(std::sqrt(radicand));
}

bool is_stable(const RayTransferMatrix& m) {
  const double ac = m.a * m.c;
  if (ac == 0.0) return false;
  return -m.b * m.d / ac > 0.0;
}

double diffraction_survival(double gain_radius, double spot_radius) {
  require(spot_radius > 0.0, "diffraction_survival: spot radius must be > 0");
  require(gain_radius >= 0.0, "diffraction_survival: gain radius must be >= 0");
  const double ratio = gain_radius / spot_radius;
  return -std::expm1(-2.0 * ratio * ratio);
}

}  // namespace rbsim::optics
