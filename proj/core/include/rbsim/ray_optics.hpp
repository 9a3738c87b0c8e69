#pragma once

#include <limits>

namespace rbsim::optics {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Paraxial ray: transverse position x (m) and angle theta (rad).
struct RayVector {
  double x = 0.0;
  double theta = 0.0;

  friend bool operator==(const RayVector&, const RayVector&) = default;
};

// 2x2 ray-transfer (ABCD) matrix acting on (x, theta).
struct RayTransferMatrix {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  static constexpr RayTransferMatrix identity() { return {}; }

  double determinant() const { return a * d - b * c; }
  RayTransferMatrix negated() const { return {-a, -b, -c, -d}; }
  // Same optical path traversed backwards.
  RayTransferMatrix reversed() const { return {d, b, c, a}; }

  RayVector apply(const RayVector& r) const {
    return {a * r.x + b * r.theta, c * r.x + d * r.theta};
  }

  friend RayTransferMatrix operator*(const RayTransferMatrix& l,
                                     const RayTransferMatrix& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }

  friend bool operator==(const RayTransferMatrix&,
                         const RayTransferMatrix&) = default;
};

// Element spacings and focal data of the two-reflector cavity with the
// telescope (TIM) between gain and far reflector. Lengths in metres.
//
//   M1 --d1-- gain --d2-- L1(f1) --lt-- L2(f2) --d3-- M2
//
// fr1/fr2 are the effective curvature factors of the reflector assemblies;
// infinity means an ideal retro-reflector.
struct ResonatorGeometry {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double lt = 0.0;
  double f1 = kInfinity;
  double f2 = kInfinity;
  double fr1 = kInfinity;
  double fr2 = kInfinity;
  double r1 = 1.0;
  double r2 = 1.0;
  double lambda_beam = 980e-9;

  // Throws InvalidArgument naming the first violated invariant.
  void validate() const;

  // Ray-height factor of the telescope from the gain side to the far side.
  double tim_magnification() const { return -f1 / f2; }
};

RayTransferMatrix free_space(double distance);
RayTransferMatrix thin_lens(double focal_length);

// Lens plus flat mirror at distance d from it, folded. Equals
// [[-1, 0], [1/fr, -1]] with fr = f^2 / (2 (d - f)).
RayTransferMatrix reflector_matrix(double focal_length, double mirror_distance);
// Curvature factor fr of the assembly above; infinite when d == f.
double reflector_curvature_factor(double focal_length, double mirror_distance);
// Reflector written directly in terms of its curvature factor.
RayTransferMatrix reflector_from_curvature(double fr);

// thin_lens(f2) * free_space(lt) * thin_lens(f1).
RayTransferMatrix tim_matrix(double f1, double f2, double lt);

// M_M2 * F(d3) * L2 * F(lt) * L1 * F(d2) * F(d1) * M_M1, starting at M1.
RayTransferMatrix one_trip_matrix(const ResonatorGeometry& g);

// Everything in one_trip_matrix except the far reflector M2.
RayTransferMatrix partial_trip_matrix(const ResonatorGeometry& g);

// Value of fr2 at which the D entry of the one-trip matrix vanishes; the
// cavity is stable on one side of it. Infinite when no finite edge exists.
double m2_stability_edge(const ResonatorGeometry& g);

// omega = (-lambda^2 B D / (pi^2 A C))^(1/4) on the reference plane (M1,
// taken equal to the gain). Throws UnstableResonator for a negative
// radicand and DegenerateCavity when A*C == 0. Returns 0 when B*D == 0.
double spot_radius_on_gain(const RayTransferMatrix& m, double lambda);

// True when spot_radius_on_gain would return a positive finite size.
bool is_stable(const RayTransferMatrix& m);

// Fraction of a Gaussian beam of radius w passing an aperture of radius a:
// 1 - exp(-2 a^2 / w^2).
double diffraction_survival(double gain_radius, double spot_radius);

}  // namespace rbsim::optics
