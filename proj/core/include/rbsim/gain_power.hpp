#pragma once

#include "rbsim/ray_optics.hpp"

namespace rbsim::gain {

// Semiconductor gain medium, SI units throughout.
struct GainModel {
  double g0 = 0.0;          // small-signal gain coefficient, 1/m
  double n0 = 0.0;          // transparency carrier density, 1/m^3
  double gamma_conf = 0.0;  // longitudinal confinement factor
  double alpha = 0.0;       // monomolecular recombination, 1/s
  double beta = 0.0;        // bimolecular recombination, m^3/s
  double auger = 0.0;       // Auger recombination, m^6/s
  double l = 0.0;           // effective gain layer thickness, m
  double a_s = 0.0;         // effective active cross-section, m^2
  double a = 0.0;           // gain medium radius, m

  void validate() const;
};

struct PumpModel {
  double eta_pc = 1.0;
  double eta_pa = 1.0;
  double lambda_pump = 808e-9;

  void validate() const;
};

// Power of V appearing in the slope-efficiency log. The printed model uses
// V there but V^2 in the saturation condition.
enum class SlopeLossExponent { kSingle = 1, kSquared = 2 };

struct LossModel {
  double vc = 1.0;  // constant loss factor
  double vd = 1.0;  // diffraction survival factor
  double v = 1.0;   // vc * vd

  static LossModel from(double vc, double vd);
};

struct PowerResult {
  double p_th = 0.0;    // W
  double eta_s = 0.0;
  double p_beam = 0.0;  // W
  double eta_b = 0.0;
  double n_th = 0.0;    // 1/m^3
  double tau = 0.0;     // s
  double g_sat = 0.0;   // 1/m
  double spot_radius = 0.0;  // m, on the gain
  LossModel losses;
};

// g = -ln(r1 r2 v^2) / (2 Gamma l): the gain at which one round trip is
// loss-free with G = exp(Gamma g l) per pass.
double saturation_gain(double r1, double r2, double v, double l,
                       double gamma_conf);

// N_th = N0 (r1 r2 v^2)^(-1 / (2 g0 l Gamma)).
double threshold_carrier_density(const GainModel& gm, double r1, double r2,
                                 double v);

// tau = 1 / (alpha + beta n + auger n^2).
double carrier_lifetime(double n, const GainModel& gm);

// P_th = A_s h c l N_th / (lambda eta_pc eta_pa tau).
double threshold_power(const GainModel& gm, const PumpModel& pm, double n_th,
                       double tau, double lambda_beam);

double slope_efficiency(const PumpModel& pm, double r1, double r2, double v,
                        double lambda_beam,
                        SlopeLossExponent exponent = SlopeLossExponent::kSingle);

// max(0, (p_in - p_th) eta_s).
double beam_power(double p_in, double p_th, double eta_s);

// beam_power / p_in.
double transmission_efficiency(double p_in, double p_th, double eta_s);

// Full chain: spot -> V_d -> V -> g -> N_th -> tau -> P_th, eta_s ->
// P_beam, eta_b. Propagates UnstableResonator.
PowerResult evaluate_link(
    const optics::ResonatorGeometry& geometry, const GainModel& gain,
    const PumpModel& pump, double vc, double p_in,
    SlopeLossExponent exponent = SlopeLossExponent::kSingle);

}  // namespace rbsim::gain
