#include "rbsim/gain_power.hpp"

#include <algorithm>
#include <cmath>

#include "rbsim/constants.hpp"
#include "rbsim/error.hpp"

namespace rbsim::gain {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

bool unit_interval(double x) { return x > 0.0 && x <= 1.0; }

// r1 r2 v^2, the round-trip survival of the saturation condition.
double round_trip_survival(double r1, double r2, double v) {
  require(unit_interval(r1) && unit_interval(r2) && unit_interval(v),
          "reflectivities and loss factor must lie in (0, 1]");
  return r1 * r2 * v * v;
}

}  // namespace

void GainModel::validate() const {
  require(positive(g0), "gain: g0 must be > 0");
  require(positive(n0), "gain: n0 must be > 0");
  require(positive(gamma_conf), "gain: gamma_conf must be > 0");
  require(positive(alpha), "gain: alpha must be > 0");
  require(positive(beta), "gain: beta must be > 0");
  require(positive(auger), "gain: auger must be > 0");
  require(positive(l), "gain: l must be > 0");
  require(positive(a_s), "gain: a_s must be > 0");
  require(positive(a), "gain: a must be > 0");
}

void PumpModel::validate() const {
  require(unit_interval(eta_pc), "pump: eta_pc must lie in (0, 1]");
  require(unit_interval(eta_pa), "pump: eta_pa must lie in (0, 1]");
  require(positive(lambda_pump), "pump: lambda_pump must be > 0");
}

LossModel LossModel::from(double vc, double vd) {
  require(unit_interval(vc), "losses: vc must lie in (0, 1]");
  require(vd >= 0.0 && vd <= 1.0, "losses: vd must lie in [0, 1]");
  return {vc, vd, vc * vd};
}

double saturation_gain(double r1, double r2, double v, double l,
                       double gamma_conf) {
  require(positive(l), "saturation_gain: l must be > 0");
  require(positive(gamma_conf), "saturation_gain: gamma_conf must be > 0");
  const double survival = round_trip_survival(r1, r2, v);
  return -std::log(survival) / (2.0 * gamma_conf * l);
}

double threshold_carrier_density(const GainModel& gm, double r1, double r2,
                                 double v) {
  const double survival = round_trip_survival(r1, r2, v);
  return gm.n0 * std::pow(survival, -1.0 / (2.0 * gm.g0 * gm.l * gm.gamma_conf));
}

double carrier_lifetime(double n, const GainModel& gm) {
  require(n >= 0.0 && std::isfinite(n),
          "carrier_lifetime: density must be finite and >= 0");
  return 1.0 / (gm.alpha + gm.beta * n + gm.auger * n * n);
}

double threshold_power(const GainModel& gm, const PumpModel& pm, double n_th,
                       double tau, double lambda_beam) {
  require(positive(tau), "threshold_power: tau must be > 0");
  require(positive(pm.eta_pc) && positive(pm.eta_pa),
          "threshold_power: pump efficiencies must be > 0");
  require(positive(lambda_beam), "threshold_power: wavelength must be > 0");
  require(n_th >= 0.0, "threshold_power: n_th must be >= 0");
  const double photon = constants::kPlanck * constants::kLightSpeed;
  return gm.a_s * photon * gm.l * n_th /
         (lambda_beam * pm.eta_pc * pm.eta_pa * tau);
}

double slope_efficiency(const PumpModel& pm, double r1, double r2, double v,
                        double lambda_beam, SlopeLossExponent exponent) {
  require(unit_interval(r1) && unit_interval(r2) && unit_interval(v),
          "slope_efficiency: reflectivities and loss must lie in (0, 1]");
  require(positive(lambda_beam), "slope_efficiency: wavelength must be > 0");
  const double vk = exponent == SlopeLossExponent::kSquared ? v * v : v;
  const double quantum = pm.eta_pc * pm.eta_pa * (pm.lambda_pump / lambda_beam);
  const double survival = r1 * r2 * vk;
  require(survival < 1.0, "slope_efficiency: r1 r2 v must be < 1");
  return quantum * std::log(r2) / std::log(survival);
}

double beam_power(double p_in, double p_th, double eta_s) {
  return std::max(0.0, (p_in - p_th) * eta_s);
}

double transmission_efficiency(double p_in, double p_th, double eta_s) {
  require(p_in > 0.0, "transmission_efficiency: p_in must be > 0");
  return beam_power(p_in, p_th, eta_s) / p_in;
}

PowerResult evaluate_link(const optics::ResonatorGeometry& geometry,
                          const GainModel& gain, const PumpModel& pump,
                          double vc, double p_in, SlopeLossExponent exponent) {
  geometry.validate();
  gain.validate();
  pump.validate();
  require(p_in >= 0.0 && std::isfinite(p_in), "evaluate_link: p_in must be >= 0");

  PowerResult out;
  out.spot_radius = optics::spot_radius_on_gain(
      optics::one_trip_matrix(geometry), geometry.lambda_beam);
  if (out.spot_radius == 0.0) {
    throw DegenerateCavity("degenerate cavity: zero mode size on the gain");
  }
  out.losses = LossModel::from(
      vc, optics::diffraction_survival(gain.a, out.spot_radius));
  if (out.losses.v <= 0.0) {
    throw InvalidArgument("evaluate_link: beam fully lost to diffraction");
  }
  const double r1 = geometry.r1;
  const double r2 = geometry.r2;
  const double v = out.losses.v;

  out.g_sat = saturation_gain(r1, r2, v, gain.l, gain.gamma_conf);
  out.n_th = threshold_carrier_density(gain, r1, r2, v);
  out.tau = carrier_lifetime(out.n_th, gain);
  out.p_th = threshold_power(gain, pump, out.n_th, out.tau, geometry.lambda_beam);
  out.eta_s = slope_efficiency(pump, r1, r2, v, geometry.lambda_beam, exponent);
  out.p_beam = beam_power(p_in, out.p_th, out.eta_s);
  out.eta_b = p_in > 0.0 ? out.p_beam / p_in : 0.0;
  return out;
}

}  // namespace rbsim::gain
