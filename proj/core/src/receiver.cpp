#include "rbsim/receiver.hpp"

#include <algorithm>
#include <cmath>

#include "rbsim/error.hpp"

namespace rbsim::receiver {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

void ReceiverModel::validate() const {
  require(mu >= 0.0 && mu <= 1.0, "receiver: mu must lie in [0, 1]");
  require(std::isfinite(eta_p), "receiver: eta_p must be finite");
  require(std::isfinite(p_pth), "receiver: p_pth must be finite");
  require(nu > 0.0, "receiver: nu must be > 0");
  require(b_x > 0.0, "receiver: b_x must be > 0");
  require(i_bg >= 0.0, "receiver: i_bg must be >= 0");
  require(r_l > 0.0, "receiver: r_l must be > 0");
  require(t_bg > 0.0, "receiver: t_bg must be > 0");
  require(k_b > 0.0, "receiver: k_b must be > 0");
  require(q_e > 0.0, "receiver: q_e must be > 0");
}

SplitPower split_beam(double p_beam, double mu) {
  require(mu >= 0.0 && mu <= 1.0, "split_beam: mu must lie in [0, 1]");
  require(p_beam >= 0.0, "split_beam: p_beam must be >= 0");
  // Whichever of the two subtractions has operands within a factor of two
  // of each other is exact (Sterbenz), so pv + apd == p_beam holds exactly;
  // pv may differ from mu * p_beam by one rounding.
  const double apd = p_beam - mu * p_beam;
  const double pv = p_beam - apd;
  return {pv, apd};
}

PvOutput pv_output(double p_pv, double eta_p, double p_pth) {
  require(p_pv >= 0.0, "pv_output: p_pv must be >= 0");
  const double raw = eta_p * p_pv + p_pth;
  return {raw, std::max(0.0, raw)};
}

double end_to_end_efficiency(double p_pv, double p_in, double eta_p,
                             double p_pth) {
  require(p_in > 0.0, "end_to_end_efficiency: p_in must be > 0");
  return (eta_p * p_pv + p_pth) / p_in;
}

double apd_current(double p_apd, double nu) {
  require(p_apd >= 0.0, "apd_current: p_apd must be >= 0");
  return nu * p_apd;
}

double thermal_noise_sq(double t, double b_x, double r_l, double k_b) {
  require(r_l > 0.0, "thermal_noise_sq: load resistance must be > 0");
  return 4.0 * k_b * t * b_x / r_l;
}

double shot_noise_sq(double i_d, double i_bg, double b_x, double q_e) {
  require(i_d >= 0.0 && i_bg >= 0.0, "shot_noise_sq: currents must be >= 0");
  return 2.0 * q_e * (i_d + i_bg) * b_x;
}

double spectral_efficiency(double i_d, double n_total_sq) {
  require(n_total_sq > 0.0, "spectral_efficiency: noise power must be > 0");
  const double snr = i_d * i_d /
                     (2.0 * constants::kPi * constants::kEuler * n_total_sq);
  return 0.5 * std::log2(1.0 + snr);
}

SwiptResult evaluate_receiver(double p_beam, double p_in,
                              const ReceiverModel& model) {
  model.validate();
  SwiptResult r;
  const SplitPower split = split_beam(p_beam, model.mu);
  r.p_pv_in = split.pv;
  r.p_apd_in = split.apd;
  const PvOutput pv = pv_output(split.pv, model.eta_p, model.p_pth);
  r.p_e_out_raw = pv.raw;
  r.p_e_out = pv.clamped;
  r.eta_e = p_in > 0.0
                ? end_to_end_efficiency(split.pv, p_in, model.eta_p, model.p_pth)
                : 0.0;
  r.i_d = apd_current(split.apd, model.nu);
  r.n_thermal_sq = thermal_noise_sq(model.t_bg, model.b_x, model.r_l, model.k_b);
  r.n_shot_sq = shot_noise_sq(r.i_d, model.i_bg, model.b_x, model.q_e);
  r.n_total_sq = r.n_shot_sq + r.n_thermal_sq;
  r.c_tilde = spectral_efficiency(r.i_d, r.n_total_sq);
  return r;
}

}  // namespace rbsim::receiver
