#pragma once

#include "rbsim/constants.hpp"

namespace rbsim::receiver {

// Beam splitter, linear PV converter and APD front end.
struct ReceiverModel {
  double mu = 0.99;       // fraction of the beam routed to the PV cell
  double eta_p = 0.3487;  // PV slope efficiency
  double p_pth = -1.535;  // PV linear-fit intercept, W (may be negative)
  double nu = 0.6;        // APD responsivity, A/W
  double b_x = 811.7e6;   // noise bandwidth, Hz
  double i_bg = 5100e-6;  // background current, A
  double r_l = 10e3;      // load resistance, Ohm
  double t_bg = 300.0;    // background temperature, K
  double k_b = constants::kBoltzmann;
  double q_e = constants::kElectronCharge;

  void validate() const;
};

struct SwiptResult {
  double p_pv_in = 0.0;
  double p_apd_in = 0.0;
  double p_e_out_raw = 0.0;
  double p_e_out = 0.0;
  double eta_e = 0.0;
  double i_d = 0.0;
  double n_thermal_sq = 0.0;
  double n_shot_sq = 0.0;
  double n_total_sq = 0.0;
  double c_tilde = 0.0;
};

struct SplitPower {
  double pv = 0.0;
  double apd = 0.0;
};

struct PvOutput {
  double raw = 0.0;      // eta_p * p_pv + p_pth, the fitted line
  double clamped = 0.0;  // max(0, raw), the delivered power
};

// (mu p_beam, p_beam - mu p_beam); the two parts sum back to p_beam.
SplitPower split_beam(double p_beam, double mu);

PvOutput pv_output(double p_pv, double eta_p, double p_pth);

// Uses the unclamped PV line, so it goes negative below the PV threshold.
double end_to_end_efficiency(double p_pv, double p_in, double eta_p,
                             double p_pth);

double apd_current(double p_apd, double nu);

// 4 k T B / R, with the Boltzmann constant given explicitly.
double thermal_noise_sq(double t, double b_x, double r_l,
                        double k_b = constants::kBoltzmann);

// 2 q (I_D + I_bg) B.
double shot_noise_sq(double i_d, double i_bg, double b_x,
                     double q_e = constants::kElectronCharge);

// 1/2 log2(1 + I_D^2 / (2 pi e N^2)), e being Euler's number.
double spectral_efficiency(double i_d, double n_total_sq);

SwiptResult evaluate_receiver(double p_beam, double p_in,
                              const ReceiverModel& model);

}  // namespace rbsim::receiver
