#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <random>
#include <vector>

#include "rbsim/config.hpp"
#include "rbsim/error.hpp"
#include "rbsim/gain_power.hpp"
#include "support/oracle.hpp"

using namespace rbsim;
using namespace rbsim::gain;

namespace {

GainModel table_gain(double l = 3e-6) {
  GainModel gm = builtin_preset("paper-2022").gain;
  gm.l = l;
  return gm;
}

PumpModel pump() { return builtin_preset("paper-2022").pump.model; }

}  // namespace

TEST_CASE("preset gain constants arrive in SI") {
  const GainModel gm = table_gain();
  CHECK(gm.g0 == doctest::Approx(2e5));
  CHECK(gm.n0 == doctest::Approx(1.7e24));
  CHECK(gm.beta == doctest::Approx(1e-16));
  CHECK(gm.auger == doctest::Approx(6e-42));
  CHECK(gm.a_s == doctest::Approx(3e-8));
  CHECK(gm.a == doctest::Approx(2e-4));
  CHECK(gm.gamma_conf == 2.0);
}

TEST_CASE("saturation_gain") {
  CHECK(saturation_gain(1.0, 1.0, 1.0, 3e-6, 2.0) == 0.0);
  const double g = saturation_gain(0.999, 0.93, 0.98, 3e-6, 2.0);
  CHECK(g == doctest::Approx(-std::log(0.999 * 0.93 * 0.98 * 0.98) / (2.0 * 2.0 * 3e-6)));
  CHECK_THROWS_AS(saturation_gain(0.0, 0.9, 0.9, 3e-6, 2.0), InvalidArgument);
  CHECK_THROWS_AS(saturation_gain(0.9, 0.9, 0.9, 0.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(saturation_gain(0.9, 1.1, 0.9, 1e-6, 2.0), InvalidArgument);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> refl(0.5, 1.0), len(5e-8, 3e-6), gam(0.5, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double r1 = refl(rng), r2 = refl(rng), v = refl(rng), l = len(rng), gc = gam(rng);
    const double gs = saturation_gain(r1, r2, v, l, gc);
    CHECK(std::exp(2.0 * gc * gs * l) * r1 * r2 * v * v == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("threshold_carrier_density") {
  const GainModel gm = table_gain();
  CHECK(threshold_carrier_density(gm, 1.0, 1.0, 1.0) == doctest::Approx(1.7e24));
  oracle::ChainInputs in;
  CHECK(threshold_carrier_density(gm, 0.999, 0.93, 0.98) ==
        doctest::Approx(oracle::n_th(in)).epsilon(1e-12));
  CHECK(threshold_carrier_density(gm, 0.999, 0.93, 0.98) ==
        doctest::Approx(1.78e24).epsilon(0.01));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> refl(0.6, 1.0), len(5e-8, 3e-6);
  for (int i = 0; i < 40; ++i) {
    GainModel g = gm;
    g.l = len(rng);
    const double r1 = refl(rng), r2 = refl(rng), v = refl(rng);
    const double n = threshold_carrier_density(g, r1, r2, v);
    const double gs = saturation_gain(r1, r2, v, g.l, g.gamma_conf);
    CHECK(n == doctest::Approx(g.n0 * std::exp(gs / g.g0)).epsilon(1e-12));
    CHECK(n >= g.n0);
  }
}

TEST_CASE("carrier_lifetime") {
  const GainModel gm = table_gain();
  CHECK(carrier_lifetime(0.0, gm) == doctest::Approx(1e-7));
  oracle::ChainInputs in;
  CHECK(carrier_lifetime(1.7e24, gm) == doctest::Approx(oracle::tau(in, 1.7e24)).epsilon(1e-12));
  CHECK(carrier_lifetime(1.7e24, gm) == doctest::Approx(5.07e-9).epsilon(0.01));
  double prev = carrier_lifetime(0.0, gm);
  for (int i = 1; i <= 100; ++i) {
    const double t = carrier_lifetime(1e23 * i, gm);
    CHECK(t < prev);
    prev = t;
  }
  CHECK_THROWS_AS(carrier_lifetime(-1.0, gm), InvalidArgument);
}

TEST_CASE("threshold_power") {
  const GainModel gm = table_gain();
  const PumpModel pm = pump();
  oracle::ChainInputs in;
  const double n = oracle::n_th(in);
  const double t = oracle::tau(in, n);
  const double p = threshold_power(gm, pm, n, t, 980e-9);
  CHECK(p == doctest::Approx(oracle::p_th(in)).epsilon(1e-12));
  CHECK(p == doctest::Approx(13.0).epsilon(0.05));
  GainModel twice = gm;
  twice.a_s *= 2.0;
  CHECK(threshold_power(twice, pm, n, t, 980e-9) == doctest::Approx(2.0 * p).epsilon(1e-14));
  CHECK_THROWS_AS(threshold_power(gm, pm, n, 0.0, 980e-9), InvalidArgument);
  PumpModel zero = pm;
  zero.eta_pc = 0.0;
  CHECK_THROWS_AS(threshold_power(gm, zero, n, t, 980e-9), InvalidArgument);
}

TEST_CASE("slope_efficiency") {
  const PumpModel pm = pump();
  const double quantum = 0.6 * 0.85 * 808.0 / 980.0;
  CHECK(slope_efficiency(pm, 1.0, 0.93, 1.0, 980e-9) == doctest::Approx(quantum).epsilon(1e-14));
  oracle::ChainInputs in;
  CHECK(slope_efficiency(pm, 0.999, 0.93, 0.98, 980e-9) ==
        doctest::Approx(oracle::eta_s(in)).epsilon(1e-12));
  CHECK(slope_efficiency(pm, 0.999, 0.93, 0.98, 980e-9) == doctest::Approx(0.326).epsilon(0.005));
  // With V squared in the log the slope drops.
  CHECK(slope_efficiency(pm, 0.999, 0.93, 0.98, 980e-9, SlopeLossExponent::kSquared) <
        slope_efficiency(pm, 0.999, 0.93, 0.98, 980e-9));
  CHECK_THROWS_AS(slope_efficiency(pm, 1.0, 1.0, 1.0, 980e-9), InvalidArgument);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> refl(0.5, 0.9999);
  for (int i = 0; i < 50; ++i) {
    const double s = slope_efficiency(pm, refl(rng), refl(rng), refl(rng), 980e-9);
    CHECK(s > 0.0);
    CHECK(s <= quantum * (1.0 + 1e-15));
  }
}

TEST_CASE("beam_power and transmission_efficiency") {
  CHECK(beam_power(10.0, 10.0, 0.3) == 0.0);
  CHECK(beam_power(5.0, 10.0, 0.3) == 0.0);
  CHECK(beam_power(150.0, 10.0, 0.3) == doctest::Approx(42.0));
  CHECK(transmission_efficiency(10.0, 10.0, 0.3) == 0.0);
  CHECK(transmission_efficiency(1e12, 10.0, 0.3) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(transmission_efficiency(150.0, 10.0, 0.3) ==
        doctest::Approx(0.3 * (1.0 - 10.0 / 150.0)).epsilon(1e-14));
  CHECK_THROWS_AS(transmission_efficiency(0.0, 10.0, 0.3), InvalidArgument);

  SUBCASE("piecewise linear in p_in") {
    const double p_th = 13.2, eta = 0.3254;
    for (double p : {20.0, 80.0, 140.0}) {
      const double h = 1.0;
      const double slope = (beam_power(p + h, p_th, eta) - beam_power(p, p_th, eta)) / h;
      CHECK(slope == doctest::Approx(eta).epsilon(1e-9));
    }
    CHECK(beam_power(12.0, p_th, eta) - beam_power(5.0, p_th, eta) == 0.0);
  }
  SUBCASE("eta_b non-decreasing and bounded by eta_s") {
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double e = transmission_efficiency(1.0 + i, 13.2, 0.3254);
      CHECK(e >= prev);
      CHECK(e <= 0.3254);
      prev = e;
    }
  }
}

TEST_CASE("evaluate_link") {
  const ModelParameters mp = resolve(builtin_preset("paper-2022"));

  SUBCASE("chain matches the single-step functions") {
    const PowerResult r = evaluate_link(mp.geometry, mp.gain, mp.pump, mp.vc, 150.0);
    const double w = optics::spot_radius_on_gain(optics::one_trip_matrix(mp.geometry),
                                                 mp.geometry.lambda_beam);
    CHECK(r.spot_radius == w);
    const double vd = optics::diffraction_survival(mp.gain.a, w);
    CHECK(r.losses.vd == vd);
    CHECK(r.losses.v == doctest::Approx(mp.vc * vd).epsilon(1e-15));
    oracle::ChainInputs in;
    in.l = mp.gain.l;
    in.r1 = mp.geometry.r1;
    in.r2 = mp.geometry.r2;
    in.v = r.losses.v;
    CHECK(r.n_th == doctest::Approx(oracle::n_th(in)).epsilon(1e-12));
    CHECK(r.tau == doctest::Approx(oracle::tau(in, r.n_th)).epsilon(1e-12));
    CHECK(r.p_th == doctest::Approx(oracle::p_th(in)).epsilon(1e-12));
    CHECK(r.eta_s == doctest::Approx(oracle::eta_s(in)).epsilon(1e-12));
    CHECK(r.p_beam == doctest::Approx((150.0 - r.p_th) * r.eta_s).epsilon(1e-12));
    CHECK(r.eta_b == doctest::Approx(r.p_beam / 150.0).epsilon(1e-14));
    CHECK(std::exp(2.0 * mp.gain.gamma_conf * r.g_sat * mp.gain.l) * mp.geometry.r1 *
              mp.geometry.r2 * r.losses.v * r.losses.v ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("lossless idealization") {
    optics::ResonatorGeometry g = mp.geometry;
    g.r1 = 1.0;
    g.r2 = 0.999999;  // r2 = 1 leaves nothing to couple out
    GainModel gm = mp.gain;
    gm.a = 1.0;  // aperture far larger than the spot
    const PowerResult r = evaluate_link(g, gm, mp.pump, 1.0, 150.0);
    CHECK(r.losses.vd == doctest::Approx(1.0).epsilon(1e-12));
    const double quantum = 0.6 * 0.85 * 808.0 / 980.0;
    CHECK(r.eta_s == doctest::Approx(quantum).epsilon(1e-9));
    CHECK(r.n_th == doctest::Approx(gm.n0).epsilon(1e-4));
  }
  SUBCASE("non-decreasing in p_in") {
    double prev = 0.0;
    for (int i = 0; i <= 60; ++i) {
      const double p = evaluate_link(mp.geometry, mp.gain, mp.pump, mp.vc, 2.5 * i + 0.1).p_beam;
      CHECK(p >= prev);
      prev = p;
    }
  }
  SUBCASE("unstable cavity propagates") {
    optics::ResonatorGeometry g = mp.geometry;
    g.fr2 = optics::m2_stability_edge(g) - 1.0;
    CHECK_THROWS_AS(evaluate_link(g, mp.gain, mp.pump, mp.vc, 150.0), UnstableResonator);
  }
}

TEST_CASE("threshold power has an interior minimum in l") {
  const GainModel base = table_gain();
  const PumpModel pm = pump();
  std::vector<double> p;
  for (int i = 0; i < 200; ++i) {
    GainModel gm = base;
    gm.l = 0.05e-6 + (3e-6 - 0.05e-6) * i / 199.0;
    const double n = threshold_carrier_density(gm, 0.999, 0.93, 0.98);
    p.push_back(threshold_power(gm, pm, n, carrier_lifetime(n, gm), 980e-9));
  }
  const auto it = std::min_element(p.begin(), p.end());
  CHECK(it != p.begin());
  CHECK(it != p.end() - 1);
}
