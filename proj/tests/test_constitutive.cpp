#include <doctest.h>

#include <cmath>

#include "plastcone/constitutive.hpp"
#include "plastcone/elasticity.hpp"
#include "plastcone/errors.hpp"
#include "plastcone/random_gen.hpp"
#include "plastcone/sampling.hpp"

using namespace plastcone;

namespace {

SymTensor3 shear(double s12) {
  SymTensor3 t;
  t.s12 = s12;
  return t;
}

StrainPath constant_shear_path(double rate12, double t_end) {
  StrainPath p;
  p.knots.push_back({0.0, shear(rate12)});
  p.knots.push_back({t_end, shear(rate12)});
  return p;
}

} // namespace

TEST_CASE("rate split at a saturated von Mises state") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  const YieldDomain dom = YieldDomain::make_von_mises(1.0);
  const SymTensor3 sigma = shear(1.0);

  SUBCASE("outward shear rate is fully plastic in the deviator") {
    const RateSplit rs = rate_split(dom, mod, sigma, shear(0.3));
    CHECK(rs.branch == Branch::one);
    CHECK(rs.eps_p_rate.s12 == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(rs.eps_e_rate.norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rs.sigma_rate.norm() == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("inward rate stays elastic") {
    const RateSplit rs = rate_split(dom, mod, sigma, shear(-0.3));
    CHECK(rs.eps_p_rate.norm() == 0.0);
    CHECK((rs.sigma_rate - hooke(mod, shear(-0.3))).norm() == doctest::Approx(0.0));
  }
  SUBCASE("split parts recombine and stay orthogonal") {
    RandomGen rng(7);
    for (int i = 0; i < 50; ++i) {
      const SymTensor3 rate = rng.sym_tensor(1.0);
      const RateSplit rs = rate_split(dom, mod, sigma, rate);
      CHECK((rs.eps_e_rate + rs.eps_p_rate - rate).norm() <= 1e-12);
      CHECK(std::abs(dot(rs.eps_e_rate, rs.eps_p_rate)) <= 1e-12);
      CHECK(std::abs(rs.eps_p_rate.trace()) <= 1e-12);
      CHECK((rs.sigma_rate - (hooke(mod, rate) - rs.eps_p_rate * (2.0 * mod.mu))).norm() <= 1e-12);
    }
  }
  SUBCASE("strict mode rejects stresses far outside the surface") {
    CHECK_THROWS_AS((void)rate_split(dom, mod, shear(1.5), shear(0.1)), ValidationError);
    CHECK_NOTHROW((void)rate_split(dom, mod, shear(1.5), shear(0.1), false));
  }
}

TEST_CASE("stress-rate operator routes agree") {
  const ElasticModuli mod = moduli_from_lame(1.3, 0.7, 1.0);
  const double k = 1.1;
  const YieldDomain vm = YieldDomain::make_von_mises(k);
  const YieldDomain tr = YieldDomain::make_tresca(0.9);
  RandomGen rng(11);

  SUBCASE("generic operator equals the tangent projection of the Hooke image") {
    for (int i = 0; i < 40; ++i) {
      const bool use_vm = i % 2 == 0;
      const YieldDomain& dom = use_vm ? vm : tr;
      const SymTensor3 sigma = use_vm ? sample_von_mises_boundary(rng, k)
                                      : sample_tresca_smooth_boundary(rng, 0.9);
      const SymTensor3 rate = rng.sym_tensor(1.0);
      const SymTensor3 direct = script_h(dom, mod, sigma, rate);
      const SymTensor3 via_split = split(dom, sigma, hooke(mod, rate)).split.tangent;
      CHECK((direct - via_split).norm() <= 1e-10 * std::max(1.0, hooke(mod, rate).norm()));
    }
  }
  SUBCASE("von Mises closed form matches the generic operator") {
    for (int i = 0; i < 40; ++i) {
      const SymTensor3 sigma = sample_von_mises_boundary(rng, k);
      const SymTensor3 rate = rng.sym_tensor(1.0);
      const SymTensor3 a = script_h(vm, mod, sigma, rate);
      const SymTensor3 b = script_h_von_mises(mod, k, sigma, rate);
      CHECK((a - b).norm() <= 1e-10 * std::max(1.0, a.norm()));
    }
  }
  SUBCASE("the operator image is orthogonal to the plastic rate") {
    for (int i = 0; i < 40; ++i) {
      const SymTensor3 sigma = sample_von_mises_boundary(rng, k);
      const SymTensor3 rate = rng.sym_tensor(1.0);
      const RateSplit rs = rate_split(vm, mod, sigma, rate);
      const double scale = std::max(rs.eps_p_rate.norm() * rs.sigma_rate.norm(), 1e-30);
      CHECK(std::abs(dot(rs.eps_p_rate, rs.sigma_rate)) / scale <= 1e-8);
    }
  }
}

TEST_CASE("von Mises closed form, frozen cases") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  SUBCASE("plastic shear flow freezes the stress") {
    const SymTensor3 h = script_h_von_mises(mod, 1.0, shear(1.0), shear(0.3));
    CHECK(h.norm() == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("rates orthogonal to the deviator pass through Hooke") {
    SymTensor3 axial;
    axial.s11 = 0.4;
    const SymTensor3 h = script_h_von_mises(mod, 1.0, shear(1.0), axial);
    CHECK((h - hooke(mod, axial)).norm() <= 1e-14);
  }
  SUBCASE("inside the surface the Heaviside factor is off") {
    const SymTensor3 h = script_h_von_mises(mod, 1.0, shear(0.99), shear(0.3));
    CHECK((h - hooke(mod, shear(0.3))).norm() <= 1e-14);
  }
}

TEST_CASE("strain path validation and interpolation") {
  SUBCASE("non-increasing knot times are rejected with the knot index") {
    StrainPath p;
    p.knots.push_back({0.0, shear(1.0)});
    p.knots.push_back({1.0, shear(1.0)});
    p.knots.push_back({1.0, shear(2.0)});
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("knot 2"), ValidationError);
  }
  SUBCASE("empty paths are rejected") {
    StrainPath p;
    CHECK_THROWS_AS(p.validate(), ValidationError);
  }
  SUBCASE("piecewise constant holds the left knot value") {
    StrainPath p;
    p.knots.push_back({0.0, shear(1.0)});
    p.knots.push_back({2.0, shear(3.0)});
    CHECK(p.rate_at(-0.5).norm() == 0.0);
    CHECK(p.rate_at(0.0).s12 == doctest::Approx(1.0));
    CHECK(p.rate_at(1.999).s12 == doctest::Approx(1.0));
    CHECK(p.rate_at(2.5).s12 == doctest::Approx(3.0));
    CHECK(p.t_end() == doctest::Approx(2.0));
  }
  SUBCASE("piecewise linear interpolates between knots") {
    StrainPath p;
    p.interp = PathInterp::piecewise_linear;
    p.knots.push_back({0.0, shear(0.0)});
    p.knots.push_back({2.0, shear(1.0)});
    CHECK(p.rate_at(0.5).s12 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(p.rate_at(2.0).s12 == doctest::Approx(1.0));
  }
}

TEST_CASE("driver: elastic ramp matches Hooke exactly") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  const YieldDomain dom = YieldDomain::make_von_mises(100.0);
  const DriverResult res = integrate_path(dom, mod, MaterialState{},
                                          constant_shear_path(0.25, 1.0), 1e-3);
  const DriverRecord& last = res.records.back();
  CHECK(last.state.t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(last.state.sigma.s12 == doctest::Approx(2.0 * mod.mu * 0.25 * 1.0).epsilon(1e-10));
  CHECK(last.state.eps_p.norm() == 0.0);
  CHECK(last.state.eps_e.s12 == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(res.max_pre_correction_membership == 0.0);
}

TEST_CASE("driver: linear rate interpolation integrates the triangle ramp") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  const YieldDomain dom = YieldDomain::make_von_mises(100.0);
  StrainPath p;
  p.interp = PathInterp::piecewise_linear;
  p.knots.push_back({0.0, shear(0.0)});
  p.knots.push_back({1.0, shear(0.2)});
  const DriverResult res = integrate_path(dom, mod, MaterialState{}, p, 1e-3);
  // exact integral of the rate is 0.1; explicit Euler lags by O(dt)
  CHECK(res.records.back().state.sigma.s12 == doctest::Approx(0.2).epsilon(3e-3));
  CHECK(std::abs(res.records.back().state.sigma.s12 - 0.2) > 1e-5);
}

TEST_CASE("driver: pure-shear ramp saturates on a plateau at k") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  const YieldDomain dom = YieldDomain::make_von_mises(1.0);
  const DriverResult res = integrate_path(dom, mod, MaterialState{},
                                          constant_shear_path(0.1, 6.0), 1e-4);
  const double final12 = res.records.back().state.sigma.s12;
  CHECK(final12 >= 1.0 - 1e-4);
  CHECK(final12 <= 1.0 + 1e-6);
  CHECK(res.records.back().f_value == doctest::Approx(1.0).epsilon(1e-9));
  // on the plateau all the strain rate is plastic
  CHECK(res.records.back().eps_p_rate.s12 == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(res.records.back().consistency == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("driver: load, unload, reload leaves a plastic residue") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  const YieldDomain dom = YieldDomain::make_von_mises(1.0);
  StrainPath p;
  p.knots.push_back({0.0, shear(0.5)});
  p.knots.push_back({3.0, shear(-0.5)});
  p.knots.push_back({4.0, shear(0.5)});
  p.knots.push_back({5.0, shear(0.5)});
  const DriverResult res = integrate_path(dom, mod, MaterialState{}, p, 1e-4);

  // crossing at t = 1, plateau until 3, elastic unload to sigma12 = 0 at 4,
  // elastic reload back to the surface at 5
  const DriverRecord& last = res.records.back();
  CHECK(last.state.sigma.s12 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(last.state.eps_p.s12 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(last.state.eps_e.s12 == doctest::Approx(0.5).epsilon(1e-6));

  const std::size_t unload_end = 40000; // record index at t = 4
  const DriverRecord& unloaded = res.records.at(unload_end);
  CHECK(unloaded.state.sigma.s12 == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(unloaded.state.eps_p.s12 == doctest::Approx(1.0).epsilon(1e-6));

  for (std::size_t i = 1; i < res.records.size(); ++i) {
    const DriverRecord& rec = res.records[i];
    const SymTensor3 total = rec.eps_e_rate + rec.eps_p_rate;
    CHECK((total - p.rate_at(res.records[i - 1].state.t)).norm() <= 1e-11);
    CHECK(rec.membership <= 1e-9);
  }
}

TEST_CASE("driver: hydrostatic preload does not change the plastic flow") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  const YieldDomain dom = YieldDomain::make_von_mises(1.0);
  const DriftPolicy policy{DriftKind::radial_return, 1e-4};
  const StrainPath p = constant_shear_path(0.5, 1.4);
  const DriverResult base = integrate_path(dom, mod, MaterialState{}, p, 1e-4, policy);
  MaterialState pressed;
  pressed.sigma = SymTensor3::identity() * 0.8;
  const DriverResult shifted = integrate_path(dom, mod, pressed, p, 1e-4, policy);
  REQUIRE(base.records.size() == shifted.records.size());
  for (std::size_t i = 0; i < base.records.size(); ++i) {
    CHECK((base.records[i].eps_p_rate - shifted.records[i].eps_p_rate).norm() <= 1e-10);
    CHECK(shifted.records[i].state.sigma.trace() == doctest::Approx(2.4).epsilon(1e-10));
  }
}

TEST_CASE("driver: validation and drift policing") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  const YieldDomain dom = YieldDomain::make_von_mises(1.0);

  SUBCASE("non-positive dt is rejected") {
    CHECK_THROWS_AS((void)integrate_path(dom, mod, MaterialState{},
                                         constant_shear_path(0.1, 1.0), 0.0),
                    ValidationError);
  }
  SUBCASE("an initial state outside the surface is rejected") {
    MaterialState bad;
    bad.sigma = shear(2.0);
    CHECK_THROWS_WITH_AS((void)integrate_path(dom, mod, bad, constant_shear_path(0.1, 1.0), 1e-3),
                         doctest::Contains("initial"), ValidationError);
  }
  // rate 0.47 puts the yield crossing strictly between grid points, so the
  // crossing step overshoots the surface by ~1e-2 in the stored value
  SUBCASE("uncorrected drift beyond the hard limit aborts with the step index") {
    const DriftPolicy loose{DriftKind::none, 1e-9};
    CHECK_THROWS_WITH_AS((void)integrate_path(dom, mod, MaterialState{},
                                              constant_shear_path(0.47, 2.0), 1e-2, loose),
                         doctest::Contains("step"), NumericalError);
  }
  SUBCASE("the same run passes with radial return") {
    const DriftPolicy fix{DriftKind::radial_return, 1e-2};
    const DriverResult res = integrate_path(dom, mod, MaterialState{},
                                            constant_shear_path(0.47, 2.0), 1e-2, fix);
    CHECK(res.records.back().membership <= 1e-12);
    CHECK(res.max_pre_correction_membership > 0.0);
  }
}

TEST_CASE("radial return restores the surface exactly") {
  SUBCASE("von Mises rescales the deviator to k") {
    const YieldDomain dom = YieldDomain::make_von_mises(1.0);
    const SymTensor3 fixed = radial_return(dom, shear(1.25) + SymTensor3::identity() * 0.4);
    CHECK(fixed.s12 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fixed.trace() == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(dom.membership(fixed) <= 0.0);
  }
  SUBCASE("a stress already inside is untouched") {
    const YieldDomain dom = YieldDomain::make_von_mises(1.0);
    const SymTensor3 inside = shear(0.5);
    CHECK((radial_return(dom, inside) - inside).norm() == 0.0);
  }
  SUBCASE("tresca rescales by the report value") {
    const YieldDomain dom = YieldDomain::make_tresca(1.0);
    SymTensor3 sigma = SymTensor3::diag(1.5, 0.0, -1.5);
    const SymTensor3 fixed = radial_return(dom, sigma);
    CHECK(dom.report_value(fixed) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dom.membership(fixed) <= 0.0);
  }
  SUBCASE("custom criteria fall back to bisection") {
    PolyCriterion crit;
    crit.terms.push_back({1.0, 1, 0}); // J2 <= 0.5
    crit.level = 0.5;
    const YieldDomain dom = YieldDomain::make_custom({crit});
    const SymTensor3 fixed = radial_return(dom, shear(1.7) + SymTensor3::identity() * 0.2);
    CHECK(dom.membership(fixed) <= 0.0);
    CHECK(dom.membership(fixed) >= -1e-9);
    CHECK(fixed.trace() == doctest::Approx(0.6).epsilon(1e-12));
  }
}

TEST_CASE("driver: maximum work inequality along a plastic run") {
  const ElasticModuli mod = moduli_from_lame(1.0, 1.0, 1.0);
  const YieldDomain dom = YieldDomain::make_von_mises(1.0);
  const DriverResult res = integrate_path(dom, mod, MaterialState{},
                                          constant_shear_path(0.5, 2.0), 1e-3);
  RandomGen rng(23);
  for (std::size_t i = 1; i < res.records.size(); i += 100) {
    const DriverRecord& rec = res.records[i];
    if (rec.eps_p_rate.norm() == 0.0) continue;
    for (int probe = 0; probe < 10; ++probe) {
      const SymTensor3 b = sample_von_mises_boundary(rng, 1.0);
      const SymTensor3 inside =
          deviator(b) * (0.95 * rng.uniform()) + SymTensor3::identity() * (b.trace() / 3.0);
      CHECK(dot(rec.eps_p_rate, res.records[i - 1].state.sigma - inside) >= -1e-9);
    }
  }
}
