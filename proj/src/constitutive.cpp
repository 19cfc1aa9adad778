#include "plastcone/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plastcone/errors.hpp"

namespace plastcone {

RateSplit rate_split(const YieldDomain& domain, const ElasticModuli& moduli,
                     const SymTensor3& sigma, const SymTensor3& eps_rate, bool strict) {
  const SplitResult sr = split(domain, sigma, eps_rate, strict);
  RateSplit out;
  out.eps_e_rate = sr.split.tangent;
  out.eps_p_rate = sr.split.normal;
  out.sigma_rate = hooke(moduli, eps_rate) - out.eps_p_rate * (2.0 * moduli.mu);
  out.branch = sr.branch;
  return out;
}

SymTensor3 script_h(const YieldDomain& domain, const ElasticModuli& moduli,
                    const SymTensor3& sigma, const SymTensor3& eps_rate, bool strict) {
  return rate_split(domain, moduli, sigma, eps_rate, strict).sigma_rate;
}

SymTensor3 script_h_von_mises(const ElasticModuli& moduli, double k, const SymTensor3& sigma,
                              const SymTensor3& eps_rate, double saturation_tol) {
  const SymTensor3 dev = deviator(sigma);
  const double k2 = k * k;
  const double gap = 0.5 * dot(dev, dev) - k2; // J2 - k^2
  SymTensor3 out = hooke(moduli, eps_rate);
  if (gap >= -saturation_tol * std::max(1.0, k2)) {
    const double loading = std::max(0.0, dot(eps_rate, dev));
    out -= dev * (moduli.mu / k2 * loading);
  }
  return out;
}

void StrainPath::validate() const {
  if (knots.empty()) throw ValidationError("strain path: no knots");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i].t > knots[i - 1].t))
      throw ValidationError("strain path: knot times must be strictly increasing (knot " +
                            std::to_string(i) + ")");
}

SymTensor3 StrainPath::rate_at(double t) const {
  if (knots.empty() || t < knots.front().t) return SymTensor3{};
  if (interp == PathInterp::piecewise_constant) {
    std::size_t j = 0;
    while (j + 1 < knots.size() && knots[j + 1].t <= t) ++j;
    return knots[j].rate;
  }
  if (t >= knots.back().t) return knots.back().rate;
  std::size_t j = 0;
  while (j + 1 < knots.size() && knots[j + 1].t <= t) ++j;
  const PathKnot& a = knots[j];
  const PathKnot& b = knots[j + 1];
  const double w = (t - a.t) / (b.t - a.t);
  return a.rate * (1.0 - w) + b.rate * w;
}

double StrainPath::t_end() const { return knots.empty() ? 0.0 : knots.back().t; }

SymTensor3 radial_return(const YieldDomain& domain, const SymTensor3& sigma) {
  if (domain.membership(sigma) <= 0.0) return sigma;

  const double pressure = trace(sigma) / 3.0;
  const SymTensor3 hydro = SymTensor3::identity() * pressure;
  const SymTensor3 dev = sigma - hydro;

  double scale = 1.0;
  if (domain.kind() == CriterionKind::von_mises || domain.kind() == CriterionKind::tresca) {
    // report form is positively homogeneous of degree one in the deviator
    const double value = domain.report_value(sigma);
    if (value > 0.0) scale = domain.k() / value;
  } else {
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-17; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (domain.membership(hydro + dev * mid) > 0.0 ? hi : lo) = mid;
    }
    scale = lo;
  }

  SymTensor3 out = hydro + dev * scale;
  for (int guard = 0; guard < 4 && domain.membership(out) > 0.0; ++guard) {
    scale *= 1.0 - 1e-15;
    out = hydro + dev * scale;
  }
  return out;
}

DriverResult integrate_path(const YieldDomain& domain, const ElasticModuli& moduli,
                            const MaterialState& initial, const StrainPath& path, double dt,
                            const DriftPolicy& policy) {
  path.validate();
  if (!(dt > 0.0)) throw ValidationError("integrate_path: dt must be positive");
  if (!(policy.drift_tol > 0.0))
    throw ValidationError("integrate_path: drift_tol must be positive");

  const double initial_membership = domain.membership(initial.sigma);
  if (initial_membership > policy.drift_tol)
    throw ValidationError("integrate_path: initial stress violates the domain by " +
                          std::to_string(initial_membership));

  DriverResult result;
  MaterialState state = initial;

  DriverRecord rec;
  rec.state = state;
  rec.f_value = domain.report_value(state.sigma);
  rec.membership = initial_membership;
  rec.pre_correction_membership = initial_membership;
  result.records.push_back(rec);
  result.max_pre_correction_membership = std::max(0.0, initial_membership);

  const double t_end = path.t_end();
  std::size_t step = 0;
  while (state.t < t_end - 1e-12 * std::max(1.0, std::abs(t_end))) {
    const double h = std::min(dt, t_end - state.t);
    const SymTensor3 rate = path.rate_at(state.t);
    const RateSplit rs = rate_split(domain, moduli, state.sigma, rate, false);

    state.sigma += rs.sigma_rate * h;
    state.eps_e += rs.eps_e_rate * h;
    state.eps_p += rs.eps_p_rate * h;
    state.t += h;
    ++step;

    const double pre = domain.membership(state.sigma);
    result.max_pre_correction_membership = std::max(result.max_pre_correction_membership, pre);
    if (policy.kind == DriftKind::radial_return && pre > 0.0)
      state.sigma = radial_return(domain, state.sigma);

    const double post = domain.membership(state.sigma);
    if (post > 100.0 * policy.drift_tol)
      throw NumericalError("integrate_path: drift beyond hard limit at step " +
                           std::to_string(step) + ", membership " + std::to_string(post));

    DriverRecord r;
    r.state = state;
    r.eps_e_rate = rs.eps_e_rate;
    r.eps_p_rate = rs.eps_p_rate;
    r.sigma_rate = rs.sigma_rate;
    r.branch = rs.branch;
    r.f_value = domain.report_value(state.sigma);
    r.membership = post;
    r.pre_correction_membership = pre;
    r.consistency = dot(rs.eps_p_rate, rs.sigma_rate);
    result.records.push_back(r);
  }
  return result;
}

} // namespace plastcone
