#include "plastcone/yield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "plastcone/errors.hpp"
#include "plastcone/random_gen.hpp"

namespace plastcone {

YieldFunction von_mises(double k) {
  if (!(k > 0.0))
    throw ValidationError("von_mises: k must be positive, got " + std::to_string(k));
  YieldFunction f;
  f.name = "von_mises";
  f.level = k * k;
  f.report_level = k;
  f.smoothness = Smoothness::everywhere;
  f.value = [](const SymTensor3& s) { return j2_invariant(s); };
  f.gradient = [](const SymTensor3& s) { return deviator(s); };
  f.report = [](const SymTensor3& s) { return std::sqrt(std::max(0.0, j2_invariant(s))); };
  return f;
}

YieldFunction tresca(double k, double eig_tol) {
  if (!(k > 0.0))
    throw ValidationError("tresca: k must be positive, got " + std::to_string(k));
  YieldFunction f;
  f.name = "tresca";
  f.level = k;
  f.report_level = k;
  f.smoothness = Smoothness::off_degenerate_set;
  f.value = [](const SymTensor3& s) {
    const SpectralDecomp d = spectral(s);
    return 0.5 * (d.lambda[0] - d.lambda[2]);
  };
  f.gradient = [eig_tol](const SymTensor3& s) {
    const SpectralDecomp d = spectral(s, eig_tol);
    if (d.mult != Multiplicity::distinct)
      throw NonDifferentiableError(
          "tresca: gradient undefined at a repeated eigenvalue (gaps " +
          std::to_string(d.lambda[0] - d.lambda[1]) + ", " +
          std::to_string(d.lambda[1] - d.lambda[2]) + ")");
    return (dyad(d.v[0]) - dyad(d.v[2])) * 0.5;
  };
  f.report = f.value;
  return f;
}

YieldFunction from_polynomial(const PolyCriterion& crit, const std::string& name) {
  if (crit.terms.empty())
    throw ValidationError("custom criterion '" + name + "': no terms");
  for (const PolyTerm& t : crit.terms)
    if (t.j2_pow < 0 || t.j3_pow < 0)
      throw ValidationError("custom criterion '" + name + "': negative power");

  const auto terms = crit.terms;
  YieldFunction f;
  f.name = name;
  f.level = crit.level;
  f.report_level = crit.level;
  f.smoothness = Smoothness::everywhere;
  f.value = [terms](const SymTensor3& s) {
    const double j2 = j2_invariant(s), j3 = j3_invariant(s);
    double v = 0.0;
    for (const PolyTerm& t : terms)
      v += t.coeff * std::pow(j2, t.j2_pow) * std::pow(j3, t.j3_pow);
    return v;
  };
  f.gradient = [terms](const SymTensor3& s) {
    const double j2 = j2_invariant(s), j3 = j3_invariant(s);
    double df_dj2 = 0.0, df_dj3 = 0.0;
    for (const PolyTerm& t : terms) {
      if (t.j2_pow > 0)
        df_dj2 += t.coeff * t.j2_pow * std::pow(j2, t.j2_pow - 1) * std::pow(j3, t.j3_pow);
      if (t.j3_pow > 0)
        df_dj3 += t.coeff * std::pow(j2, t.j2_pow) * t.j3_pow * std::pow(j3, t.j3_pow - 1);
    }
    return grad_j2(s) * df_dj2 + grad_j3(s) * df_dj3;
  };
  f.report = f.value;
  return f;
}

YieldDomain::YieldDomain(CriterionKind kind, std::vector<YieldFunction> fs, double tol, double k)
    : kind_(kind), functions_(std::move(fs)), saturation_tol_(tol), k_(k) {
  if (!(saturation_tol_ > 0.0))
    throw ValidationError("yield domain: saturation_tol must be positive");
  if (!slater_holds())
    throw ValidationError("yield domain: Slater check failed, 0 is not interior");
}

YieldDomain YieldDomain::make_von_mises(double k, double saturation_tol) {
  return YieldDomain(CriterionKind::von_mises, {von_mises(k)}, saturation_tol, k);
}

YieldDomain YieldDomain::make_tresca(double k, double saturation_tol) {
  return YieldDomain(CriterionKind::tresca, {tresca(k)}, saturation_tol, k);
}

YieldDomain YieldDomain::make_custom(std::vector<PolyCriterion> criteria, double saturation_tol) {
  if (criteria.empty()) throw ValidationError("custom domain: no criteria");
  std::vector<YieldFunction> fs;
  fs.reserve(criteria.size());
  for (std::size_t i = 0; i < criteria.size(); ++i)
    fs.push_back(from_polynomial(criteria[i], "custom[" + std::to_string(i) + "]"));

  // Midpoint convexity screen on a fixed seeded sample. Polynomials in
  // (J2, J3) are not convex in general and the cone formulas assume a convex
  // domain, so refuse anything the screen catches.
  RandomGen rng(0x5eedc0de);
  for (const YieldFunction& f : fs) {
    const double scale = 1.0 + std::abs(f.report_level);
    for (int trial = 0; trial < 64; ++trial) {
      const SymTensor3 a = rng.sym_tensor(scale);
      const SymTensor3 b = rng.sym_tensor(scale);
      const double mid = f.value((a + b) * 0.5);
      const double avg = 0.5 * (f.value(a) + f.value(b));
      const double allow = 1e-10 * std::max(1.0, std::abs(avg));
      if (mid > avg + allow)
        throw ValidationError("custom criterion '" + f.name +
                              "': convexity spot-check failed (midpoint excess " +
                              std::to_string(mid - avg) + ")");
    }
  }

  double k = fs.front().report_level;
  for (const YieldFunction& f : fs) k = std::min(k, f.report_level);
  return YieldDomain(CriterionKind::custom, std::move(fs), saturation_tol, k);
}

double YieldDomain::membership(const SymTensor3& sigma) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const YieldFunction& f : functions_)
    worst = std::max(worst, f.value(sigma) - f.level);
  return worst;
}

double YieldDomain::report_value(const SymTensor3& sigma) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const YieldFunction& f : functions_)
    worst = std::max(worst, f.report(sigma));
  return worst;
}

SaturationSet YieldDomain::saturation(const SymTensor3& sigma) const {
  SaturationSet sat;
  sat.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    const YieldFunction& f = functions_[i];
    const double gap = f.value(sigma) - f.level;
    const double tol = saturation_tol_ * std::max(1.0, std::abs(f.level));
    sat.max_violation = std::max(sat.max_violation, gap);
    if (gap > tol)
      throw ValidationError("saturation: stress outside the yield domain, violation " +
                            std::to_string(gap) + " on " + f.name);
    if (std::abs(gap) <= tol) sat.indices.push_back(i);
  }
  return sat;
}

std::vector<std::size_t> YieldDomain::active_set(const SymTensor3& sigma) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    const YieldFunction& f = functions_[i];
    const double tol = saturation_tol_ * std::max(1.0, std::abs(f.level));
    if (f.value(sigma) - f.level >= -tol) idx.push_back(i);
  }
  return idx;
}

bool YieldDomain::slater_holds() const {
  const SymTensor3 zero{};
  for (const YieldFunction& f : functions_)
    if (!(f.value(zero) < f.level)) return false;
  return true;
}

double tresca_surrogate(const SymTensor3& sigma, double k) {
  const double j2 = j2_invariant(sigma), j3 = j3_invariant(sigma);
  const double k2 = k * k;
  return 4.0 * j2 * j2 * j2 - 27.0 * j3 * j3 - 36.0 * k2 * j2 * j2 +
         96.0 * k2 * k2 * j2 - 64.0 * k2 * k2 * k2;
}

} // namespace plastcone
