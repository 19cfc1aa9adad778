#ifndef PLASTCONE_YIELD_HPP
#define PLASTCONE_YIELD_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "plastcone/tensor.hpp"

namespace plastcone {

enum class Smoothness { everywhere, off_degenerate_set };

enum class CriterionKind { von_mises, tresca, custom };

/// One inequality f(sigma) <= level of a yield domain.
///
/// The von Mises criterion is stored in squared form: f = J2 against level
/// k^2, so the gradient is exactly dev(sigma). The familiar sqrt(J2) <= k
/// reading is available through report()/report_level for output only.
struct YieldFunction {
  std::string name;
  double level = 0.0;
  double report_level = 0.0;
  Smoothness smoothness = Smoothness::everywhere;
  std::function<double(const SymTensor3&)> value;
  std::function<SymTensor3(const SymTensor3&)> gradient;
  std::function<double(const SymTensor3&)> report;
};

/// f = J2 <= k^2. Requires k > 0.
YieldFunction von_mises(double k);

/// f = (lambda_1 - lambda_3) / 2 <= k. Requires k > 0. The gradient exists
/// only at stresses with distinct deviator eigenvalues; elsewhere it throws
/// NonDifferentiableError.
YieldFunction tresca(double k, double eig_tol = kDefaultEigTol);

/// Term c * J2^p2 * J3^p3 of a custom polynomial criterion.
struct PolyTerm {
  double coeff = 0.0;
  int j2_pow = 0;
  int j3_pow = 0;
};

struct PolyCriterion {
  std::vector<PolyTerm> terms;
  double level = 0.0;
};

YieldFunction from_polynomial(const PolyCriterion& crit, const std::string& name);

/// Saturated-constraint indices at a boundary point, with the largest
/// observed violation max_i(f_i - k_i) for diagnostics.
struct SaturationSet {
  std::vector<std::size_t> indices;
  double max_violation = 0.0;
};

inline constexpr double kDefaultSaturationTol = 1e-8;

/// Intersection of yield inequalities C = { f_i(sigma) <= k_i }.
class YieldDomain {
public:
  static YieldDomain make_von_mises(double k, double saturation_tol = kDefaultSaturationTol);
  static YieldDomain make_tresca(double k, double saturation_tol = kDefaultSaturationTol);
  /// Custom criteria are screened at construction: the Slater probe
  /// f_i(0) < k_i must pass and a seeded random-midpoint convexity spot-check
  /// must not find a violation.
  static YieldDomain make_custom(std::vector<PolyCriterion> criteria,
                                 double saturation_tol = kDefaultSaturationTol);

  CriterionKind kind() const { return kind_; }
  const std::vector<YieldFunction>& functions() const { return functions_; }
  double saturation_tol() const { return saturation_tol_; }
  /// Principal level of the single-function criteria (k of von Mises/Tresca).
  double k() const { return k_; }

  /// max_i (f_i(sigma) - k_i); <= 0 inside the domain.
  double membership(const SymTensor3& sigma) const;

  /// Largest report-form value max_i report_i(sigma), for output columns.
  double report_value(const SymTensor3& sigma) const;

  /// Saturated set at a boundary point. Throws ValidationError when sigma
  /// violates a constraint beyond saturation_tol * max(1, |k_i|).
  SaturationSet saturation(const SymTensor3& sigma) const;

  /// One-sided active set f_i >= k_i - tol, tolerant of small outward drift;
  /// used by the rate driver which enforces its own drift limit.
  std::vector<std::size_t> active_set(const SymTensor3& sigma) const;

  /// Slater condition with the probe sigma* = 0.
  bool slater_holds() const;

private:
  YieldDomain(CriterionKind kind, std::vector<YieldFunction> fs, double tol, double k);

  CriterionKind kind_;
  std::vector<YieldFunction> functions_;
  double saturation_tol_;
  double k_;
};

/// Sixth-degree polynomial surrogate for the Tresca surface,
/// 4 J2^3 - 27 J3^2 - 36 k^2 J2^2 + 96 k^4 J2 - 64 k^6. It vanishes on the
/// Tresca boundary but its zero sublevel set is strictly larger than the
/// Tresca domain, so it is provided as a diagnostic only, never a criterion.
double tresca_surrogate(const SymTensor3& sigma, double k);

} // namespace plastcone

#endif
