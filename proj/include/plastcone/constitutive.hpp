#ifndef PLASTCONE_CONSTITUTIVE_HPP
#define PLASTCONE_CONSTITUTIVE_HPP

#include <vector>

#include "plastcone/elasticity.hpp"
#include "plastcone/projection.hpp"
#include "plastcone/tensor.hpp"
#include "plastcone/yield.hpp"

namespace plastcone {

/// Split of a total strain rate at a stress on (or inside) the yield surface:
/// eps_e_rate lands in the tangent cone, eps_p_rate in the normal cone, and
/// sigma_rate = H(eps_rate) - 2 mu eps_p_rate, which coincides with the
/// tangent-cone projection of H(eps_rate).
struct RateSplit {
  SymTensor3 eps_e_rate;
  SymTensor3 eps_p_rate;
  SymTensor3 sigma_rate;
  Branch branch = Branch::interior;
};

/// strict = true raises a membership error when sigma violates the domain
/// beyond the saturation tolerance; the integrator passes strict = false and
/// polices drift itself.
RateSplit rate_split(const YieldDomain& domain, const ElasticModuli& moduli,
                     const SymTensor3& sigma, const SymTensor3& eps_rate, bool strict = true);

/// Stress-rate operator of the evolution system,
/// script_h = H(eps_rate) - 2 mu P_N(eps_rate).
SymTensor3 script_h(const YieldDomain& domain, const ElasticModuli& moduli,
                    const SymTensor3& sigma, const SymTensor3& eps_rate, bool strict = true);

/// Von Mises closed form
/// lambda tr(e) I + 2 mu e - (mu / k^2) max(0, e : dev sigma) chi dev sigma,
/// the Heaviside factor chi firing when ||dev sigma||^2 >= 2 k^2 up to the
/// saturation tolerance. Diagnostic twin of the generic operator.
SymTensor3 script_h_von_mises(const ElasticModuli& moduli, double k, const SymTensor3& sigma,
                              const SymTensor3& eps_rate,
                              double saturation_tol = kDefaultSaturationTol);

struct PathKnot {
  double t = 0.0;
  SymTensor3 rate;
};

enum class PathInterp { piecewise_constant, piecewise_linear };

/// Strain-rate program. Knot times must be strictly increasing; the last knot
/// marks the end of integration. Between knots the rate is the left knot's
/// value (piecewise_constant) or the linear interpolant (piecewise_linear);
/// before the first knot the rate is zero.
struct StrainPath {
  std::vector<PathKnot> knots;
  PathInterp interp = PathInterp::piecewise_constant;

  void validate() const;
  SymTensor3 rate_at(double t) const;
  double t_end() const;
};

struct MaterialState {
  SymTensor3 sigma;
  SymTensor3 eps_e;
  SymTensor3 eps_p;
  double t = 0.0;
};

enum class DriftKind { none, radial_return };

/// Post-step drift handling. radial_return shrinks the stress deviator toward
/// the hydrostatic axis until membership returns to zero (exact rescale for
/// the homogeneous von Mises / Tresca forms, bisection for custom criteria);
/// the correction acts on sigma only, accumulated strains are left alone.
/// Whatever the policy, membership > 100 * drift_tol aborts the integration.
struct DriftPolicy {
  DriftKind kind = DriftKind::radial_return;
  double drift_tol = 1e-6;
};

/// Pull a drifted stress back onto the yield surface along its deviator ray.
SymTensor3 radial_return(const YieldDomain& domain, const SymTensor3& sigma);

struct DriverRecord {
  MaterialState state;
  SymTensor3 eps_e_rate; // rates over the step ending at state.t
  SymTensor3 eps_p_rate;
  SymTensor3 sigma_rate;
  Branch branch = Branch::interior;
  double f_value = 0.0;    // report-form criterion value after the step
  double membership = 0.0; // after drift handling
  double pre_correction_membership = 0.0;
  double consistency = 0.0; // eps_p_rate : sigma_rate
};

struct DriverResult {
  std::vector<DriverRecord> records; // records[0] is the initial state
  double max_pre_correction_membership = 0.0;
};

/// Explicit Euler on sigma_rate = script_h(sigma, eps_rate(t)) from
/// initial.t to the path's last knot, accumulating eps_e / eps_p by the same
/// rule. The final step is shortened to land exactly on the end time.
DriverResult integrate_path(const YieldDomain& domain, const ElasticModuli& moduli,
                            const MaterialState& initial, const StrainPath& path, double dt,
                            const DriftPolicy& policy = {});

} // namespace plastcone

#endif
