#ifndef PLASTCONE_PROJECTION_HPP
#define PLASTCONE_PROJECTION_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "plastcone/tensor.hpp"
#include "plastcone/yield.hpp"

namespace plastcone {

/// Moreau split of a tensor against the tangent/normal cone pair at a point
/// of the yield surface: input = tangent + normal, tangent : normal = 0,
/// trace(normal) = 0.
struct ConeSplit {
  SymTensor3 tangent;
  SymTensor3 normal;
};

enum class Branch {
  interior,
  one,
  two,
  tresca_smooth,
  tresca_degenerate_m1,
  tresca_degenerate_m3,
};

const char* branch_name(Branch b);

/// Interior point: the tangent cone is everything, the normal cone is {0}.
ConeSplit split_interior(const SymTensor3& tau);

/// One saturated smooth constraint with gradient g1:
/// normal = max(0, tau : g1) / ||g1||^2 * g1.
ConeSplit split_one(const SymTensor3& g1, const SymTensor3& tau);

inline constexpr double kDefaultCollinearityTol = 1e-10;

/// Two saturated smooth constraints with independent gradients. Writing
/// t_i = g_i/||g_i||, delta = t1 : t2, alpha_i = tau : t_i and
/// eta_1 = (alpha_1 - delta alpha_2) / (1 - delta^2) (symmetrically eta_2):
/// both eta nonnegative gives normal = eta_1 t1 + eta_2 t2, otherwise the
/// single-gradient formula with whichever alpha is larger. Near-collinear
/// gradients (1 - |delta| <= collinearity_tol) are refused; callers should
/// use the one-function path.
ConeSplit split_two(const SymTensor3& g1, const SymTensor3& g2, const SymTensor3& tau,
                    double collinearity_tol = kDefaultCollinearityTol);

/// Tresca at a boundary stress with distinct eigenvalues: delegates to
/// split_one with g1 = (v1 (x) v1 - v3 (x) v3) / 2. A repeated eigenvalue
/// pair raises a routing error pointing at the degenerate path.
ConeSplit split_tresca_smooth(const SymTensor3& sigma, const SymTensor3& tau,
                              double eig_tol = kDefaultEigTol);

/// Data for the Tresca projection at a repeated eigenvalue pair. m is the
/// index of the isolated eigenvalue: m = 3 when lambda1 = lambda2 > lambda3,
/// m = 1 when lambda1 > lambda2 = lambda3. The orthonormal tensors w span
/// G_m = { tau : tau v_m = 0 }: w0 = u1 (x) u1, w1 = u2 (x) u2,
/// w2 = sqrt(2) sym_outer(u1, u2), with (u1, u2) the repeated pair.
struct DegenerateWorkspace {
  int m = 3;
  Vec3 v_iso;
  Vec3 u1, u2;
  std::array<SymTensor3, 3> w;

  std::array<double, 3> coords(const SymTensor3& tau) const;
  SymTensor3 project(const SymTensor3& tau) const;
};

DegenerateWorkspace build_degenerate_workspace(const SymTensor3& sigma,
                                               double eig_tol = kDefaultEigTol);

/// Closed-form solution of min (x + y - mu1 - mu2)^2 + (x - mu1)^2 + (y - mu2)^2
/// over x, y >= 0 (the z coordinate is always 0 at the optimum). branch is
/// 1: both mu nonnegative, 2: clamp to the origin, 3: y = 0 with x > 0,
/// 4: x = 0 with y > 0.
struct KktPoint {
  double x = 0.0, y = 0.0, z = 0.0;
  int branch = 0;
};

KktPoint kkt_pair(double mu1, double mu2);

/// Tresca projection at a repeated eigenvalue pair. Requires sigma on the
/// yield surface within saturation_tol; a triple eigenvalue is outside the
/// covered cases and raises an error.
ConeSplit split_tresca_degenerate(const SymTensor3& sigma, const SymTensor3& tau, double k,
                                  double saturation_tol = kDefaultSaturationTol,
                                  double eig_tol = kDefaultEigTol);

struct SplitResult {
  ConeSplit split;
  Branch branch = Branch::interior;
};

/// Dispatch on the domain: interior, one or two saturated smooth functions,
/// or the smooth/degenerate Tresca paths. With strict = true a stress outside
/// the domain beyond saturation_tol raises a membership error; strict = false
/// treats any outward violation as saturated (rate-driver use, which enforces
/// its own drift limit).
SplitResult split(const YieldDomain& domain, const SymTensor3& sigma, const SymTensor3& tau,
                  bool strict = true);

struct OracleOptions {
  std::size_t max_iter = 100000;
  double step_tol = 1e-12;
  int starts = 8;
  std::uint64_t seed = 20260814;
};

/// Reference projection onto the span-nonnegative cone of the given
/// gradients, min ||tau - sum alpha_i g_i|| over alpha >= 0, by projected
/// gradient descent with deterministic multi-start.
SymTensor3 oracle_span_projection(const std::vector<SymTensor3>& gradients,
                                  const SymTensor3& tau, const OracleOptions& opts = {});

/// Reference normal-cone projection for any supported domain, computed
/// without the closed forms: nonnegative-span descent for smooth cases and,
/// for the degenerate Tresca cases, descent over the (x, y, z)
/// parameterization { kappa psd, kappa v_m = 0 } with z^2 <= 4 x y.
SymTensor3 oracle_normal_projection(const YieldDomain& domain, const SymTensor3& sigma,
                                    const SymTensor3& tau, const OracleOptions& opts = {});

} // namespace plastcone

#endif
