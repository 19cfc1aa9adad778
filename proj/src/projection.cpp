#include "plastcone/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plastcone/errors.hpp"
#include "plastcone/random_gen.hpp"

namespace plastcone {

namespace {

constexpr double kGradientFloor = 1e-14;

struct Eig2 {
  double l1 = 0.0, l2 = 0.0; // descending
  double c = 1.0, s = 0.0;   // unit eigenvector of l1 in plane coordinates
};

// Closed-form eigen pair of [[a, off], [off, b]].
Eig2 eig2x2(double a, double b, double off) {
  Eig2 e;
  const double mean = 0.5 * (a + b);
  const double r = std::hypot(0.5 * (a - b), off);
  e.l1 = mean + r;
  e.l2 = mean - r;
  if (r == 0.0) return e;
  double vx = e.l1 - b, vy = off;
  const double wx = off, wy = e.l1 - a;
  if (wx * wx + wy * wy > vx * vx + vy * vy) {
    vx = wx;
    vy = wy;
  }
  const double n = std::hypot(vx, vy);
  if (n == 0.0) return e;
  e.c = vx / n;
  e.s = vy / n;
  return e;
}

} // namespace

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::interior: return "interior";
    case Branch::one: return "one";
    case Branch::two: return "two";
    case Branch::tresca_smooth: return "tresca_smooth";
    case Branch::tresca_degenerate_m1: return "tresca_degenerate_m1";
    case Branch::tresca_degenerate_m3: return "tresca_degenerate_m3";
  }
  return "unknown";
}

ConeSplit split_interior(const SymTensor3& tau) { return {tau, SymTensor3{}}; }

ConeSplit split_one(const SymTensor3& g1, const SymTensor3& tau) {
  const double g2 = dot(g1, g1);
  if (std::sqrt(g2) <= kGradientFloor)
    throw ValidationError("split_one: degenerate gradient, norm " + std::to_string(std::sqrt(g2)));
  const double coef = std::max(0.0, dot(tau, g1)) / g2;
  const SymTensor3 normal = g1 * coef;
  return {tau - normal, normal};
}

ConeSplit split_two(const SymTensor3& g1, const SymTensor3& g2, const SymTensor3& tau,
                    double collinearity_tol) {
  const double n1 = norm(g1), n2 = norm(g2);
  if (n1 <= kGradientFloor || n2 <= kGradientFloor)
    throw ValidationError("split_two: degenerate gradient");
  const SymTensor3 t1 = g1 * (1.0 / n1);
  const SymTensor3 t2 = g2 * (1.0 / n2);
  const double delta = dot(t1, t2);
  if (1.0 - std::abs(delta) <= collinearity_tol)
    throw ValidationError("split_two: near-collinear gradients (1 - |delta| = " +
                          std::to_string(1.0 - std::abs(delta)) +
                          "), use the one-function path");

  const double a1 = dot(tau, t1), a2 = dot(tau, t2);
  const double denom = 1.0 - delta * delta;
  const double e1 = (a1 - delta * a2) / denom;
  const double e2 = (a2 - delta * a1) / denom;

  SymTensor3 normal;
  if (e1 >= 0.0 && e2 >= 0.0)
    normal = t1 * e1 + t2 * e2;
  else if (a1 >= a2)
    normal = t1 * std::max(a1, 0.0);
  else
    normal = t2 * std::max(a2, 0.0);
  return {tau - normal, normal};
}

ConeSplit split_tresca_smooth(const SymTensor3& sigma, const SymTensor3& tau, double eig_tol) {
  const SpectralDecomp d = spectral(sigma, eig_tol);
  if (d.mult != Multiplicity::distinct)
    throw ValidationError(
        "split_tresca_smooth: repeated eigenvalue pair, use split_tresca_degenerate");
  const SymTensor3 g = (dyad(d.v[0]) - dyad(d.v[2])) * 0.5;
  return split_one(g, tau);
}

namespace {

DegenerateWorkspace workspace_from_spectral(const SpectralDecomp& d) {
  DegenerateWorkspace ws;
  if (d.mult == Multiplicity::pair_upper) {
    ws.m = 3;
    ws.u1 = d.v[0];
    ws.u2 = d.v[1];
    ws.v_iso = d.v[2];
  } else {
    ws.m = 1;
    ws.u1 = d.v[1];
    ws.u2 = d.v[2];
    ws.v_iso = d.v[0];
  }
  ws.w = {dyad(ws.u1), dyad(ws.u2), sym_outer(ws.u1, ws.u2) * std::sqrt(2.0)};
  return ws;
}

// Projection onto the Tresca normal cone at a degenerate point, from the
// eigenvalues (mu1, mu2, structural 0) of the deviator projected onto G_m:
// shift the projection so its m-th ordered eigenvalue is zero, remove the
// trace along v_m, and scale by the activation
// max(1/4 +- 3/4 (mu1 + mu2) / (|mu1| + |mu2|), 0). Equivalent to solving
// the nonnegative-definite least-squares program over G_m.
ConeSplit degenerate_core(const DegenerateWorkspace& ws, const SymTensor3& tau) {
  const SymTensor3 taud = deviator(tau);
  const auto c = ws.coords(taud);
  const SymTensor3 proj = ws.w[0] * c[0] + ws.w[1] * c[1] + ws.w[2] * c[2];

  const Eig2 e = eig2x2(c[0], c[1], c[2] / std::sqrt(2.0));
  const double sum = e.l1 + e.l2;
  const double abs_sum = std::abs(e.l1) + std::abs(e.l2);

  SymTensor3 normal;
  if (abs_sum > 0.0) {
    const double sign = ws.m == 3 ? 1.0 : -1.0;
    const double shift = ws.m == 3 ? std::min(e.l2, 0.0) : std::max(e.l1, 0.0);
    SymTensor3 shifted = proj;
    shifted.s11 -= shift;
    shifted.s22 -= shift;
    shifted.s33 -= shift;
    const double activation = std::max(0.25 + sign * 0.75 * sum / abs_sum, 0.0);
    normal = (shifted - dyad(ws.v_iso) * trace(shifted)) * activation;
  }
  return {tau - normal, normal};
}

} // namespace

std::array<double, 3> DegenerateWorkspace::coords(const SymTensor3& tau) const {
  return {dot(tau, w[0]), dot(tau, w[1]), dot(tau, w[2])};
}

SymTensor3 DegenerateWorkspace::project(const SymTensor3& tau) const {
  const auto c = coords(tau);
  return w[0] * c[0] + w[1] * c[1] + w[2] * c[2];
}

DegenerateWorkspace build_degenerate_workspace(const SymTensor3& sigma, double eig_tol) {
  const SpectralDecomp d = spectral(sigma, eig_tol);
  if (d.mult == Multiplicity::triple)
    throw ValidationError("degenerate workspace: triple eigenvalue is outside the covered cases");
  if (d.mult == Multiplicity::distinct)
    throw ValidationError("degenerate workspace: eigenvalues are distinct (gaps " +
                          std::to_string(d.lambda[0] - d.lambda[1]) + ", " +
                          std::to_string(d.lambda[1] - d.lambda[2]) + ")");
  return workspace_from_spectral(d);
}

KktPoint kkt_pair(double mu1, double mu2) {
  KktPoint p;
  if (mu1 >= 0.0 && mu2 >= 0.0) {
    p.x = mu1;
    p.y = mu2;
    p.branch = 1;
  } else if (mu1 + 0.5 * mu2 <= 0.0 && mu2 + 0.5 * mu1 <= 0.0) {
    p.branch = 2;
  } else if (mu2 < 0.0 && mu1 + 0.5 * mu2 > 0.0) {
    p.x = mu1 + 0.5 * mu2;
    p.branch = 3;
  } else {
    p.y = mu2 + 0.5 * mu1;
    p.branch = 4;
  }
  return p;
}

ConeSplit split_tresca_degenerate(const SymTensor3& sigma, const SymTensor3& tau, double k,
                                  double saturation_tol, double eig_tol) {
  const SpectralDecomp d = spectral(sigma, eig_tol);
  const double value = 0.5 * (d.lambda[0] - d.lambda[2]);
  const double tol = saturation_tol * std::max(1.0, std::abs(k));
  if (std::abs(value - k) > tol)
    throw ValidationError("split_tresca_degenerate: stress not on the yield surface, f - k = " +
                          std::to_string(value - k));
  if (d.mult == Multiplicity::triple)
    throw ValidationError(
        "split_tresca_degenerate: triple eigenvalue is outside the covered cases");
  if (d.mult == Multiplicity::distinct)
    throw ValidationError("split_tresca_degenerate: eigenvalues are distinct, "
                          "use split_tresca_smooth");
  return degenerate_core(workspace_from_spectral(d), tau);
}

SplitResult split(const YieldDomain& domain, const SymTensor3& sigma, const SymTensor3& tau,
                  bool strict) {
  if (domain.kind() == CriterionKind::tresca) {
    const double k = domain.k();
    const double tol = domain.saturation_tol() * std::max(1.0, std::abs(k));
    const SpectralDecomp d = spectral(sigma);
    const double value = 0.5 * (d.lambda[0] - d.lambda[2]);
    if (value - k > tol && strict)
      throw ValidationError("split: stress outside the Tresca domain, violation " +
                            std::to_string(value - k));
    if (value < k - tol) return {split_interior(tau), Branch::interior};
    if (d.mult == Multiplicity::triple)
      throw ValidationError("split: triple eigenvalue is outside the covered cases");
    if (d.mult == Multiplicity::distinct) {
      const SymTensor3 g = (dyad(d.v[0]) - dyad(d.v[2])) * 0.5;
      return {split_one(g, tau), Branch::tresca_smooth};
    }
    const DegenerateWorkspace ws = workspace_from_spectral(d);
    return {degenerate_core(ws, tau),
            ws.m == 3 ? Branch::tresca_degenerate_m3 : Branch::tresca_degenerate_m1};
  }

  std::vector<std::size_t> active;
  if (strict)
    active = domain.saturation(sigma).indices;
  else
    active = domain.active_set(sigma);

  if (active.empty()) return {split_interior(tau), Branch::interior};
  const auto& fs = domain.functions();
  if (active.size() == 1)
    return {split_one(fs[active[0]].gradient(sigma), tau), Branch::one};
  if (active.size() == 2)
    return {split_two(fs[active[0]].gradient(sigma), fs[active[1]].gradient(sigma), tau),
            Branch::two};
  throw ValidationError("split: more than two saturated functions (" +
                        std::to_string(active.size()) + ") is outside the covered cases");
}

namespace {

double objective(const std::vector<SymTensor3>& gradients, const std::vector<double>& alpha,
                 const SymTensor3& tau) {
  SymTensor3 r = tau;
  for (std::size_t i = 0; i < gradients.size(); ++i) r -= gradients[i] * alpha[i];
  return dot(r, r);
}

} // namespace

SymTensor3 oracle_span_projection(const std::vector<SymTensor3>& gradients, const SymTensor3& tau,
                                  const OracleOptions& opts) {
  const std::size_t n = gradients.size();
  if (n == 0) return SymTensor3{};
  for (const SymTensor3& g : gradients)
    if (norm(g) <= kGradientFloor)
      throw ValidationError("oracle: degenerate gradient");

  std::vector<std::vector<double>> gram(n, std::vector<double>(n));
  std::vector<double> rhs(n);
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = dot(tau, gradients[i]);
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = dot(gradients[i], gradients[j]);
    tr += gram[i][i];
  }
  const double step = 1.0 / (2.0 * tr);

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 0.0);
  {
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = std::max(0.0, rhs[i] / gram[i][i]);
    starts.push_back(diag);
  }
  if (n == 2) {
    const double detg = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
    if (std::abs(detg) > 1e-14 * gram[0][0] * gram[1][1]) {
      starts.push_back({std::max(0.0, (rhs[0] * gram[1][1] - rhs[1] * gram[0][1]) / detg),
                        std::max(0.0, (rhs[1] * gram[0][0] - rhs[0] * gram[1][0]) / detg)});
    }
  }
  RandomGen rng(opts.seed);
  while (starts.size() < static_cast<std::size_t>(opts.starts)) {
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
      a[i] = rng.uniform() * std::max(1.0, std::abs(rhs[i]) / gram[i][i]);
    starts.push_back(a);
  }

  std::vector<double> best;
  double best_obj = 0.0;
  for (const auto& start : starts) {
    std::vector<double> a = start;
    bool converged = false;
    for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
      double step_norm2 = 0.0;
      std::vector<double> next(n);
      for (std::size_t i = 0; i < n; ++i) {
        double grad = -2.0 * rhs[i];
        for (std::size_t j = 0; j < n; ++j) grad += 2.0 * gram[i][j] * a[j];
        next[i] = std::max(0.0, a[i] - step * grad);
        step_norm2 += (next[i] - a[i]) * (next[i] - a[i]);
      }
      a = next;
      if (std::sqrt(step_norm2) < opts.step_tol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError("oracle: projected gradient did not converge within " +
                           std::to_string(opts.max_iter) + " iterations");
    const double obj = objective(gradients, a, tau);
    if (best.empty() || obj < best_obj) {
      best = a;
      best_obj = obj;
    }
  }

  SymTensor3 out;
  for (std::size_t i = 0; i < n; ++i) out += gradients[i] * best[i];
  return out;
}

namespace {

// (x, y, z) -> [[x, z/sqrt2], [z/sqrt2, y]] clamped to the PSD cone; the
// coordinates are Frobenius-orthonormal so this is a Euclidean projection.
void project_psd(double& x, double& y, double& z) {
  const double rt2 = std::sqrt(2.0);
  const Eig2 e = eig2x2(x, y, z / rt2);
  if (e.l2 >= 0.0) return;
  const double l = std::max(e.l1, 0.0);
  x = l * e.c * e.c;
  y = l * e.s * e.s;
  z = rt2 * l * e.c * e.s;
}

SymTensor3 oracle_degenerate(const DegenerateWorkspace& ws, const SymTensor3& tau,
                             const OracleOptions& opts) {
  // eta(x, y, z) parameterizes the normal cone: kappa = x u1u1 + y u2u2 +
  // sqrt2 z sym(u1, u2) ranges over { psd, kappa v_m = 0 } as z^2 <= 2xy, and
  // eta = kappa - tr(kappa) v_m v_m for m = 3, the sign-flipped image for m = 1.
  // (x, y, z) are Frobenius-orthonormal coordinates of kappa, so the gradient
  // step and the psd projection share one metric.
  const double sign = ws.m == 3 ? 1.0 : -1.0;
  const SymTensor3 iso = dyad(ws.v_iso);
  const std::array<SymTensor3, 3> basis = {
      (dyad(ws.u1) - iso) * sign, (dyad(ws.u2) - iso) * sign,
      sym_outer(ws.u1, ws.u2) * (sign * std::sqrt(2.0))};
  double tr = 0.0;
  for (const SymTensor3& e : basis) tr += dot(e, e);
  const double step = 1.0 / (2.0 * tr);

  const auto c = ws.coords(deviator(tau));
  std::vector<std::array<double, 3>> starts;
  starts.push_back({0.0, 0.0, 0.0});
  {
    std::array<double, 3> p = {sign * c[0], sign * c[1], sign * c[2]};
    project_psd(p[0], p[1], p[2]);
    starts.push_back(p);
  }
  starts.push_back({std::max(sign * c[0], 0.0), std::max(sign * c[1], 0.0), 0.0});
  RandomGen rng(opts.seed);
  const double scale = std::max(1.0, norm(tau));
  while (starts.size() < static_cast<std::size_t>(opts.starts)) {
    const double x = scale * rng.uniform();
    const double y = scale * rng.uniform();
    const double z = std::sqrt(2.0 * x * y) * (2.0 * rng.uniform() - 1.0);
    starts.push_back({x, y, z});
  }

  const auto eta_of = [&basis](const std::array<double, 3>& p) {
    return basis[0] * p[0] + basis[1] * p[1] + basis[2] * p[2];
  };

  std::array<double, 3> best{};
  double best_obj = 0.0;
  bool have_best = false;
  for (const auto& start : starts) {
    std::array<double, 3> p = start;
    bool converged = false;
    for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
      const SymTensor3 r = tau - eta_of(p);
      std::array<double, 3> next = p;
      for (int i = 0; i < 3; ++i) next[i] += step * 2.0 * dot(basis[i], r);
      project_psd(next[0], next[1], next[2]);
      double step_norm2 = 0.0;
      for (int i = 0; i < 3; ++i) step_norm2 += (next[i] - p[i]) * (next[i] - p[i]);
      p = next;
      if (std::sqrt(step_norm2) < opts.step_tol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError("oracle: degenerate projected gradient did not converge within " +
                           std::to_string(opts.max_iter) + " iterations");
    const SymTensor3 r = tau - eta_of(p);
    const double obj = dot(r, r);
    if (!have_best || obj < best_obj) {
      best = p;
      best_obj = obj;
      have_best = true;
    }
  }
  return eta_of(best);
}

} // namespace

SymTensor3 oracle_normal_projection(const YieldDomain& domain, const SymTensor3& sigma,
                                    const SymTensor3& tau, const OracleOptions& opts) {
  if (domain.kind() == CriterionKind::tresca) {
    const double k = domain.k();
    const double tol = domain.saturation_tol() * std::max(1.0, std::abs(k));
    const SpectralDecomp d = spectral(sigma);
    const double value = 0.5 * (d.lambda[0] - d.lambda[2]);
    if (value < k - tol) return SymTensor3{};
    if (d.mult == Multiplicity::triple)
      throw ValidationError("oracle: triple eigenvalue is outside the covered cases");
    if (d.mult == Multiplicity::distinct) {
      const SymTensor3 g = (dyad(d.v[0]) - dyad(d.v[2])) * 0.5;
      return oracle_span_projection({g}, tau, opts);
    }
    return oracle_degenerate(workspace_from_spectral(d), tau, opts);
  }

  const std::vector<std::size_t> active = domain.active_set(sigma);
  std::vector<SymTensor3> grads;
  grads.reserve(active.size());
  for (std::size_t i : active) grads.push_back(domain.functions()[i].gradient(sigma));
  return oracle_span_projection(grads, tau, opts);
}

} // namespace plastcone
