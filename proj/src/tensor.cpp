#include "plastcone/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace plastcone {

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v.x / n, v.y / n, v.z / n};
}

SymTensor3 SymTensor3::operator+(const SymTensor3& o) const {
  return {s11 + o.s11, s22 + o.s22, s33 + o.s33, s12 + o.s12, s13 + o.s13, s23 + o.s23};
}

SymTensor3 SymTensor3::operator-(const SymTensor3& o) const {
  return {s11 - o.s11, s22 - o.s22, s33 - o.s33, s12 - o.s12, s13 - o.s13, s23 - o.s23};
}

SymTensor3 SymTensor3::operator*(double s) const {
  return {s11 * s, s22 * s, s33 * s, s12 * s, s13 * s, s23 * s};
}

SymTensor3& SymTensor3::operator+=(const SymTensor3& o) { return *this = *this + o; }
SymTensor3& SymTensor3::operator-=(const SymTensor3& o) { return *this = *this - o; }
SymTensor3& SymTensor3::operator*=(double s) { return *this = *this * s; }

SymTensor3 SymTensor3::from_array(const std::array<double, 6>& a) {
  return {a[0], a[1], a[2], a[3], a[4], a[5]};
}

double dot(const SymTensor3& a, const SymTensor3& b) {
  return a.s11 * b.s11 + a.s22 * b.s22 + a.s33 * b.s33 +
         2.0 * (a.s12 * b.s12 + a.s13 * b.s13 + a.s23 * b.s23);
}

double norm(const SymTensor3& a) { return std::sqrt(dot(a, a)); }

double trace(const SymTensor3& a) { return a.s11 + a.s22 + a.s33; }

double det(const SymTensor3& a) {
  return a.s11 * (a.s22 * a.s33 - a.s23 * a.s23) -
         a.s12 * (a.s12 * a.s33 - a.s23 * a.s13) +
         a.s13 * (a.s12 * a.s23 - a.s22 * a.s13);
}

SymTensor3 deviator(const SymTensor3& a) {
  const double p = trace(a) / 3.0;
  return {a.s11 - p, a.s22 - p, a.s33 - p, a.s12, a.s13, a.s23};
}

SymTensor3 square(const SymTensor3& a) {
  return {a.s11 * a.s11 + a.s12 * a.s12 + a.s13 * a.s13,
          a.s12 * a.s12 + a.s22 * a.s22 + a.s23 * a.s23,
          a.s13 * a.s13 + a.s23 * a.s23 + a.s33 * a.s33,
          a.s11 * a.s12 + a.s12 * a.s22 + a.s13 * a.s23,
          a.s11 * a.s13 + a.s12 * a.s23 + a.s13 * a.s33,
          a.s12 * a.s13 + a.s22 * a.s23 + a.s23 * a.s33};
}

Vec3 apply(const SymTensor3& a, const Vec3& v) {
  return {a.s11 * v.x + a.s12 * v.y + a.s13 * v.z,
          a.s12 * v.x + a.s22 * v.y + a.s23 * v.z,
          a.s13 * v.x + a.s23 * v.y + a.s33 * v.z};
}

SymTensor3 sym_outer(const Vec3& u, const Vec3& v) {
  return {u.x * v.x, u.y * v.y, u.z * v.z,
          0.5 * (u.x * v.y + u.y * v.x),
          0.5 * (u.x * v.z + u.z * v.x),
          0.5 * (u.y * v.z + u.z * v.y)};
}

SymTensor3 dyad(const Vec3& u) {
  return {u.x * u.x, u.y * u.y, u.z * u.z, u.x * u.y, u.x * u.z, u.y * u.z};
}

double j2_invariant(const SymTensor3& a) {
  const SymTensor3 d = deviator(a);
  return 0.5 * dot(d, d);
}

double j3_invariant(const SymTensor3& a) { return det(deviator(a)); }

Invariants invariants(const SymTensor3& a) {
  Invariants inv;
  inv.i1 = trace(a);
  inv.i2 = 0.5 * (inv.i1 * inv.i1 - trace(square(a)));
  inv.i3 = det(a);
  inv.j2 = j2_invariant(a);
  inv.j3 = j3_invariant(a);
  return inv;
}

SymTensor3 grad_j2(const SymTensor3& a) { return deviator(a); }

SymTensor3 grad_j3(const SymTensor3& a) {
  const SymTensor3 d = deviator(a);
  const double j2 = 0.5 * dot(d, d);
  SymTensor3 g = square(d);
  const double shift = 2.0 / 3.0 * j2;
  g.s11 -= shift;
  g.s22 -= shift;
  g.s33 -= shift;
  return g;
}

SymTensor3 SpectralDecomp::reconstruct() const {
  SymTensor3 r;
  for (int i = 0; i < 3; ++i) r += dyad(v[i]) * lambda[i];
  return r;
}

namespace {

// One cyclic Jacobi sweep driver for a 3x3 symmetric matrix. Quadratic
// convergence; a handful of sweeps reaches machine precision.
void jacobi_eigen(const SymTensor3& a, std::array<double, 3>& w, std::array<Vec3, 3>& vec) {
  double m[3][3] = {{a.s11, a.s12, a.s13}, {a.s12, a.s22, a.s23}, {a.s13, a.s23, a.s33}};
  double q[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    const double diag = m[0][0] * m[0][0] + m[1][1] * m[1][1] + m[2][2] * m[2][2];
    if (off <= 1e-60 || off <= 1e-32 * (diag + off)) break;

    for (int p = 0; p < 2; ++p) {
      for (int r = p + 1; r < 3; ++r) {
        if (m[p][r] == 0.0) continue;
        const double theta = (m[r][r] - m[p][p]) / (2.0 * m[p][r]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double mpp = m[p][p], mrr = m[r][r], mpr = m[p][r];
        m[p][p] = mpp - t * mpr;
        m[r][r] = mrr + t * mpr;
        m[p][r] = m[r][p] = 0.0;
        for (int k = 0; k < 3; ++k) {
          if (k == p || k == r) continue;
          const double mkp = m[k][p], mkr = m[k][r];
          m[k][p] = m[p][k] = c * mkp - s * mkr;
          m[k][r] = m[r][k] = s * mkp + c * mkr;
        }
        for (int k = 0; k < 3; ++k) {
          const double qkp = q[k][p], qkr = q[k][r];
          q[k][p] = c * qkp - s * qkr;
          q[k][r] = s * qkp + c * qkr;
        }
      }
    }
  }

  for (int i = 0; i < 3; ++i) {
    w[i] = m[i][i];
    vec[i] = Vec3{q[0][i], q[1][i], q[2][i]};
  }
}

} // namespace

SpectralDecomp spectral(const SymTensor3& a, double eig_tol) {
  SpectralDecomp d;
  jacobi_eigen(a, d.lambda, d.v);

  // descending insertion sort, carrying the eigenvectors along
  for (int i = 1; i < 3; ++i) {
    const double li = d.lambda[i];
    const Vec3 vi = d.v[i];
    int j = i - 1;
    while (j >= 0 && d.lambda[j] < li) {
      d.lambda[j + 1] = d.lambda[j];
      d.v[j + 1] = d.v[j];
      --j;
    }
    d.lambda[j + 1] = li;
    d.v[j + 1] = vi;
  }

  const double tol = eig_tol * std::max(1.0, norm(a));
  const bool upper = d.lambda[0] - d.lambda[1] <= tol;
  const bool lower = d.lambda[1] - d.lambda[2] <= tol;
  if (upper && lower)
    d.mult = Multiplicity::triple;
  else if (upper)
    d.mult = Multiplicity::pair_upper;
  else if (lower)
    d.mult = Multiplicity::pair_lower;
  else
    d.mult = Multiplicity::distinct;
  return d;
}

std::array<double, 3> deviator_eigenvalues_trig(const SymTensor3& a) {
  const double j2 = j2_invariant(a);
  if (j2 <= 0.0) return {0.0, 0.0, 0.0};
  const double j3 = j3_invariant(a);

  const double amplitude = std::sqrt(4.0 * j2 / 3.0);
  double arg = 3.0 * std::sqrt(3.0) * j3 / (2.0 * std::pow(j2, 1.5));
  arg = std::clamp(arg, -1.0, 1.0);
  const double phi0 = std::acos(arg);

  const double pi = std::acos(-1.0);
  return {amplitude * std::cos(phi0 / 3.0),
          amplitude * std::cos((2.0 * pi - phi0) / 3.0),
          amplitude * std::cos((2.0 * pi + phi0) / 3.0)};
}

} // namespace plastcone
