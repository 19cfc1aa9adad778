#ifndef PLASTCONE_TENSOR_HPP
#define PLASTCONE_TENSOR_HPP

#include <array>
#include <cstddef>

namespace plastcone {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);

/// Symmetric second-order tensor on R^3, stored as the six independent
/// components. Serialization order everywhere: [s11, s22, s33, s12, s13, s23].
struct SymTensor3 {
  double s11 = 0.0, s22 = 0.0, s33 = 0.0;
  double s12 = 0.0, s13 = 0.0, s23 = 0.0;

  static SymTensor3 identity() { return {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}; }
  static SymTensor3 diag(double a, double b, double c) { return {a, b, c, 0.0, 0.0, 0.0}; }

  SymTensor3 operator+(const SymTensor3& o) const;
  SymTensor3 operator-(const SymTensor3& o) const;
  SymTensor3 operator*(double s) const;
  SymTensor3 operator-() const { return *this * -1.0; }
  SymTensor3& operator+=(const SymTensor3& o);
  SymTensor3& operator-=(const SymTensor3& o);
  SymTensor3& operator*=(double s);

  std::array<double, 6> to_array() const { return {s11, s22, s33, s12, s13, s23}; }
  static SymTensor3 from_array(const std::array<double, 6>& a);

  double norm() const;
  double trace() const { return s11 + s22 + s33; }
};

inline SymTensor3 operator*(double s, const SymTensor3& t) { return t * s; }

/// Frobenius inner product; off-diagonal entries count twice.
double dot(const SymTensor3& a, const SymTensor3& b);
double norm(const SymTensor3& a);
double trace(const SymTensor3& a);
double det(const SymTensor3& a);
SymTensor3 deviator(const SymTensor3& a);

inline double SymTensor3::norm() const { return plastcone::norm(*this); }

/// Matrix square a*a (symmetric since a is).
SymTensor3 square(const SymTensor3& a);
/// Matrix action on a vector.
Vec3 apply(const SymTensor3& a, const Vec3& v);

/// Symmetrized dyadic product (u (x) v + v (x) u) / 2.
SymTensor3 sym_outer(const Vec3& u, const Vec3& v);
/// Rank-one dyad u (x) u.
SymTensor3 dyad(const Vec3& u);

/// Principal invariants I1, I2, I3 of the tensor together with the deviatoric
/// invariants J2 = ||dev||^2 / 2 >= 0 and J3 = det(dev).
struct Invariants {
  double i1 = 0.0, i2 = 0.0, i3 = 0.0;
  double j2 = 0.0, j3 = 0.0;
};

Invariants invariants(const SymTensor3& a);
double j2_invariant(const SymTensor3& a);
double j3_invariant(const SymTensor3& a);

/// d(J2)/d(sigma) = dev(sigma).
SymTensor3 grad_j2(const SymTensor3& a);
/// d(J3)/d(sigma) = dev(sigma)^2 - (2/3) J2 I.
SymTensor3 grad_j3(const SymTensor3& a);

enum class Multiplicity {
  distinct,   // lambda1 > lambda2 > lambda3
  pair_upper, // lambda1 == lambda2 > lambda3
  pair_lower, // lambda1 > lambda2 == lambda3
  triple,     // all equal
};

/// Eigen decomposition with eigenvalues sorted in descending order and an
/// orthonormal eigenvector frame. The multiplicity pattern is detected with
/// tolerance eig_tol * max(1, ||a||).
struct SpectralDecomp {
  std::array<double, 3> lambda{};
  std::array<Vec3, 3> v{};
  Multiplicity mult = Multiplicity::distinct;

  SymTensor3 reconstruct() const;
};

inline constexpr double kDefaultEigTol = 1e-8;

SpectralDecomp spectral(const SymTensor3& a, double eig_tol = kDefaultEigTol);

/// Deviator eigenvalues in descending order from the trigonometric closed
/// form: Lambda0 cos(phi0/3), Lambda0 cos((2pi -+ phi0)/3) with
/// Lambda0 = sqrt(4 J2 / 3) and phi0 = arccos(3 sqrt(3) J3 / (2 J2^{3/2})),
/// the arccos argument clamped to [-1, 1].
std::array<double, 3> deviator_eigenvalues_trig(const SymTensor3& a);

} // namespace plastcone

#endif
