#include "plastcone/random_gen.hpp"

#include <cmath>

namespace plastcone {

double RandomGen::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double pi = std::acos(-1.0);
  spare_ = r * std::sin(2.0 * pi * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * pi * u2);
}

Vec3 RandomGen::unit_vector() {
  while (true) {
    const Vec3 v{normal(), normal(), normal()};
    const double n = norm(v);
    if (n > 1e-6) return v / n;
  }
}

SymTensor3 RandomGen::sym_tensor(double scale) {
  return {scale * normal(), scale * normal(), scale * normal(),
          scale * normal(), scale * normal(), scale * normal()};
}

SymTensor3 RandomGen::with_eigenvalues(double a, double b, double c) {
  // Random orthonormal frame: first axis uniform on the sphere, second by
  // Gram-Schmidt against it, third the cross product.
  const Vec3 e1 = unit_vector();
  Vec3 e2{};
  while (true) {
    const Vec3 t = unit_vector();
    e2 = t - e1 * dot(t, e1);
    const double n = norm(e2);
    if (n > 1e-3) {
      e2 = e2 / n;
      break;
    }
  }
  const Vec3 e3 = cross(e1, e2);
  return dyad(e1) * a + dyad(e2) * b + dyad(e3) * c;
}

} // namespace plastcone
