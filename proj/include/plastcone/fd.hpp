#ifndef PLASTCONE_FD_HPP
#define PLASTCONE_FD_HPP

#include <array>
#include <functional>

#include "plastcone/tensor.hpp"

namespace plastcone {

/// Central-difference gradient of a scalar function of a symmetric tensor,
/// returned in the convention df = dot(grad, dsigma) of the doubled
/// off-diagonal inner product (an off-diagonal component perturbation moves
/// both mirrored entries, so those slopes are halved).
inline SymTensor3 fd_gradient(const std::function<double(const SymTensor3&)>& f,
                              const SymTensor3& sigma, double h = 1e-5) {
  std::array<double, 6> g{};
  for (int i = 0; i < 6; ++i) {
    std::array<double, 6> a = sigma.to_array();
    a[i] += h;
    const double up = f(SymTensor3::from_array(a));
    a[i] -= 2.0 * h;
    const double dn = f(SymTensor3::from_array(a));
    g[i] = (up - dn) / (2.0 * h);
    if (i >= 3) g[i] *= 0.5;
  }
  return SymTensor3::from_array(g);
}

} // namespace plastcone

#endif
