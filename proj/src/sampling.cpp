#include "plastcone/sampling.hpp"

#include <cmath>

#include "plastcone/errors.hpp"

namespace plastcone {

SymTensor3 sample_von_mises_boundary(RandomGen& rng, double k) {
  while (true) {
    SymTensor3 dev = deviator(rng.sym_tensor(k));
    const double j2 = 0.5 * dot(dev, dev);
    if (j2 < 1e-12 * k * k) continue;
    dev *= k / std::sqrt(j2);
    const double pressure = k * rng.normal();
    return dev + SymTensor3::identity() * pressure;
  }
}

SymTensor3 sample_tresca_smooth_boundary(RandomGen& rng, double k, double min_gap) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const SymTensor3 s = rng.sym_tensor(k);
    const SpectralDecomp d = spectral(s);
    const double span = d.lambda[0] - d.lambda[2];
    if (span <= 1e-12 * k) continue;
    const double scale = 2.0 * k / span;
    const double gap1 = (d.lambda[0] - d.lambda[1]) * scale;
    const double gap2 = (d.lambda[1] - d.lambda[2]) * scale;
    if (gap1 < min_gap * k || gap2 < min_gap * k) continue;
    SymTensor3 out = deviator(s) * scale;
    const double pressure = k * rng.normal();
    return out + SymTensor3::identity() * pressure;
  }
  throw NumericalError("sampling: could not draw a smooth Tresca boundary stress");
}

SymTensor3 sample_tresca_degenerate_boundary(RandomGen& rng, double k, int m) {
  if (m != 1 && m != 3) throw ValidationError("sampling: m must be 1 or 3");
  const double a = k * rng.normal();
  if (m == 3) return rng.with_eigenvalues(a, a, a - 2.0 * k);
  return rng.with_eigenvalues(a + 2.0 * k, a, a);
}

} // namespace plastcone
