#include "plastcone/elasticity.hpp"

#include <cmath>
#include <string>

#include "plastcone/errors.hpp"

namespace plastcone {

double ElasticModuli::pwave_speed() const { return std::sqrt((lambda + 2.0 * mu) / rho); }

ElasticModuli moduli_from_lame(double lambda, double mu, double rho) {
  if (!(mu > 0.0))
    throw ValidationError("moduli: mu must be positive, got " + std::to_string(mu));
  if (!(lambda + 2.0 / 3.0 * mu > 0.0))
    throw ValidationError("moduli: lambda must satisfy lambda + 2/3 mu > 0, got lambda = " +
                          std::to_string(lambda));
  if (!(rho > 0.0))
    throw ValidationError("moduli: rho must be positive, got " + std::to_string(rho));

  ElasticModuli m;
  m.lambda = lambda;
  m.mu = mu;
  m.rho = rho;
  m.young = mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu);
  m.poisson = lambda / (2.0 * (lambda + mu));
  return m;
}

ElasticModuli moduli_from_young(double young, double poisson, double rho) {
  if (!(young > 0.0))
    throw ValidationError("moduli: young must be positive, got " + std::to_string(young));
  if (!(poisson > 0.0 && poisson < 0.5))
    throw ValidationError("moduli: poisson must lie in (0, 0.5), got " + std::to_string(poisson));
  if (!(rho > 0.0))
    throw ValidationError("moduli: rho must be positive, got " + std::to_string(rho));

  ElasticModuli m;
  m.young = young;
  m.poisson = poisson;
  m.rho = rho;
  m.lambda = young * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
  m.mu = young / (2.0 * (1.0 + poisson));
  return m;
}

SymTensor3 hooke(const ElasticModuli& m, const SymTensor3& tau) {
  SymTensor3 out = tau * (2.0 * m.mu);
  const double bulk = m.lambda * trace(tau);
  out.s11 += bulk;
  out.s22 += bulk;
  out.s33 += bulk;
  return out;
}

SymTensor3 hooke_inverse(const ElasticModuli& m, const SymTensor3& sigma) {
  SymTensor3 out = sigma * (1.0 / (2.0 * m.mu));
  const double shift =
      m.lambda * trace(sigma) / (2.0 * m.mu * (3.0 * m.lambda + 2.0 * m.mu));
  out.s11 -= shift;
  out.s22 -= shift;
  out.s33 -= shift;
  return out;
}

SymTensor3 hooke_inverse_young(const ElasticModuli& m, const SymTensor3& sigma) {
  SymTensor3 out = sigma * ((1.0 + m.poisson) / m.young);
  const double shift = m.poisson / m.young * trace(sigma);
  out.s11 -= shift;
  out.s22 -= shift;
  out.s33 -= shift;
  return out;
}

double elastic_energy_density(const ElasticModuli& m, const SymTensor3& sigma) {
  return 0.5 * dot(sigma, hooke_inverse(m, sigma));
}

} // namespace plastcone
