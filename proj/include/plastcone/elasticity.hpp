#ifndef PLASTCONE_ELASTICITY_HPP
#define PLASTCONE_ELASTICITY_HPP

#include "plastcone/tensor.hpp"

namespace plastcone {

/// Isotropic linear-elastic moduli. Both the Lame pair and the engineering
/// pair are stored; construction from either fills in the other, so the two
/// descriptions are consistent by construction.
struct ElasticModuli {
  double lambda = 0.0;
  double mu = 0.0;
  double young = 0.0;
  double poisson = 0.0;
  double rho = 0.0;

  /// Longitudinal (P-) wave speed sqrt((lambda + 2 mu) / rho).
  double pwave_speed() const;
};

/// Build from Lame parameters; requires mu > 0, lambda + 2/3 mu > 0 (positive
/// definite stiffness), rho > 0.
ElasticModuli moduli_from_lame(double lambda, double mu, double rho);

/// Build from Young's modulus and Poisson ratio; requires E > 0,
/// nu in (0, 0.5), rho > 0.
ElasticModuli moduli_from_young(double young, double poisson, double rho);

/// Hooke map H(tau) = 2 mu tau + lambda tr(tau) I.
SymTensor3 hooke(const ElasticModuli& m, const SymTensor3& tau);

/// Inverse map H^{-1}(sigma) = sigma / (2 mu) - lambda tr(sigma) I / (2 mu (3 lambda + 2 mu)).
SymTensor3 hooke_inverse(const ElasticModuli& m, const SymTensor3& sigma);

/// Same inverse through the engineering constants,
/// H^{-1}(sigma) = (1 + nu)/E sigma - nu/E tr(sigma) I; kept separate so the
/// two closed forms can be checked against each other.
SymTensor3 hooke_inverse_young(const ElasticModuli& m, const SymTensor3& sigma);

/// Elastic energy density sigma : H^{-1}(sigma) / 2.
double elastic_energy_density(const ElasticModuli& m, const SymTensor3& sigma);

} // namespace plastcone

#endif
