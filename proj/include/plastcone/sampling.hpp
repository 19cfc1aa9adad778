#ifndef PLASTCONE_SAMPLING_HPP
#define PLASTCONE_SAMPLING_HPP

#include "plastcone/random_gen.hpp"
#include "plastcone/tensor.hpp"

namespace plastcone {

/// Random stress on the von Mises surface sqrt(J2) = k, with a random
/// hydrostatic offset.
SymTensor3 sample_von_mises_boundary(RandomGen& rng, double k);

/// Random stress on the Tresca surface with all eigenvalue gaps at least
/// min_gap (relative to k), rejection-sampled.
SymTensor3 sample_tresca_smooth_boundary(RandomGen& rng, double k, double min_gap = 0.05);

/// Random stress on the Tresca surface with an exactly repeated eigenvalue
/// pair; m = 3 builds eigenvalues (a, a, a - 2k), m = 1 builds
/// (a + 2k, a, a), in a uniformly random frame.
SymTensor3 sample_tresca_degenerate_boundary(RandomGen& rng, double k, int m);

} // namespace plastcone

#endif
