#ifndef PLASTCONE_WAVE1D_HPP
#define PLASTCONE_WAVE1D_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "plastcone/constitutive.hpp"
#include "plastcone/elasticity.hpp"
#include "plastcone/tensor.hpp"
#include "plastcone/yield.hpp"

namespace plastcone {

/// Piecewise-constant time program: value(t) is the value of the last knot
/// at or before t, zero before the first knot.
struct TimeProgram {
  std::vector<std::pair<double, double>> knots;

  double at(double t) const;
  double max_abs() const;
  /// Time after which the program is identically zero, or +inf if it never is.
  double quiet_after() const;
};

enum class BcKind { velocity, traction, free_end };

struct BoundaryCondition {
  BcKind kind = BcKind::free_end;
  TimeProgram program; // prescribed velocity or axial traction
};

/// Staggered 1-D bar under uniaxial-strain kinematics: full stress tensors at
/// cell centers, axial velocities at nodes. x spans [0, n_cells * dx].
struct Grid1D {
  std::size_t n_cells = 0;
  double dx = 0.0;
  std::vector<SymTensor3> stress; // per cell
  std::vector<double> v;          // per node, n_cells + 1
};

Grid1D make_grid(std::size_t n_cells, double dx);

struct WaveConfig {
  ElasticModuli moduli;
  double dt = 0.0;
  double t_end = 0.0;
  double cfl_limit = 0.9; // dt must satisfy dt <= cfl_limit * dx / c_p, cfl_limit <= 0.9
  BoundaryCondition left;
  BoundaryCondition right;
  TimeProgram forcing; // axial body force h1(t), uniform in space
  std::size_t output_stride = 1;
  DriftPolicy drift;
};

struct EnergySample {
  double t = 0.0;
  double kinetic = 0.0;   // time-centered rho v- v+ / 2 form
  double elastic = 0.0;   // sigma : H^{-1} sigma / 2 per cell
  double dissipated = 0.0; // cumulative plastic dissipation
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> v; // node-averaged velocity per cell
  std::vector<SymTensor3> stress;
  std::vector<double> f_value;
};

struct FrontDetector {
  double x = 0.0;
  double threshold = 0.0;
  double arrival = -1.0; // first time |v| >= threshold, -1 if never
};

struct WaveResult {
  std::vector<Snapshot> snapshots;
  std::vector<EnergySample> energy;
  std::vector<FrontDetector> fronts; // at 1/4, 1/2, 3/4 of the bar
  double measured_front_speed = 0.0; // from the outer detector pair, 0 if unmeasurable
  double max_membership = 0.0;       // worst post-correction violation over the run
  double min_step_dissipation = 0.0; // most negative per-step plastic dissipation
  std::size_t steps = 0;
};

/// Leapfrog driver: velocity update from the stress divergence and body
/// force, strain rate from the fresh velocities, stress update through the
/// constitutive operator, then the drift policy. The CFL bound is validated
/// before any stepping.
WaveResult run_wave(Grid1D& grid, const YieldDomain& domain, const WaveConfig& config);

} // namespace plastcone

#endif
