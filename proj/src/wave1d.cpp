#include "plastcone/wave1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "plastcone/errors.hpp"

namespace plastcone {

double TimeProgram::at(double t) const {
  double value = 0.0;
  for (const auto& [time, v] : knots) {
    if (time > t) break;
    value = v;
  }
  return value;
}

double TimeProgram::max_abs() const {
  double m = 0.0;
  for (const auto& [time, v] : knots) m = std::max(m, std::abs(v));
  return m;
}

double TimeProgram::quiet_after() const {
  if (knots.empty()) return 0.0;
  if (knots.back().second != 0.0) return std::numeric_limits<double>::infinity();
  double quiet = knots.back().first;
  for (auto it = knots.rbegin(); it != knots.rend() && it->second == 0.0; ++it)
    quiet = it->first;
  return quiet;
}

Grid1D make_grid(std::size_t n_cells, double dx) {
  if (n_cells < 2) throw ValidationError("grid: need at least 2 cells");
  if (!(dx > 0.0)) throw ValidationError("grid: dx must be positive");
  Grid1D g;
  g.n_cells = n_cells;
  g.dx = dx;
  g.stress.assign(n_cells, SymTensor3{});
  g.v.assign(n_cells + 1, 0.0);
  return g;
}

namespace {

void validate_config(const Grid1D& grid, const WaveConfig& c) {
  if (grid.stress.size() != grid.n_cells || grid.v.size() != grid.n_cells + 1)
    throw ValidationError("wave: grid arrays inconsistent with n_cells");
  if (!(c.dt > 0.0)) throw ValidationError("wave: dt must be positive");
  if (!(c.t_end >= 0.0)) throw ValidationError("wave: t_end must be nonnegative");
  if (!(c.cfl_limit > 0.0) || c.cfl_limit > 0.9)
    throw ValidationError("wave: cfl_limit must lie in (0, 0.9], got " +
                          std::to_string(c.cfl_limit));
  if (c.output_stride == 0) throw ValidationError("wave: output_stride must be positive");
  const double dt_max = c.cfl_limit * grid.dx / c.moduli.pwave_speed();
  if (c.dt > dt_max * (1.0 + 1e-12))
    throw ValidationError("wave: CFL violation, dt = " + std::to_string(c.dt) +
                          " exceeds " + std::to_string(dt_max));
}

double boundary_velocity_sample(const TimeProgram& p, double t_half) { return p.at(t_half); }

} // namespace

WaveResult run_wave(Grid1D& grid, const YieldDomain& domain, const WaveConfig& config) {
  validate_config(grid, config);

  const std::size_t n = grid.n_cells;
  const double dx = grid.dx;
  const double rho = config.moduli.rho;

  WaveResult result;
  result.max_membership = domain.membership(grid.stress[0]);
  for (const SymTensor3& s : grid.stress)
    result.max_membership = std::max(result.max_membership, domain.membership(s));
  result.min_step_dissipation = 0.0;

  // Front detectors at quarter points; threshold is half the driving
  // particle-velocity amplitude (velocity programs directly, tractions
  // through the elastic impedance rho * c_p).
  {
    double amp = 0.0;
    const double impedance = rho * config.moduli.pwave_speed();
    for (const BoundaryCondition* bc : {&config.left, &config.right}) {
      if (bc->kind == BcKind::velocity)
        amp = std::max(amp, bc->program.max_abs());
      else if (bc->kind == BcKind::traction)
        amp = std::max(amp, bc->program.max_abs() / impedance);
    }
    const double length = static_cast<double>(n) * dx;
    for (double frac : {0.25, 0.5, 0.75}) {
      FrontDetector d;
      d.x = frac * length;
      d.threshold = 0.5 * amp;
      result.fronts.push_back(d);
    }
  }

  const auto cell_velocity = [&grid](std::size_t j) {
    return 0.5 * (grid.v[j] + grid.v[j + 1]);
  };

  const auto snapshot = [&](double t) {
    Snapshot s;
    s.t = t;
    s.v.resize(n);
    s.stress = grid.stress;
    s.f_value.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      s.v[j] = cell_velocity(j);
      s.f_value[j] = domain.report_value(grid.stress[j]);
    }
    result.snapshots.push_back(std::move(s));
  };

  const auto elastic_energy = [&] {
    double pe = 0.0;
    for (const SymTensor3& s : grid.stress) pe += elastic_energy_density(config.moduli, s) * dx;
    return pe;
  };

  double dissipated = 0.0;
  {
    double ke = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      ke += 0.5 * rho * grid.v[i] * grid.v[i] * w * dx;
    }
    result.energy.push_back({0.0, ke, elastic_energy(), 0.0});
  }
  snapshot(0.0);

  std::vector<double> v_prev(grid.v.size());
  double t = 0.0;
  std::size_t step = 0;
  while (t < config.t_end - 1e-12 * std::max(1.0, config.t_end)) {
    const double dt = std::min(config.dt, config.t_end - t);
    const double h1 = config.forcing.at(t);
    v_prev = grid.v;

    // momentum update: interior nodes see the centered stress difference,
    // boundary nodes the half-cell difference against the applied traction
    for (std::size_t i = 1; i < n; ++i)
      grid.v[i] += dt / rho * ((grid.stress[i].s11 - grid.stress[i - 1].s11) / dx + h1);

    if (config.left.kind == BcKind::velocity)
      grid.v[0] = boundary_velocity_sample(config.left.program, t + 0.5 * dt);
    else {
      const double traction =
          config.left.kind == BcKind::traction ? config.left.program.at(t) : 0.0;
      grid.v[0] += dt / rho * ((grid.stress[0].s11 - traction) / (0.5 * dx) + h1);
    }
    if (config.right.kind == BcKind::velocity)
      grid.v[n] = boundary_velocity_sample(config.right.program, t + 0.5 * dt);
    else {
      const double traction =
          config.right.kind == BcKind::traction ? config.right.program.at(t) : 0.0;
      grid.v[n] += dt / rho * ((traction - grid.stress[n - 1].s11) / (0.5 * dx) + h1);
    }

    // the conserved discrete energy pairs the centered kinetic product
    // v- v+ with the stress state *before* this step's constitutive update
    const bool emit = (step + 1) % config.output_stride == 0 || t + dt >= config.t_end - 1e-12;
    const double pe = emit ? elastic_energy() : 0.0;

    // constitutive update cell by cell
    double step_dissipation = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      SymTensor3 eps_rate;
      eps_rate.s11 = (grid.v[j + 1] - grid.v[j]) / dx;
      const RateSplit rs = rate_split(domain, config.moduli, grid.stress[j], eps_rate, false);
      step_dissipation += dot(rs.eps_p_rate, grid.stress[j]) * dt * dx;

      grid.stress[j] += rs.sigma_rate * dt;
      if (config.drift.kind == DriftKind::radial_return &&
          domain.membership(grid.stress[j]) > 0.0)
        grid.stress[j] = radial_return(domain, grid.stress[j]);

      const double post = domain.membership(grid.stress[j]);
      result.max_membership = std::max(result.max_membership, post);
      if (post > 100.0 * config.drift.drift_tol)
        throw NumericalError("wave: drift beyond hard limit at step " + std::to_string(step + 1) +
                             ", cell " + std::to_string(j) + ", membership " +
                             std::to_string(post));
    }
    dissipated += step_dissipation;
    result.min_step_dissipation = std::min(result.min_step_dissipation, step_dissipation);

    t += dt;
    ++step;

    for (FrontDetector& d : result.fronts) {
      if (d.arrival >= 0.0 || d.threshold <= 0.0) continue;
      const auto j = static_cast<std::size_t>(
          std::clamp(d.x / dx - 0.5, 0.0, static_cast<double>(n - 1)));
      if (std::abs(cell_velocity(j)) >= d.threshold) d.arrival = t;
    }

    if (emit) {
      double ke = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        ke += 0.5 * rho * v_prev[i] * grid.v[i] * w * dx;
      }
      result.energy.push_back({t, ke, pe, dissipated});
      snapshot(t);
    }
  }
  result.steps = step;

  const FrontDetector& first = result.fronts.front();
  const FrontDetector& last = result.fronts.back();
  if (first.arrival >= 0.0 && last.arrival > first.arrival)
    result.measured_front_speed = (last.x - first.x) / (last.arrival - first.arrival);

  return result;
}

} // namespace plastcone
