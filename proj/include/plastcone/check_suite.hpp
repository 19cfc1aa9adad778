#ifndef PLASTCONE_CHECK_SUITE_HPP
#define PLASTCONE_CHECK_SUITE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace plastcone {

/// Outcome of one named verification run. Unless the note says otherwise,
/// pass means worst <= tol.
struct CheckResult {
  std::string name;
  std::size_t samples = 0;
  double worst = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct CheckConfig {
  std::uint64_t seed = 42;
  /// Sample count of the decomposition suite; the other suites derive their
  /// counts from it (oracle and gradient suites use samples/10, the
  /// constitutive suite samples/100).
  std::size_t samples = 10000;
  /// Multiplies every tolerance; > 1 loosens, < 1 tightens.
  double tol_scale = 1.0;
};

struct CheckGroup {
  std::string title;
  std::vector<CheckResult> results;

  bool pass() const;
};

CheckGroup check_decomposition(const CheckConfig& cfg);
CheckGroup check_oracle_agreement(const CheckConfig& cfg);
CheckGroup check_gradients(const CheckConfig& cfg);
CheckGroup check_constitutive_identities(const CheckConfig& cfg);
CheckGroup check_driver_plateau(const CheckConfig& cfg);
CheckGroup check_wave(const CheckConfig& cfg);
CheckGroup check_hydrostatic_invariance(const CheckConfig& cfg);

/// All seven groups in a fixed order.
std::vector<CheckGroup> run_all_checks(const CheckConfig& cfg);

/// Render results as a fixed-width table (shared by the CLI and reports).
std::string format_check_report(const std::vector<CheckGroup>& groups, const CheckConfig& cfg);

} // namespace plastcone

#endif
