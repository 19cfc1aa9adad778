// Acceptance gate: one line per criterion, details per named check below it.
// Tolerances are pinned inside the check suite; a nonzero exit means at least
// one criterion failed.

#include <cstdio>

#include "plastcone/check_suite.hpp"
#include "plastcone/random_gen.hpp"

int main() {
  plastcone::CheckConfig cfg; // seed 42, 10^4 decomposition samples, tol_scale 1
  std::printf("acceptance run: rng %s seed %llu, %zu base samples\n", plastcone::RandomGen::name(),
              static_cast<unsigned long long>(cfg.seed), cfg.samples);

  const auto groups = plastcone::run_all_checks(cfg);
  std::size_t passed = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& g = groups[i];
    const bool ok = g.pass();
    passed += ok ? 1 : 0;
    std::printf("[%zu/%zu] %-62s %s\n", i + 1, groups.size(), g.title.c_str(),
                ok ? "PASS" : "FAIL");
    for (const auto& r : g.results) {
      std::printf("      %-34s n=%-7zu worst=%-11.3e tol=%-11.3e %s\n", r.name.c_str(), r.samples,
                  r.worst, r.tol, r.pass ? "pass" : "FAIL");
      if (!r.note.empty()) std::printf("        %s\n", r.note.c_str());
    }
  }
  std::printf("acceptance: %zu/%zu criteria pass\n", passed, groups.size());
  return passed == groups.size() ? 0 : 1;
}
