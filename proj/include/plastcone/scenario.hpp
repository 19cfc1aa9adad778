#ifndef PLASTCONE_SCENARIO_HPP
#define PLASTCONE_SCENARIO_HPP

#include <cstdint>
#include <string>

#include "plastcone/constitutive.hpp"
#include "plastcone/elasticity.hpp"
#include "plastcone/tensor.hpp"
#include "plastcone/wave1d.hpp"
#include "plastcone/yield.hpp"

namespace plastcone {

/// Scenario format version accepted by this build. The major tag must match
/// exactly; anything else is rejected up front.
inline constexpr const char* kScenarioVersion = "pc/1";

struct ScenarioHeader {
  std::string version;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

struct ProjectScenario {
  ScenarioHeader header;
  YieldDomain domain;
  SymTensor3 sigma;
  SymTensor3 tau;
};

struct DriveScenario {
  ScenarioHeader header;
  ElasticModuli moduli;
  YieldDomain domain;
  StrainPath path;
  double dt = 0.0;
  DriftPolicy drift;
  MaterialState initial;
};

struct WaveScenario {
  ScenarioHeader header;
  std::size_t n_cells = 0;
  double dx = 0.0;
  YieldDomain domain;
  WaveConfig config;
};

/// Parsers are strict: unknown fields, missing fields, wrong types and a
/// version mismatch all raise ValidationError naming the offending field.
ProjectScenario parse_project_scenario(const std::string& text);
DriveScenario parse_drive_scenario(const std::string& text);
WaveScenario parse_wave_scenario(const std::string& text);

std::string read_text_file(const std::string& path);

} // namespace plastcone

#endif
