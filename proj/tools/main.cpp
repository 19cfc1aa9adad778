#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plastcone/check_suite.hpp"
#include "plastcone/constitutive.hpp"
#include "plastcone/errors.hpp"
#include "plastcone/projection.hpp"
#include "plastcone/random_gen.hpp"
#include "plastcone/scenario.hpp"
#include "plastcone/wave1d.hpp"

namespace {

using plastcone::ValidationError;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_tensor(std::string& row, const plastcone::SymTensor3& t) {
  for (double v : t.to_array()) {
    row += ',';
    row += num(v);
  }
}

nlohmann::json tensor_json(const plastcone::SymTensor3& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (double v : t.to_array()) arr.push_back(v);
  return arr;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write to '" + out_path + "'");
  out << text;
}

std::string csv_header(const char* tool, std::uint64_t seed) {
  std::string head = "# plastcone ";
  head += tool;
  head += "\n# format ";
  head += plastcone::kScenarioVersion;
  head += "\n# rng ";
  head += plastcone::RandomGen::name();
  head += " seed ";
  head += std::to_string(seed);
  head += '\n';
  return head;
}

int run_project(const std::string& path, const std::string& out_path) {
  const auto scenario = plastcone::parse_project_scenario(plastcone::read_text_file(path));
  const auto result = plastcone::split(scenario.domain, scenario.sigma, scenario.tau);
  nlohmann::json out;
  out["branch"] = plastcone::branch_name(result.branch);
  out["tangent"] = tensor_json(result.split.tangent);
  out["normal"] = tensor_json(result.split.normal);
  write_output(out.dump(2) + "\n", out_path);
  return 0;
}

int run_drive(const std::string& path, const std::string& out_path, std::uint64_t seed,
              bool seed_given) {
  const auto scenario = plastcone::parse_drive_scenario(plastcone::read_text_file(path));
  const auto result =
      plastcone::integrate_path(scenario.domain, scenario.moduli, scenario.initial, scenario.path,
                                scenario.dt, scenario.drift);
  std::string text = csv_header("drive", seed_given ? seed : scenario.header.seed);
  text +=
      "t,sigma_11,sigma_22,sigma_33,sigma_12,sigma_13,sigma_23"
      ",eps_e_11,eps_e_22,eps_e_33,eps_e_12,eps_e_13,eps_e_23"
      ",eps_p_11,eps_p_22,eps_p_33,eps_p_12,eps_p_13,eps_p_23"
      ",f_value,consistency_residual\n";
  for (const auto& rec : result.records) {
    std::string row = num(rec.state.t);
    append_tensor(row, rec.state.sigma);
    append_tensor(row, rec.state.eps_e);
    append_tensor(row, rec.state.eps_p);
    row += ',';
    row += num(rec.f_value);
    row += ',';
    row += num(rec.consistency);
    row += '\n';
    text += row;
  }
  write_output(text, out_path);
  return 0;
}

int run_wave_cmd(const std::string& path, const std::string& out_path, std::uint64_t seed,
                 bool seed_given) {
  if (out_path.empty())
    throw ValidationError(
        "wave needs --out <path>; it writes <path> (CSV) and <path>.summary.json");
  const auto scenario = plastcone::parse_wave_scenario(plastcone::read_text_file(path));
  plastcone::Grid1D grid = plastcone::make_grid(scenario.n_cells, scenario.dx);
  const auto result = plastcone::run_wave(grid, scenario.domain, scenario.config);

  std::string text = csv_header("wave", seed_given ? seed : scenario.header.seed);
  text += "t,x,v,sigma_11,sigma_22,sigma_33,sigma_12,sigma_13,sigma_23,f_value\n";
  for (const auto& snap : result.snapshots) {
    for (std::size_t j = 0; j < snap.stress.size(); ++j) {
      std::string row = num(snap.t);
      row += ',';
      row += num((static_cast<double>(j) + 0.5) * scenario.dx);
      row += ',';
      row += num(snap.v[j]);
      append_tensor(row, snap.stress[j]);
      row += ',';
      row += num(snap.f_value[j]);
      row += '\n';
      text += row;
    }
  }
  write_output(text, out_path);

  nlohmann::json summary;
  summary["steps"] = result.steps;
  summary["dt"] = scenario.config.dt;
  summary["measured_front_speed"] = result.measured_front_speed;
  summary["pwave_speed"] = scenario.config.moduli.pwave_speed();
  summary["max_membership"] = result.max_membership;
  summary["min_step_dissipation"] = result.min_step_dissipation;
  summary["fronts"] = nlohmann::json::array();
  for (const auto& front : result.fronts) {
    nlohmann::json f;
    f["x"] = front.x;
    f["threshold"] = front.threshold;
    f["arrival"] = front.arrival;
    summary["fronts"].push_back(f);
  }
  summary["energy"] = nlohmann::json::array();
  for (const auto& e : result.energy) {
    nlohmann::json s;
    s["t"] = e.t;
    s["kinetic"] = e.kinetic;
    s["elastic"] = e.elastic;
    s["dissipated"] = e.dissipated;
    summary["energy"].push_back(s);
  }
  std::ofstream out(out_path + ".summary.json", std::ios::binary);
  if (!out) throw ValidationError("cannot write to '" + out_path + ".summary.json'");
  out << summary.dump(2) << "\n";
  return 0;
}

int run_check(const std::string& out_path, std::uint64_t seed, bool seed_given,
              std::size_t samples, double tol_scale) {
  plastcone::CheckConfig cfg;
  if (seed_given) cfg.seed = seed;
  cfg.samples = samples;
  cfg.tol_scale = tol_scale;
  const auto groups = plastcone::run_all_checks(cfg);
  write_output(plastcone::format_check_report(groups, cfg), out_path);
  for (const auto& g : groups)
    if (!g.pass()) return 2;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastic perfectly plastic constitutive engine: cone projections, "
               "strain-path driving and 1-D wave propagation"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;
  double tol_scale = 1.0;
  app.add_option("--seed", seed, "override the scenario rng seed")
      ->each([&seed_given](const std::string&) { seed_given = true; });
  app.add_option("--out", out_path, "write output to this path instead of stdout");
  app.add_option("--tol-scale", tol_scale, "multiply every check tolerance")
      ->check(CLI::PositiveNumber);

  std::string project_file, drive_file, wave_file;
  auto* project =
      app.add_subcommand("project", "split a tensor against the cones at a boundary stress");
  project->add_option("scenario", project_file, "scenario JSON file")->required();
  auto* drive = app.add_subcommand("drive", "integrate a material point along a strain path");
  drive->add_option("scenario", drive_file, "scenario JSON file")->required();
  auto* wave = app.add_subcommand("wave", "run the 1-D elasto-plastic bar");
  wave->add_option("scenario", wave_file, "scenario JSON file")->required();
  auto* check = app.add_subcommand("check", "run the built-in verification suites");
  std::size_t samples = 10000;
  check->add_option("--samples", samples, "base sample count of the randomized suites")
      ->check(CLI::PositiveNumber);
  // let --seed / --out / --tol-scale be given after the subcommand name
  for (auto* sub : {project, drive, wave, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (project->parsed()) return run_project(project_file, out_path);
    if (drive->parsed()) return run_drive(drive_file, out_path, seed, seed_given);
    if (wave->parsed()) return run_wave_cmd(wave_file, out_path, seed, seed_given);
    return run_check(out_path, seed, seed_given, samples, tol_scale);
  } catch (const plastcone::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
