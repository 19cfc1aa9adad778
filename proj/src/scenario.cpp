#include "plastcone/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plastcone/errors.hpp"

namespace plastcone {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("scenario is not valid JSON");
  if (!j.is_object()) fail("scenario root must be a JSON object");
  return j;
}

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown field '" + item.key() + "' in " + ctx);
  }
}

const json& require(const json& obj, const std::string& ctx, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing field '" + std::string(key) + "' in " + ctx);
  return *it;
}

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) fail("field '" + what + "' must be a number");
  return j.get<double>();
}

double number_at(const json& obj, const std::string& ctx, const char* key) {
  return as_number(require(obj, ctx, key), key);
}

std::string string_at(const json& obj, const std::string& ctx, const char* key) {
  const json& j = require(obj, ctx, key);
  if (!j.is_string()) fail("field '" + std::string(key) + "' must be a string");
  return j.get<std::string>();
}

SymTensor3 tensor_at(const json& obj, const std::string& ctx, const char* key) {
  const json& j = require(obj, ctx, key);
  if (!j.is_array() || j.size() != 6)
    fail("field '" + std::string(key) + "' must be an array of 6 numbers "
         "[s11, s22, s33, s12, s13, s23]");
  std::array<double, 6> a{};
  for (std::size_t i = 0; i < 6; ++i) a[i] = as_number(j[i], key);
  return SymTensor3::from_array(a);
}

ScenarioHeader parse_header(const json& root) {
  ScenarioHeader hdr;
  hdr.version = string_at(root, "scenario", "version");
  if (hdr.version != kScenarioVersion)
    fail("scenario version '" + hdr.version + "' is not supported (this build reads '" +
         std::string(kScenarioVersion) + "')");
  if (root.contains("seed")) {
    const json& s = root["seed"];
    if (!s.is_number_unsigned()) fail("field 'seed' must be a non-negative integer");
    hdr.seed = s.get<std::uint64_t>();
    hdr.seed_given = true;
  }
  return hdr;
}

YieldDomain domain_from(const json& root) {
  const std::string crit = string_at(root, "scenario", "criterion");
  double sat_tol = kDefaultSaturationTol;
  if (root.contains("saturation_tol")) sat_tol = as_number(root["saturation_tol"], "saturation_tol");

  if (crit == "von_mises" || crit == "tresca") {
    if (root.contains("functions"))
      fail("field 'functions' is only valid with criterion 'custom'");
    const double k = number_at(root, "scenario", "k");
    return crit == "von_mises" ? YieldDomain::make_von_mises(k, sat_tol)
                               : YieldDomain::make_tresca(k, sat_tol);
  }
  if (crit == "custom") {
    if (root.contains("k")) fail("field 'k' is not used by criterion 'custom'; set per-function levels");
    const json& fns = require(root, "scenario", "functions");
    if (!fns.is_array() || fns.empty()) fail("field 'functions' must be a non-empty array");
    std::vector<PolyCriterion> criteria;
    for (const json& fn : fns) {
      if (!fn.is_object()) fail("entries of 'functions' must be objects");
      check_keys(fn, "functions[]", {"level", "terms"});
      PolyCriterion crit_fn;
      crit_fn.level = number_at(fn, "functions[]", "level");
      const json& terms = require(fn, "functions[]", "terms");
      if (!terms.is_array() || terms.empty()) fail("field 'terms' must be a non-empty array");
      for (const json& term : terms) {
        if (!term.is_array() || term.size() != 3)
          fail("entries of 'terms' must be [coeff, j2_pow, j3_pow] triples");
        PolyTerm pt;
        pt.coeff = as_number(term[0], "terms");
        if (!term[1].is_number_integer() || !term[2].is_number_integer() ||
            term[1].get<int>() < 0 || term[2].get<int>() < 0)
          fail("polynomial powers in 'terms' must be non-negative integers");
        pt.j2_pow = term[1].get<int>();
        pt.j3_pow = term[2].get<int>();
        crit_fn.terms.push_back(pt);
      }
      criteria.push_back(std::move(crit_fn));
    }
    return YieldDomain::make_custom(std::move(criteria), sat_tol);
  }
  fail("unknown criterion '" + crit + "' (expected von_mises, tresca or custom)");
}

ElasticModuli moduli_from(const json& root) {
  const json& m = require(root, "scenario", "moduli");
  if (!m.is_object()) fail("field 'moduli' must be an object");
  check_keys(m, "moduli", {"lame", "young", "rho"});
  const double rho = number_at(m, "moduli", "rho");
  const bool has_lame = m.contains("lame");
  const bool has_young = m.contains("young");
  if (has_lame == has_young)
    fail("moduli must give exactly one of 'lame' [lambda, mu] or 'young' [E, nu]");
  const char* key = has_lame ? "lame" : "young";
  const json& pair = m[key];
  if (!pair.is_array() || pair.size() != 2)
    fail("field '" + std::string(key) + "' must be an array of 2 numbers");
  const double a = as_number(pair[0], key);
  const double b = as_number(pair[1], key);
  return has_lame ? moduli_from_lame(a, b, rho) : moduli_from_young(a, b, rho);
}

DriftPolicy drift_from(const json& root) {
  DriftPolicy policy;
  if (!root.contains("drift")) return policy;
  const json& d = root["drift"];
  if (!d.is_object()) fail("field 'drift' must be an object");
  check_keys(d, "drift", {"kind", "tol"});
  const std::string kind = string_at(d, "drift", "kind");
  if (kind == "none")
    policy.kind = DriftKind::none;
  else if (kind == "radial_return")
    policy.kind = DriftKind::radial_return;
  else
    fail("unknown drift kind '" + kind + "' (expected none or radial_return)");
  if (d.contains("tol")) {
    policy.drift_tol = as_number(d["tol"], "tol");
    if (!(policy.drift_tol > 0.0)) fail("drift 'tol' must be positive");
  }
  return policy;
}

StrainPath path_from(const json& root) {
  const json& p = require(root, "scenario", "path");
  if (!p.is_object()) fail("field 'path' must be an object");
  check_keys(p, "path", {"interpolation", "knots"});
  StrainPath path;
  const std::string interp = string_at(p, "path", "interpolation");
  if (interp == "piecewise_constant")
    path.interp = PathInterp::piecewise_constant;
  else if (interp == "piecewise_linear")
    path.interp = PathInterp::piecewise_linear;
  else
    fail("unknown interpolation '" + interp +
         "' (expected piecewise_constant or piecewise_linear)");
  const json& knots = require(p, "path", "knots");
  if (!knots.is_array() || knots.empty()) fail("field 'knots' must be a non-empty array");
  for (const json& knot : knots) {
    if (!knot.is_object()) fail("entries of 'knots' must be objects");
    check_keys(knot, "knots[]", {"t", "rate"});
    PathKnot pk;
    pk.t = number_at(knot, "knots[]", "t");
    pk.rate = tensor_at(knot, "knots[]", "rate");
    path.knots.push_back(pk);
  }
  path.validate();
  return path;
}

TimeProgram program_from(const json& j, const char* what) {
  if (!j.is_array()) fail("field '" + std::string(what) + "' must be an array of [t, value] pairs");
  TimeProgram prog;
  double prev = -std::numeric_limits<double>::infinity();
  for (const json& knot : j) {
    if (!knot.is_array() || knot.size() != 2)
      fail("entries of '" + std::string(what) + "' must be [t, value] pairs");
    const double t = as_number(knot[0], what);
    const double value = as_number(knot[1], what);
    if (!(t > prev)) fail("knot times in '" + std::string(what) + "' must be strictly increasing");
    prev = t;
    prog.knots.emplace_back(t, value);
  }
  return prog;
}

BoundaryCondition bc_from(const json& bc, const std::string& side) {
  if (!bc.is_object()) fail("field '" + side + "' must be an object");
  check_keys(bc, side, {"kind", "program"});
  BoundaryCondition out;
  const std::string kind = string_at(bc, side, "kind");
  if (kind == "free") {
    if (bc.contains("program")) fail("a free boundary ('" + side + "') takes no 'program'");
    out.kind = BcKind::free_end;
    return out;
  }
  if (kind == "velocity")
    out.kind = BcKind::velocity;
  else if (kind == "traction")
    out.kind = BcKind::traction;
  else
    fail("unknown boundary kind '" + kind + "' in '" + side +
         "' (expected velocity, traction or free)");
  out.program = program_from(require(bc, side, "program"), "program");
  return out;
}

MaterialState initial_from(const json& root) {
  MaterialState state;
  if (!root.contains("initial")) return state;
  const json& init = root["initial"];
  if (!init.is_object()) fail("field 'initial' must be an object");
  check_keys(init, "initial", {"sigma", "eps_e", "eps_p", "t"});
  if (init.contains("sigma")) state.sigma = tensor_at(init, "initial", "sigma");
  if (init.contains("eps_e")) state.eps_e = tensor_at(init, "initial", "eps_e");
  if (init.contains("eps_p")) state.eps_p = tensor_at(init, "initial", "eps_p");
  if (init.contains("t")) state.t = as_number(init["t"], "t");
  return state;
}

} // namespace

ProjectScenario parse_project_scenario(const std::string& text) {
  json root = parse_text(text);
  check_keys(root, "scenario",
             {"version", "seed", "criterion", "k", "functions", "saturation_tol", "sigma", "tau"});
  ScenarioHeader hdr = parse_header(root);
  YieldDomain domain = domain_from(root);
  SymTensor3 sigma = tensor_at(root, "scenario", "sigma");
  SymTensor3 tau = tensor_at(root, "scenario", "tau");
  return ProjectScenario{std::move(hdr), std::move(domain), sigma, tau};
}

DriveScenario parse_drive_scenario(const std::string& text) {
  json root = parse_text(text);
  check_keys(root, "scenario",
             {"version", "seed", "moduli", "criterion", "k", "functions", "saturation_tol", "path",
              "dt", "drift", "initial"});
  ScenarioHeader hdr = parse_header(root);
  ElasticModuli moduli = moduli_from(root);
  YieldDomain domain = domain_from(root);
  StrainPath path = path_from(root);
  const double dt = number_at(root, "scenario", "dt");
  if (!(dt > 0.0)) fail("field 'dt' must be positive");
  DriftPolicy drift = drift_from(root);
  MaterialState initial = initial_from(root);
  return DriveScenario{std::move(hdr), moduli, std::move(domain), std::move(path),
                       dt,             drift,  initial};
}

WaveScenario parse_wave_scenario(const std::string& text) {
  json root = parse_text(text);
  check_keys(root, "scenario",
             {"version", "seed", "grid", "moduli", "criterion", "k", "functions", "saturation_tol",
              "bc", "forcing", "dt", "t_end", "cfl_limit", "output_stride", "drift"});
  ScenarioHeader hdr = parse_header(root);

  const json& grid = require(root, "scenario", "grid");
  if (!grid.is_object()) fail("field 'grid' must be an object");
  check_keys(grid, "grid", {"n_cells", "dx"});
  const json& nc = require(grid, "grid", "n_cells");
  if (!nc.is_number_unsigned() || nc.get<std::uint64_t>() == 0)
    fail("field 'n_cells' must be a positive integer");
  const std::size_t n_cells = nc.get<std::size_t>();
  const double dx = number_at(grid, "grid", "dx");

  WaveConfig config;
  config.moduli = moduli_from(root);
  YieldDomain domain = domain_from(root);

  const json& bc = require(root, "scenario", "bc");
  if (!bc.is_object()) fail("field 'bc' must be an object");
  check_keys(bc, "bc", {"left", "right"});
  config.left = bc_from(require(bc, "bc", "left"), "left");
  config.right = bc_from(require(bc, "bc", "right"), "right");

  if (root.contains("forcing")) config.forcing = program_from(root["forcing"], "forcing");

  config.dt = number_at(root, "scenario", "dt");
  config.t_end = number_at(root, "scenario", "t_end");
  if (root.contains("cfl_limit")) config.cfl_limit = as_number(root["cfl_limit"], "cfl_limit");
  if (root.contains("output_stride")) {
    const json& stride = root["output_stride"];
    if (!stride.is_number_unsigned() || stride.get<std::uint64_t>() == 0)
      fail("field 'output_stride' must be a positive integer");
    config.output_stride = stride.get<std::size_t>();
  }
  config.drift = drift_from(root);

  return WaveScenario{std::move(hdr), n_cells, dx, std::move(domain), std::move(config)};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace plastcone
