#pragma once

// Experiment configuration: JSON document -> validated descriptors.
// Unknown keys are rejected with their field path.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wcsg/cocycles.hpp"
#include "wcsg/flows.hpp"
#include "wcsg/spaces.hpp"

namespace wcsg::cli {

using json = nlohmann::json;

const std::vector<std::string>& suite_names();

struct WeightCfg {
  std::string kind = "one";  // one | standard | exp-abs | expr
  double alpha = 0.0;
  std::string expr;
};

struct SpaceCfg {
  std::string kind = "hardy";
  double p = 2.0;
  double alpha = 0.0;
  WeightCfg weight;
  QuadPolicy quad;
  double real_extent = 32.0;
};

struct FlowCfg {
  std::string catalog;                 // empty when given by a generator
  std::map<std::string, double> params;
  std::string generator;               // expression for G
  std::string domain = "disc";         // disc | real (generator flows)
  OdeCfg ode;
};

struct CocycleCfg {
  std::string kind = "one";  // one | derivative | integral | exponential | coboundary
  std::string g;
  std::string omega;
  std::vector<DeclaredZero> zeros;
  double zero_guard = 1e-3;
};

struct FunctionCfg {
  std::string expr;
  std::optional<double> expected;    // norm-table
  std::optional<bool> admissible;    // admissibility
  std::optional<long> order;         // admissibility
};

struct Tolerances {
  double norm = 1e-8;
  double law = 1e-10;
  double law_quadrature = 1e-7;
  double bound_slack = 1e-3;
  double generator = 1e-4;
  double order = 0.9;
  double conv = 1e-3;
  double norm_cap = 1e6;
  double reconstruct = 1e-6;
  double generator_fd = 1e-5;
  double mdot0 = 1e-6;
  double growth = 1e-6;
  double admissibility = 1e-8;
  double saks_gap = 1e-3;
  double coboundary = 1e-9;
};

struct SweepCfg {
  std::vector<double> t;
  std::vector<double> s;
  std::vector<double> radii;
  std::vector<double> steps;
  double grid_radius = 0.95;
  int rings = 8;
  int spokes = 32;
  bool norm_ladder = true;
};

struct ContinuityExpect {
  std::optional<bool> gamma;
  std::optional<bool> norm;
  std::optional<double> min_norm_residual;
  std::optional<double> max_norm_of_Cf;
};

struct BoundExpect {
  double t = 0.0;
  double theoretical = 0.0;
  double tol = 1e-9;
};

struct ExperimentConfig {
  std::string suite;
  std::vector<SpaceCfg> spaces;
  std::vector<FlowCfg> flows;
  std::vector<CocycleCfg> cocycles;
  std::vector<FunctionCfg> functions;
  std::string corpus;  // default | monomials | none
  SweepCfg sweep;
  Tolerances tol;
  ContinuityExpect continuity;
  std::vector<BoundExpect> bounds;
  std::optional<FlowCfg> compare;  // reconstruct
};

struct Overrides {
  std::optional<double> tol;  // primary verdict tolerance of the suite
  std::optional<int> grid;    // spokes of the sample grid
};

/// Parses and validates; throws ConfigError carrying the offending field path.
ExperimentConfig parse_config(const json& doc, const std::string& suite, const Overrides& overrides = {});
ExperimentConfig load_config(const std::string& path, const std::string& suite, const Overrides& overrides = {});

/// Normalized config with every default filled in, echoed into reports.
json echo(const ExperimentConfig& cfg);

/// Builders turning descriptors into library objects.
SpaceSpec build_space(const SpaceCfg& cfg);
Semiflow build_flow(const FlowCfg& cfg);
Semicocycle build_cocycle(const CocycleCfg& cfg, const Semiflow& phi, const QuadPolicy& policy);

}  // namespace wcsg::cli
