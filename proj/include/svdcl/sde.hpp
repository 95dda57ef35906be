#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "svdcl/dataset.hpp"
#include "svdcl/matrix.hpp"
#include "svdcl/rng.hpp"

namespace svdcl {

// Drift field: writes d(state)/dt into `out` (length state_dim).
using RhsFn =
    std::function<void(const double* state, const double* params, double* out)>;
// Observation map: full state row -> observed vector (length observed_dim).
using ObserveFn = std::function<void(const double* state, double* out)>;
// Draws a control-parameter tuple inside one named phase region.
using RegionSampler = std::function<std::vector<double>(Rng&)>;

// A parameterized stochastic dynamical system. The built-in `hopf` and
// `saddle_node` normal forms are fully specified; `snichopf`, `sho` and
// `cellcycle` ship as pluggable slots whose drift fields must be transcribed
// from their reference formulations via register_model_rhs before any
// trajectory can be generated.
struct DynModel {
  std::string name;
  std::size_t state_dim = 2;
  std::size_t observed_dim = 2;
  std::vector<std::string> param_names;
  RhsFn rhs;            // empty until registered for the pluggable slots
  ObserveFn observe;    // empty means identity on the first observed_dim dims
  std::vector<std::pair<double, double>> ic_box;  // per-state-dim IC range
  std::map<std::string, RegionSampler> regions;   // oversampling regions

  bool has_rhs() const { return static_cast<bool>(rhs); }
};

// Control-parameter path s -> parameter tuple with ground-truth transition
// coordinates where they are analytically known.
struct ControlPath {
  std::string name;
  double s_min = 0.0;
  double s_max = 1.0;
  std::function<std::vector<double>(double)> map;
  std::vector<double> critical_points;
};

struct Trajectory {
  double s = 0.0;
  std::vector<double> params;
  std::vector<double> times;
  Matrix states;  // time x observed_dim
};

// Where the sqrt(2*sigma) Gaussian contamination enters: as the SDE diffusion
// term (default) or added once to the stored observations.
enum class NoiseMode { Diffusion, Observation };

// Generation knobs; the defaults reproduce the standard data protocol
// (400 integration points downsampled to 100, 30 candidate ICs per cell).
struct SdeGenOptions {
  std::size_t n_steps = 400;
  std::size_t downsample = 100;
  std::size_t candidate_ics = 30;
  std::size_t grid_bins = 32;     // per axis for the training grid
  std::size_t batch_per_point = 500;
  NoiseMode noise_mode = NoiseMode::Diffusion;
};

const DynModel& get_model(const std::string& name);
std::vector<std::string> model_names();

// Fills a pluggable slot. `regions` supplies the oversampling samplers some
// systems need (sho: "oscillatory" and "excitable").
void register_model_rhs(const std::string& name, RhsFn rhs, ObserveFn observe = {},
                        std::map<std::string, RegionSampler> regions = {});
void clear_registered_rhs(const std::string& name);

ControlPath control_path(const std::string& system);

// Explicit Euler-Maruyama: x_{k+1} = x_k + dt*rhs(x_k) + sqrt(2*sigma*dt)*xi_k.
// Returns the full-resolution trajectory ((n_steps+1) observed rows, IC
// included). Any state component exceeding 1e12 raises NumericalError naming
// the step.
Trajectory euler_maruyama(const DynModel& model, const std::vector<double>& params,
                          const std::vector<double>& x0, double t_end,
                          std::size_t n_steps, double sigma, uint64_t seed);

// Endpoint-preserving near-uniform downsample: index_i = round(i*(N-1)/(k-1)).
std::vector<std::size_t> downsample_indices(std::size_t n, std::size_t k);
Trajectory downsample_trajectory(const Trajectory& t, std::size_t k);

Dataset generate_training_set(const std::string& system, double sigma, uint64_t seed,
                              const SdeGenOptions& opts = {});
Dataset generate_test_set(const std::string& system, double sigma,
                          std::size_t n_path_points, uint64_t seed,
                          const SdeGenOptions& opts = {});

// Time horizon and per-system sample protocol, exposed for tests.
double system_horizon(const std::string& system);
std::size_t expected_training_count(const std::string& system,
                                    const SdeGenOptions& opts);

}  // namespace svdcl
