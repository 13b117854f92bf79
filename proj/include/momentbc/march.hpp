#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "momentbc/channel.hpp"

namespace momentbc {

struct MarchOptions
{
  double crossing_times = 10.0;  ///< final time in units of 1 / max |speed|
  double cfl = 0.5;
  int order = 1;  ///< 1: piecewise constant, 2: kappa = 1/3 reconstruction
  bool homogeneous = false;  ///< drop wall data and source (g = 0, F = 0)
  std::uint64_t seed = 12345;
  bool random_initial = false;  ///< otherwise start from alpha = 0
  int record_every = 1;
  double steady_tol = 0.0;  ///< stop once max |d alpha / dt| drops below this (0: never)
  double blow_up_factor = 1e8;
};

struct EnergyTrace
{
  std::vector<double> t;
  std::vector<double> energy;  ///< sum over cells of h alpha^T S alpha
  double max_speed = 0.0;
  double dt = 0.0;
  int steps = 0;
  /// max over n of (E_n - min_{k<=n} E_k) / E_0
  double max_relative_increase = 0.0;
  bool blow_up = false;
  bool reached_steady = false;
  double final_rate = 0.0;  ///< max |d alpha / dt| at the last step
  Eigen::VectorXd y;        ///< cell centres
  Eigen::MatrixXd alpha;    ///< cells x moments at the final time
};

/// Finite volumes on cfg.cells cells, upwind flux splitting
/// A = A_+ + A_- from the characteristic decomposition, wall fluxes from
/// the boundary state that satisfies the boundary operator, three stage
/// SSP Runge-Kutta in time.
EnergyTrace time_march_energy(const ChannelConfig& cfg, const MomentSystem& sys, const BoundaryOperator& bc,
                              const MarchOptions& opt);

/// cells x m matrix of standard normal samples, deterministic in `seed`.
Eigen::MatrixXd random_state(int cells, int moments, std::uint64_t seed);

/// Max over cells and moments of |march - steady|, the steady node values
/// averaged onto the cell centres.  Both must use the same cell count.
double max_difference_to_steady(const EnergyTrace& march, const ChannelSolution& steady);

}  // namespace momentbc
