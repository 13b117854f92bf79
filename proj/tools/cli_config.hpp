#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentbc/boundary.hpp"
#include "momentbc/theory.hpp"

namespace momentbc::cli {

inline constexpr const char* version = "0.1.0";

/// Bad flags, bad config files, inconsistent options.  Exit code 1.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct RunConfig
{
  std::string command;

  // theory
  std::string theory = "G20";
  int nd = -1;
  std::vector<int> m;
  Reduction reduction = Reduction::planar;
  Axis normal = Axis::x;  ///< solve-channel and energy-march always use y

  // physics
  BcKind bc = BcKind::obc;
  double chi = 1.0;
  double kn = 0.3;
  double source = 0.81649658092772603;
  int grid = 512;
  std::vector<double> scan_chi;
  std::vector<std::string> reference;

  // march
  double cfl = 0.5;
  double crossing_times = 10.0;
  int order = 1;
  unsigned long long seed = 12345;
  bool homogeneous = false;
  bool random_init = false;
  double steady_tol = 0.0;

  // tolerances
  double kernel_tol = 1e-9;
  double null_tol = 1e-8;
  double coupling_tol = 1e-8;

  // artefacts
  std::string dump;  ///< assemble: s-matrix, a-x, a-y, a-z, p, b-matrix, l-matrix, basis
  std::string out;
  std::string report;
  std::string plot;
  std::vector<std::string> inputs;  ///< compare: two CSV files
  std::string outdir;
  int jobs = 1;

  bool show_version = false;
  bool version_json = false;
  std::optional<std::string> config_file;

  /// Fully resolved theory; throws UsageError.
  MomentTheory resolve_theory() const;
  /// Throws UsageError on inconsistent settings.
  void validate() const;
  /// out/report/plot joined onto outdir when relative.
  std::string output_path(const std::string& p) const;
};

/// Flags override values from --config.  outdir defaults to
/// $MOMENTBC_OUTDIR.  Throws UsageError; returns nullopt when help was
/// printed.
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

nlohmann::json to_json(const RunConfig& c);

}  // namespace momentbc::cli
