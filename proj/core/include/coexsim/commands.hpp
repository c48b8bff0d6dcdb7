#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "coexsim/config.hpp"

namespace coexsim {

// Subcommand bodies, shared by the CLI and the test suites. Each returns a
// process exit status: 0 iff all requested outputs were written.

// Writes wifi_sweep.csv, lte_sweep.csv and sweep_summary.csv.
int cmd_sweep(const RunConfig& cfg, Scheme scheme,
              const std::filesystem::path& out_dir, std::ostream& log);

// Writes mc_summary.csv plus one detail file per (N, scheme).
int cmd_montecarlo(const RunConfig& cfg, const std::filesystem::path& out_dir,
                   std::ostream& log);

// Calibrates from a two-column anchors file (or the built-in tables when no
// path is given) and writes efficiency.csv.
int cmd_calibrate(const RunConfig& cfg, const std::optional<std::filesystem::path>& anchors,
                  const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace coexsim
