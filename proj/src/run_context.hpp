#pragma once

// Shared plumbing between the config runner and the figure presets.

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cldecohere/arrival.hpp"
#include "cldecohere/csv.hpp"
#include "cldecohere/runner.hpp"

namespace cldecohere::detail {

class RunContext {
 public:
  RunContext(const RunOptions& opts, RunManifest& manifest);

  std::size_t jobs() const { return jobs_; }
  double tol(double fallback) const { return opts_.tol.value_or(fallback); }
  RunManifest& manifest() { return manifest_; }

  /// Opens a CSV in the output directory and records it in the manifest.
  std::unique_ptr<CsvWriter> open_csv(const std::string& name, const std::vector<std::string>& header);

  /// Marks the run partial; thread safe. The first few messages are kept.
  void flag_partial(const std::string& message);
  bool partial() const { return partial_.load(); }

 private:
  RunOptions opts_;
  RunManifest& manifest_;
  std::size_t jobs_;
  std::atomic<bool> partial_{false};
  std::mutex mutex_;
  std::size_t partial_messages_ = 0;
};

/// Short decimal tag for file names, e.g. 0.05 -> "0.05", 1e-4 -> "0.0001".
std::string tag(double v);

nlohmann::ordered_json to_json(const GaussianPacket& p);
nlohmann::ordered_json to_json(const UniformGrid& g);

// Outputs of the individual scenario kinds. Each writes one or more CSV files.

void write_arrival(RunContext& ctx, const Scenario& s, const std::string& dist_name,
                   CsvWriter& moments, double window);
void write_cat_density(RunContext& ctx, const CatState& cat, const Environment& env,
                       const ModelConstants& c, const UniformGrid& xs, const UniformGrid& ts,
                       const std::string& name);
void write_decoherence_rows(CsvWriter& out, const CatState& cat, const Environment& env,
                            const ModelConstants& c, const UniformGrid& ts,
                            const std::vector<double>& prefix, bool with_printed);
TrajectoryBundle compute_trajectories(RunContext& ctx, const Scenario& s, std::size_t per_branch,
                                      double h);
void write_trajectories(RunContext& ctx, const TrajectoryBundle& b, const std::string& name);
double shutter_point(RunContext& ctx, double x, double t, double k, const Environment& env,
                     const ModelConstants& c, double r_min);

}  // namespace cldecohere::detail

namespace cldecohere::detail {

/// Runs the body of a named preset; throws std::invalid_argument for unknown names.
void run_preset_body(const std::string& name, RunContext& ctx);

}  // namespace cldecohere::detail
