// Time-grid kernels: sample the entanglement measures of an evolving state
// on a uniform grid, then refine purity extrema between grid points.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spinrotor/entanglement.hpp"
#include "spinrotor/execution.hpp"

namespace spinrotor {

// Endpoint-inclusive uniform grid t_k = k t_max / (steps - 1).
class TimeGrid {
 public:
  // Throws std::invalid_argument unless t_max > 0 and steps >= 2.
  TimeGrid(double t_max, int steps);

  double t_max() const { return t_max_; }
  int steps() const { return steps_; }
  double spacing() const { return t_max_ / (steps_ - 1); }
  double at(int k) const { return k == steps_ - 1 ? t_max_ : k * t_max_ / (steps_ - 1); }
  std::vector<double> points() const;

 private:
  double t_max_;
  int steps_;
};

struct DynamicsSample {
  double t = 0.0;
  std::optional<BranchOverlap> overlap;  // +-m pair from |up> only
  double purity = 1.0;
  double entropy = 0.0;
  // |rho_rotor| between the two most populated sectors; |K| / 2 for the equal
  // +-m superposition, 0 for a single sector.
  double rotor_coherence = 0.0;
  double purity_rate = 0.0;
};

DynamicsSample sample_at(const ModelParams& params, const SuperposedState& initial, double t);

std::vector<DynamicsSample> dynamics_series(const ModelParams& params,
                                            const SuperposedState& initial, const TimeGrid& grid,
                                            Execution exec = Execution::parallel);

enum class ExtremumKind { purity_min, purity_max };

struct Extremum {
  ExtremumKind kind;
  double t = 0.0;
  double purity = 1.0;
  double entropy = 0.0;
};

// Interior purity extrema: brackets come from sign changes of the sampled
// purity rate, each refined to machine precision by root finding on the rate.
// Returns nothing when the sampled purity is flat.
std::vector<Extremum> locate_extrema(const ModelParams& params, const SuperposedState& initial,
                                     std::span<const DynamicsSample> series);

struct DynamicsSummary {
  double purity_min = 1.0;
  double t_first_min = 0.0;  // 0 when the purity never dips
  double entropy_max = 0.0;
  double entropy_min = 0.0;
};

DynamicsSummary summarize(std::span<const DynamicsSample> series,
                          std::span<const Extremum> extrema);

}  // namespace spinrotor
