#include "spinrotor/kernels.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinrotor {

namespace {

// Peak-to-peak purity below this counts as flat (no entanglement dynamics).
constexpr double kFlatPurity = 1e-12;
constexpr double kStationaryRate = 1e-12;

double rotor_coherence(const SuperposedState& state) {
  if (state.size() < 2) return 0.0;
  const auto entries = state.entries();
  // Two most populated sectors; ties go to the earlier (smaller m) entry.
  std::size_t first = 0;
  std::size_t second = 1;
  auto w = [&](std::size_t i) { return std::norm(entries[i].amplitude) * entries[i].spinor.norm_sq(); };
  if (w(second) > w(first)) std::swap(first, second);
  for (std::size_t i = 2; i < entries.size(); ++i) {
    if (w(i) > w(first)) {
      second = first;
      first = i;
    } else if (w(i) > w(second)) {
      second = i;
    }
  }
  const auto& a = entries[first];
  const auto& b = entries[second];
  return std::abs(a.amplitude * std::conj(b.amplitude) * inner(b.spinor, a.spinor));
}

}  // namespace

TimeGrid::TimeGrid(double t_max, int steps) : t_max_(t_max), steps_(steps) {
  if (!(std::isfinite(t_max) && t_max > 0.0)) {
    throw std::invalid_argument("t_max must be positive, got " + std::to_string(t_max));
  }
  if (steps < 2) throw std::invalid_argument("steps must be at least 2");
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> t(steps_);
  for (int k = 0; k < steps_; ++k) t[k] = at(k);
  return t;
}

DynamicsSample sample_at(const ModelParams& params, const SuperposedState& initial, double t) {
  const SuperposedState state = evolve(params, initial, t);
  const EntanglementReport report = entanglement_report(state);

  DynamicsSample s;
  s.t = t;
  s.purity = report.purity;
  s.entropy = report.entropy;
  s.rotor_coherence = rotor_coherence(state);
  s.purity_rate = purity_rate(params, state);
  if (initial.is_opposite_pair_spin_up()) {
    s.overlap = branch_overlap(params, initial.entries().back().m, t);
  }
  return s;
}

std::vector<DynamicsSample> dynamics_series(const ModelParams& params,
                                            const SuperposedState& initial, const TimeGrid& grid,
                                            Execution exec) {
  params.validate();
  std::vector<DynamicsSample> out(grid.steps());
  const int n = grid.steps();
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) out[k] = sample_at(params, initial, grid.at(k));
  } else {
    for (int k = 0; k < n; ++k) out[k] = sample_at(params, initial, grid.at(k));
  }
  return out;
}

std::vector<Extremum> locate_extrema(const ModelParams& params, const SuperposedState& initial,
                                     std::span<const DynamicsSample> series) {
  std::vector<Extremum> found;
  if (series.size() < 3) return found;

  const auto [lo_it, hi_it] = std::minmax_element(
      series.begin(), series.end(),
      [](const DynamicsSample& a, const DynamicsSample& b) { return a.purity < b.purity; });
  if (hi_it->purity - lo_it->purity < kFlatPurity) return found;

  auto rate = [&](double t) { return purity_rate(params, evolve(params, initial, t)); };

  auto refine = [&](double a, double b, ExtremumKind kind) {
    std::uintmax_t iterations = 200;
    const auto [left, right] = boost::math::tools::toms748_solve(
        rate, a, b, boost::math::tools::eps_tolerance<double>(), iterations);
    const double t = 0.5 * (left + right);
    const auto report = entanglement_report(evolve(params, initial, t));
    found.push_back({kind, t, report.purity, report.entropy});
  };

  // Product states are stationary at t = 0, so the first interval only
  // counts when the sampled rate there is clearly nonzero.
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    const double r0 = series[k].purity_rate;
    const double r1 = series[k + 1].purity_rate;
    if (k == 0 && std::abs(r0) < kStationaryRate) continue;
    if (r0 < 0.0 && r1 >= 0.0) {
      refine(series[k].t, series[k + 1].t, ExtremumKind::purity_min);
    } else if (r0 > 0.0 && r1 <= 0.0) {
      refine(series[k].t, series[k + 1].t, ExtremumKind::purity_max);
    }
  }
  return found;
}

DynamicsSummary summarize(std::span<const DynamicsSample> series,
                          std::span<const Extremum> extrema) {
  DynamicsSummary s;
  if (series.empty()) return s;
  s.purity_min = series.front().purity;
  s.entropy_max = series.front().entropy;
  s.entropy_min = series.front().entropy;
  for (const auto& p : series) {
    s.purity_min = std::min(s.purity_min, p.purity);
    s.entropy_max = std::max(s.entropy_max, p.entropy);
    s.entropy_min = std::min(s.entropy_min, p.entropy);
  }
  bool first = true;
  for (const auto& e : extrema) {
    s.purity_min = std::min(s.purity_min, e.purity);
    s.entropy_max = std::max(s.entropy_max, e.entropy);
    s.entropy_min = std::min(s.entropy_min, e.entropy);
    if (first && e.kind == ExtremumKind::purity_min) {
      s.t_first_min = e.t;
      first = false;
    }
  }
  return s;
}

}  // namespace spinrotor
