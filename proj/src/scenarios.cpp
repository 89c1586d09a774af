#include "spinrotor/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace spinrotor {

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"fig1b-m2",      "fig1b-m4",     "fig1b-m8",
                                              "g-zero",        "single-sector", "random-multisector"};
  return names;
}

SuperposedState random_state(std::uint64_t seed, int sectors, int m_range) {
  if (sectors < 1 || sectors > 2 * m_range + 1) {
    throw std::invalid_argument("cannot place " + std::to_string(sectors) +
                                " distinct sectors in |m| <= " + std::to_string(m_range));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  std::vector<int> ms(2 * m_range + 1);
  std::iota(ms.begin(), ms.end(), -m_range);
  std::shuffle(ms.begin(), ms.end(), rng);
  ms.resize(sectors);

  std::vector<SectorEntry> entries;
  double total = 0.0;
  for (int m : ms) {
    Spinor s{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
    const double n = std::sqrt(s.norm_sq());
    s.up /= n;
    s.down /= n;
    const cplx c{gauss(rng), gauss(rng)};
    total += std::norm(c);
    entries.push_back({SectorIndex{m}, c, s});
  }
  for (auto& e : entries) e.amplitude /= std::sqrt(total);
  return SuperposedState(std::move(entries));
}

oracle::Scenario make_scenario(std::string_view name, const ModelParams& base,
                               const ScenarioOptions& options) {
  if (name == "fig1b-m2") return {std::string(name), base, SuperposedState::two_sector(2), true};
  if (name == "fig1b-m4") return {std::string(name), base, SuperposedState::two_sector(4), true};
  if (name == "fig1b-m8") return {std::string(name), base, SuperposedState::two_sector(8), true};
  if (name == "g-zero") {
    ModelParams p = base;
    p.coupling = 0.0;
    return {std::string(name), p, SuperposedState::two_sector(4), true};
  }
  if (name == "single-sector") {
    return {std::string(name), base, SuperposedState::single_sector(3), false};
  }
  if (name == "random-multisector") {
    return {std::string(name), base, random_state(options.seed, options.sectors, options.m_range),
            false};
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

}  // namespace spinrotor
