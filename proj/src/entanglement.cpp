#include "spinrotor/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinrotor {

namespace {

constexpr cplx kI{0.0, 1.0};

// Two-sector identities below must hold to this level or the report throws.
constexpr double kSelfCheckTol = 1e-10;

double weight(const SectorEntry& e) { return std::norm(e.amplitude) * e.spinor.norm_sq(); }

Mat2 projector(const Spinor& v) {
  return {{v.up * std::conj(v.up), v.up * std::conj(v.down), v.down * std::conj(v.up),
           v.down * std::conj(v.down)}};
}

void require_normalized(const SuperposedState& state, double tol) {
  const double n = state.norm_sq();
  if (!(std::abs(n - 1.0) <= tol)) {
    throw std::invalid_argument("state is not normalized: |psi|^2 = " + std::to_string(n));
  }
}

}  // namespace

SuperposedState::SuperposedState(std::vector<SectorEntry> entries, double time, double norm_tol)
    : entries_(std::move(entries)), time_(time) {
  if (entries_.empty()) throw std::invalid_argument("state needs at least one sector");
  std::sort(entries_.begin(), entries_.end(),
            [](const SectorEntry& a, const SectorEntry& b) { return a.m < b.m; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].m == entries_[i - 1].m) {
      throw std::invalid_argument("sector m = " + std::to_string(entries_[i].m.m) +
                                  " listed more than once");
    }
  }
  const double n = norm_sq();
  if (!(std::abs(n - 1.0) <= norm_tol)) {
    throw std::invalid_argument("state is not normalized: |psi|^2 = " + std::to_string(n));
  }
}

SuperposedState SuperposedState::two_sector(int m, Spinor spin) {
  if (m == 0) throw std::invalid_argument("two-sector state needs m != 0");
  const cplx c{1.0 / std::numbers::sqrt2, 0.0};
  return SuperposedState({{SectorIndex{m}, c, spin}, {SectorIndex{-m}, c, spin}});
}

SuperposedState SuperposedState::single_sector(int m, Spinor spin) {
  return SuperposedState({{SectorIndex{m}, cplx{1.0, 0.0}, spin}});
}

double SuperposedState::norm_sq() const {
  double n = 0.0;
  for (const auto& e : entries_) n += weight(e);
  return n;
}

bool SuperposedState::is_opposite_pair_spin_up() const {
  if (entries_.size() != 2) return false;
  const auto& lo = entries_[0];
  const auto& hi = entries_[1];
  const auto up = Spinor::spin_up();
  return lo.m == -hi.m && hi.m.m > 0 && lo.spinor.up == up.up && lo.spinor.down == up.down &&
         hi.spinor.up == up.up && hi.spinor.down == up.down;
}

double QubitDensity::purity() const {
  double p = 0.0;
  for (const auto& x : rho.e) p += std::norm(x);
  return p;
}

std::array<double, 2> QubitDensity::eigenvalues() const { return hermitian_eigenvalues(rho); }

std::array<double, 3> QubitDensity::bloch_vector() const {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
          rho(0, 0).real() - rho(1, 1).real()};
}

cplx RotorDensity::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < size(); ++i) t += (*this)(i, i);
  return t;
}

SuperposedState evolve(const ModelParams& params, const SuperposedState& initial, double t) {
  params.validate();
  require_normalized(initial, params.norm_tol);

  std::vector<SectorEntry> out;
  out.reserve(initial.size());
  for (const auto& e : initial.entries()) {
    const double mm = static_cast<double>(e.m.m);
    const cplx kinetic = std::polar(1.0, -mm * mm * t / (2.0 * params.inertia));
    out.push_back({e.m, e.amplitude * kinetic, sector_propagator(params, e.m, t) * e.spinor});
  }
  return SuperposedState(std::move(out), initial.time() + t, params.norm_tol);
}

BranchOverlap branch_overlap(const ModelParams& params, SectorIndex m, double t) {
  params.validate();
  const auto axis = propagator_axis(params, m);
  if (axis.omega == 0.0) return {};

  const double c = std::cos(0.5 * axis.omega * t);
  const double s = std::sin(0.5 * axis.omega * t);
  const double b = axis.b;

  BranchOverlap k;
  k.value = cplx{1.0 - 2.0 * b * b * s * s, 2.0 * b * c * s};
  // Same as sqrt(1 - 4 a^2 b^2 s^4) but without the cancellation near |K| = 0.
  k.magnitude = std::min(1.0, std::hypot(k.value.real(), k.value.imag()));
  return k;
}

std::optional<BranchOverlap> numerical_overlap(const SuperposedState& state) {
  if (state.size() != 2) return std::nullopt;
  const auto& lo = state.entries()[0].spinor;
  const auto& hi = state.entries()[1].spinor;
  const double norms = std::sqrt(lo.norm_sq() * hi.norm_sq());
  if (norms == 0.0) return std::nullopt;
  const cplx k = inner(hi, lo) / norms;
  return BranchOverlap{k, std::min(1.0, std::abs(k))};
}

QubitDensity reduced_spin(const SuperposedState& state) {
  QubitDensity d;
  for (const auto& e : state.entries()) {
    d.rho = d.rho + cplx{std::norm(e.amplitude)} * projector(e.spinor);
  }
  return d;
}

RotorDensity reduced_rotor(const SuperposedState& state) {
  const auto entries = state.entries();
  const std::size_t n = entries.size();
  RotorDensity d;
  d.basis.reserve(n);
  d.matrix.resize(n * n);
  for (const auto& e : entries) d.basis.push_back(e.m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d.matrix[i * n + j] = entries[i].amplitude * std::conj(entries[j].amplitude) *
                            inner(entries[j].spinor, entries[i].spinor);
    }
  }
  return d;
}

double entropy_of(std::span<const double> weights) {
  double s = 0.0;
  for (double p : weights) {
    if (p >= 1e-14) s -= p * std::log(p);
  }
  return s;
}

EntanglementReport entanglement_report(const SuperposedState& state) {
  EntanglementReport r;
  r.time = state.time();

  const auto rho = reduced_spin(state);
  r.purity = rho.purity();

  auto ev = rho.eigenvalues();
  for (auto& p : ev) p = std::clamp(p, 0.0, 1.0);
  const double sum = ev[0] + ev[1];
  if (std::abs(sum - 1.0) < 1e-10) {
    ev[0] /= sum;
    ev[1] /= sum;
  }
  r.schmidt = {ev[1], ev[0]};
  r.entropy = entropy_of(r.schmidt);

  r.overlap = numerical_overlap(state);
  if (r.overlap) {
    // Two branches with weights w1, w2: P = w1^2 + w2^2 + 2 w1 w2 |K|^2, which is
    // (1 + |K|^2) / 2 for the equal superposition.
    const double w1 = weight(state.entries()[0]);
    const double w2 = weight(state.entries()[1]);
    const double k2 = r.overlap->magnitude * r.overlap->magnitude;
    const double expected_purity = w1 * w1 + w2 * w2 + 2.0 * w1 * w2 * k2;
    // (p+ - p-)^2 = 1 - 4 w1 w2 (1 - |K|^2); squared to avoid a sqrt near p+ = p-.
    const double gap = r.schmidt[0] - r.schmidt[1];
    const double expected_gap_sq = 1.0 - 4.0 * w1 * w2 * (1.0 - k2);
    if (std::abs(r.purity - expected_purity) > kSelfCheckTol ||
        std::abs(gap * gap - expected_gap_sq) > kSelfCheckTol) {
      throw std::logic_error("reduced spin state disagrees with the branch overlap");
    }
  }
  return r;
}

double purity_rate(const ModelParams& params, const SuperposedState& state) {
  const auto rho = reduced_spin(state).rho;
  // d rho / dt = sum_m |c_m|^2 (-i) [h_m, |sigma_m><sigma_m|]
  Mat2 drho;
  for (const auto& e : state.entries()) {
    const Mat2 h = sector_generator(params, e.m);
    const Mat2 p = cplx{std::norm(e.amplitude)} * projector(e.spinor);
    drho = drho + (-kI) * (h * p - p * h);
  }
  return 2.0 * (rho * drho).trace().real();
}

double expected_lz(const SuperposedState& state) {
  double lz = 0.0;
  for (const auto& e : state.entries()) lz += weight(e) * static_cast<double>(e.m.m);
  return lz;
}

double expected_energy(const ModelParams& params, const SuperposedState& state) {
  double energy = 0.0;
  for (const auto& e : state.entries()) {
    const double mm = static_cast<double>(e.m.m);
    const Spinor hv = sector_generator(params, e.m) * e.spinor;
    energy += std::norm(e.amplitude) *
              (mm * mm / (2.0 * params.inertia) * e.spinor.norm_sq() + inner(e.spinor, hv).real());
  }
  return energy;
}

PurityMinimum min_purity_over_period(const ModelParams& params, SectorIndex m) {
  params.validate();
  const double d2 = params.delta * params.delta;
  const double lambda = params.coupling * static_cast<double>(m.m);
  const double l2 = lambda * lambda;
  const double o2 = d2 + l2;
  if (o2 == 0.0 || l2 == 0.0) return {};
  return {std::numbers::pi / std::sqrt(o2), 1.0 - 2.0 * d2 * l2 / (o2 * o2)};
}

}  // namespace spinrotor
