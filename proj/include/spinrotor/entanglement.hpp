// Multi-sector dynamics and the spin/rotor bipartition.
//
// A state sum_m c_m |m> (x) |sigma_m> evolves sector by sector: the amplitude
// picks up exp(-i m^2 t / 2I) and the spinor is rotated by the sector
// propagator. Rotor states are orthogonal, so both reduced density matrices
// follow from spinor inner products alone.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "spinrotor/model.hpp"

namespace spinrotor {

struct SectorEntry {
  SectorIndex m;
  cplx amplitude{1.0, 0.0};
  Spinor spinor;
};

class SuperposedState {
 public:
  // Entries are stored sorted by ascending m. Throws std::invalid_argument on
  // an empty list, repeated sectors, or norm outside norm_tol of one.
  explicit SuperposedState(std::vector<SectorEntry> entries, double time = 0.0,
                           double norm_tol = 1e-12);

  // (|m> + |-m>) / sqrt(2) (x) |spin>, m != 0.
  static SuperposedState two_sector(int m, Spinor spin = Spinor::spin_up());
  static SuperposedState single_sector(int m, Spinor spin = Spinor::spin_up());

  std::span<const SectorEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double time() const { return time_; }
  double norm_sq() const;

  // A +-m pair with both branches exactly |up>: the closed-form overlap applies.
  bool is_opposite_pair_spin_up() const;

 private:
  std::vector<SectorEntry> entries_;
  double time_ = 0.0;
};

struct BranchOverlap {
  cplx value{1.0, 0.0};
  double magnitude = 1.0;
};

struct QubitDensity {
  Mat2 rho;

  double purity() const;
  // Ascending.
  std::array<double, 2> eigenvalues() const;
  std::array<double, 3> bloch_vector() const;
};

struct RotorDensity {
  std::vector<SectorIndex> basis;
  std::vector<cplx> matrix;  // row-major, basis.size() squared

  std::size_t size() const { return basis.size(); }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return matrix[r * basis.size() + c];
  }
  cplx trace() const;
};

struct EntanglementReport {
  double time = 0.0;
  std::optional<BranchOverlap> overlap;  // present for two-sector states
  double purity = 1.0;
  std::array<double, 2> schmidt{1.0, 0.0};  // descending
  double entropy = 0.0;
};

// Propagates `initial` forward by t. Throws std::invalid_argument when the
// input norm is off by more than params.norm_tol.
SuperposedState evolve(const ModelParams& params, const SuperposedState& initial, double t);

// <sigma_+(t)|sigma_-(t)> for the +m and -m branches started in |up>.
BranchOverlap branch_overlap(const ModelParams& params, SectorIndex m, double t);

// <sigma_hi|sigma_lo> of the two branches of a two-sector state, with hi the
// larger m. Empty for any other sector count.
std::optional<BranchOverlap> numerical_overlap(const SuperposedState& state);

QubitDensity reduced_spin(const SuperposedState& state);
RotorDensity reduced_rotor(const SuperposedState& state);

EntanglementReport entanglement_report(const SuperposedState& state);

// -sum p ln p with 0 ln 0 = 0; weights under 1e-14 count as zero.
double entropy_of(std::span<const double> weights);

// d/dt Tr[rho_spin^2] at the state's time.
double purity_rate(const ModelParams& params, const SuperposedState& state);

double expected_lz(const SuperposedState& state);
double expected_energy(const ModelParams& params, const SuperposedState& state);

struct PurityMinimum {
  double t_min = 0.0;
  double purity_min = 1.0;
};

// First minimum of the spin purity for the equal +-m superposition started
// in |up>: t = pi / Omega, P = 1 - 2 Delta^2 lambda^2 / Omega^4. Without
// oscillation (Omega = 0 or g m = 0) the purity stays at one and (0, 1) is
// returned.
PurityMinimum min_purity_over_period(const ModelParams& params, SectorIndex m);

}  // namespace spinrotor
