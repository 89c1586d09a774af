// Spin-1/2 coupled to a planar quantum rotor: model parameters and the
// closed forms that hold inside one conserved angular-momentum sector.
//
//   H = L_z^2 / (2I) + Delta S_x + g L_z S_z,   S = sigma / 2,   hbar = 1
//
// Because [L_z, H] = 0, every rotor eigenstate |m> carries its own two-level
// problem h_m = Delta S_x + g m S_z on top of the kinetic offset m^2 / (2I).
#pragma once

#include <array>
#include <complex>
#include <compare>

namespace spinrotor {

using cplx = std::complex<double>;

struct ModelParams {
  double inertia = 1.0;   // I
  double delta = 2.0;     // transverse splitting, >= 0
  double coupling = 0.5;  // spin-rotation coupling g
  double norm_tol = 1e-12;

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

// Rotor angular-momentum quantum number.
struct SectorIndex {
  int m = 0;

  constexpr SectorIndex() = default;
  constexpr explicit SectorIndex(int value) : m(value) {}

  constexpr SectorIndex operator-() const { return SectorIndex{-m}; }
  friend constexpr auto operator<=>(SectorIndex, SectorIndex) = default;
};

struct Spinor {
  cplx up{1.0, 0.0};
  cplx down{0.0, 0.0};

  static constexpr Spinor spin_up() { return {cplx{1.0, 0.0}, cplx{0.0, 0.0}}; }
  static constexpr Spinor spin_down() { return {cplx{0.0, 0.0}, cplx{1.0, 0.0}}; }

  double norm_sq() const { return std::norm(up) + std::norm(down); }
};

// <a|b>
inline cplx inner(const Spinor& a, const Spinor& b) {
  return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> e{};

  static Mat2 identity() { return {{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}}}; }

  cplx& operator()(int r, int c) { return e[2 * r + c]; }
  const cplx& operator()(int r, int c) const { return e[2 * r + c]; }

  cplx trace() const { return e[0] + e[3]; }
  Mat2 adjoint() const {
    return {{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}};
  }
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, const Mat2& a);
Spinor operator*(const Mat2& a, const Spinor& v);

// Entrywise max modulus.
double max_abs(const Mat2& a);

// Ascending eigenvalues of a Hermitian 2x2 matrix via trace/discriminant.
std::array<double, 2> hermitian_eigenvalues(const Mat2& h);

struct SectorSpectrum {
  SectorIndex m;
  double eps_minus = 0.0;
  double eps_plus = 0.0;
  double omega = 0.0;  // precession frequency, eps_plus - eps_minus
  double theta = 0.0;  // tilt of the effective field from z, in [0, pi]
  double lambda = 0.0; // g m
};

SectorSpectrum sector_spectrum(const ModelParams& params, SectorIndex m);

// B_eff = Delta x + g m z.
std::array<double, 3> effective_field(const ModelParams& params, SectorIndex m);

// Spin part of the sector Hamiltonian, Delta S_x + g m S_z.
Mat2 sector_generator(const ModelParams& params, SectorIndex m);

// exp(-i (Delta S_x + g m S_z) t). The rotor kinetic phase is not included.
Mat2 sector_propagator(const ModelParams& params, SectorIndex m, double t);

// Direction cosines (a, b) = (Delta, g m) / Omega of the propagator axis.
// Both are zero at the degenerate point Omega = 0.
struct PropagatorAxis {
  double a = 0.0;
  double b = 0.0;
  double omega = 0.0;
};
PropagatorAxis propagator_axis(const ModelParams& params, SectorIndex m);

// Rotor angular momentum frozen to the c-number m0.
struct ClassicalHamiltonian {
  Mat2 matrix;        // Delta S_x + g m0 S_z
  double offset = 0;  // m0^2 / (2I)

  std::array<double, 2> energies() const;
};

ClassicalHamiltonian classical_hamiltonian(const ModelParams& params, SectorIndex m0);

}  // namespace spinrotor
