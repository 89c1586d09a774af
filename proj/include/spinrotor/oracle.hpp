// Brute-force reference: the full Hamiltonian on a truncated rotor (x) spin
// product space, evolved by dense Hermitian eigendecomposition.
//
// Nothing here calls into the closed forms of model.hpp or entanglement.hpp;
// only verify_against_analytic touches both sides, to compare them.
//
// Basis ordering is fixed: index(m, s) = 2 (m + m_max) + s with s = 0 for up
// and s = 1 for down, m ascending from -m_max. H never couples different m,
// so truncating at the largest |m| in a state's support is exact.
#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "spinrotor/entanglement.hpp"
#include "spinrotor/execution.hpp"
#include "spinrotor/model.hpp"

namespace spinrotor::oracle {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

class TruncatedSpace {
 public:
  explicit TruncatedSpace(int m_max);

  int m_max() const { return m_max_; }
  int rotor_dimension() const { return 2 * m_max_ + 1; }
  int dimension() const { return 2 * rotor_dimension(); }
  // spin: 0 = up, 1 = down
  int index(int m, int spin) const;
  bool contains(int m) const { return m >= -m_max_ && m <= m_max_; }

 private:
  int m_max_;
};

struct DenseOperator {
  TruncatedSpace space;
  Matrix matrix;
};

// L_z^2/(2I) (x) 1 + 1 (x) Delta S_x + g L_z (x) S_z, assembled from Kronecker
// products. Throws std::invalid_argument if the rotor energy overflows.
DenseOperator build_hamiltonian(const ModelParams& params, TruncatedSpace space);

// Eigenvalues of the 2x2 diagonal block of sector m, ascending.
std::vector<double> block_eigenvalues(const DenseOperator& h, int m);

// Diagonalizes H once; evolve() is then exact for any t.
class Evolver {
 public:
  explicit Evolver(const DenseOperator& h);

  const TruncatedSpace& space() const { return space_; }
  const Eigen::VectorXd& energies() const { return energies_; }

  // Throws std::invalid_argument for a non-normalized or mis-sized input.
  Vector evolve(const Vector& psi0, double t) const;
  Matrix propagator(double t) const;

 private:
  TruncatedSpace space_;
  Eigen::VectorXd energies_;
  Matrix vectors_;
};

Vector oracle_evolve(const DenseOperator& h, const Vector& initial, double t);

enum class Keep { spin, rotor };

// Index-summed partial trace. Throws std::invalid_argument on dimension mismatch.
Matrix partial_trace(const Vector& state, const TruncatedSpace& space, Keep keep);

// Descending eigenvalues of a Hermitian density matrix.
std::vector<double> density_spectrum(const Matrix& rho);

double purity(const Matrix& rho);
double entropy(const Matrix& rho);

double expectation(const Matrix& op, const Vector& psi);

// Places the analytic state into the truncated product basis.
Vector embed(const SuperposedState& state, const TruncatedSpace& space);

// Entrywise max modulus of a - b.
double chebyshev_distance(const Vector& a, const Vector& b);

struct Scenario {
  std::string name;
  ModelParams params;
  SuperposedState initial;
  // Equal +-m superposition from |up>: the closed-form overlap is compared.
  bool opposite_pair = false;
};

struct VerificationReport {
  std::string scenario;
  std::size_t grid_points = 0;
  double state = 0.0;         // per-amplitude deviation
  double overlap = 0.0;       // K(t), two-sector scenarios only
  double purity = 0.0;
  double entropy = 0.0;
  double spectrum = 0.0;      // sector energies vs oracle block eigenvalues
  double schmidt = 0.0;       // spin vs rotor reduction spectra, and vs analytic
  double conservation = 0.0;  // drift of <H>, <L_z> and block weights
  double min_purity_analytic = 1.0;
  double min_purity_oracle = 1.0;

  double max_deviation() const;
  bool passed(double threshold) const { return max_deviation() < threshold; }
};

VerificationReport verify_against_analytic(const Scenario& scenario,
                                           std::span<const double> t_grid,
                                           Execution exec = Execution::parallel);

}  // namespace spinrotor::oracle
