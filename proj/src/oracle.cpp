#include "spinrotor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace spinrotor::oracle {

namespace {

constexpr cplx kI{0.0, 1.0};

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return r;
}

Matrix rotor_lz(const TruncatedSpace& space) {
  const int n = space.rotor_dimension();
  Matrix lz = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) lz(k, k) = static_cast<double>(k - space.m_max());
  return lz;
}

Matrix pauli_x() {
  Matrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

Matrix pauli_z() {
  Matrix s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_normalized(const Vector& psi, const TruncatedSpace& space) {
  if (psi.size() != space.dimension()) {
    throw std::invalid_argument("state has dimension " + std::to_string(psi.size()) +
                                ", space has " + std::to_string(space.dimension()));
  }
  const double n = psi.squaredNorm();
  if (!(std::abs(n - 1.0) <= 1e-10)) {
    throw std::invalid_argument("oracle input is not normalized: |psi|^2 = " +
                                std::to_string(n));
  }
}

}  // namespace

TruncatedSpace::TruncatedSpace(int m_max) : m_max_(m_max) {
  if (m_max < 0) throw std::invalid_argument("m_max must be non-negative");
  // 2 (2 m_max + 1) has to fit an int index.
  if (m_max > (1 << 28)) throw std::invalid_argument("m_max too large");
}

int TruncatedSpace::index(int m, int spin) const {
  if (!contains(m)) {
    throw std::out_of_range("sector m = " + std::to_string(m) + " outside |m| <= " +
                            std::to_string(m_max_));
  }
  return 2 * (m + m_max_) + spin;
}

DenseOperator build_hamiltonian(const ModelParams& params, TruncatedSpace space) {
  params.validate();
  const double mm = static_cast<double>(space.m_max());
  if (!std::isfinite(mm * mm / (2.0 * params.inertia))) {
    throw std::invalid_argument("rotor energy m_max^2 / 2I overflows for m_max = " +
                                std::to_string(space.m_max()));
  }

  const Matrix lz = rotor_lz(space);
  const Matrix rotor_id = Matrix::Identity(space.rotor_dimension(), space.rotor_dimension());
  const Matrix spin_id = Matrix::Identity(2, 2);
  const Matrix sx = 0.5 * pauli_x();
  const Matrix sz = 0.5 * pauli_z();

  Matrix h = kron(lz * lz / (2.0 * params.inertia), spin_id) +
             kron(rotor_id, params.delta * sx) + params.coupling * kron(lz, sz);

  if (max_abs(h - h.adjoint()) > 1e-12) throw std::logic_error("Hamiltonian is not Hermitian");
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (i / 2 != j / 2 && h(i, j) != cplx{}) {
        throw std::logic_error("Hamiltonian couples different rotor sectors");
      }
    }
  }
  return {space, std::move(h)};
}

std::vector<double> block_eigenvalues(const DenseOperator& h, int m) {
  const int i = h.space.index(m, 0);
  const Matrix block = h.matrix.block(i, i, 2, 2);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(block, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(1)};
}

Evolver::Evolver(const DenseOperator& h) : space_(h.space) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition of the Hamiltonian failed");
  }
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Vector Evolver::evolve(const Vector& psi0, double t) const {
  require_normalized(psi0, space_);
  Vector coeff = vectors_.adjoint() * psi0;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    coeff(k) *= std::exp(-kI * (energies_(k) * t));
  }
  return vectors_ * coeff;
}

Matrix Evolver::propagator(double t) const {
  Vector phases(energies_.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(-kI * (energies_(k) * t));
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Vector oracle_evolve(const DenseOperator& h, const Vector& initial, double t) {
  return Evolver(h).evolve(initial, t);
}

Matrix partial_trace(const Vector& state, const TruncatedSpace& space, Keep keep) {
  if (state.size() != space.dimension()) {
    throw std::invalid_argument("state has dimension " + std::to_string(state.size()) +
                                ", space has " + std::to_string(space.dimension()));
  }
  const int nr = space.rotor_dimension();
  if (keep == Keep::spin) {
    Matrix rho = Matrix::Zero(2, 2);
    for (int r = 0; r < nr; ++r) {
      for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
          rho(s, sp) += state(2 * r + s) * std::conj(state(2 * r + sp));
        }
      }
    }
    return rho;
  }
  Matrix rho = Matrix::Zero(nr, nr);
  for (int r = 0; r < nr; ++r) {
    for (int rp = 0; rp < nr; ++rp) {
      for (int s = 0; s < 2; ++s) {
        rho(r, rp) += state(2 * r + s) * std::conj(state(2 * rp + s));
      }
    }
  }
  return rho;
}

std::vector<double> density_spectrum(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

double entropy(const Matrix& rho) {
  double s = 0.0;
  for (double p : density_spectrum(rho)) {
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

double expectation(const Matrix& op, const Vector& psi) { return psi.dot(op * psi).real(); }

Vector embed(const SuperposedState& state, const TruncatedSpace& space) {
  Vector psi = Vector::Zero(space.dimension());
  for (const auto& e : state.entries()) {
    psi(space.index(e.m.m, 0)) = e.amplitude * e.spinor.up;
    psi(space.index(e.m.m, 1)) = e.amplitude * e.spinor.down;
  }
  return psi;
}

double chebyshev_distance(const Vector& a, const Vector& b) { return max_abs(a - b); }

double VerificationReport::max_deviation() const {
  return std::max({state, overlap, purity, entropy, spectrum, schmidt, conservation});
}

namespace {

struct PointDeviation {
  double state = 0.0;
  double overlap = 0.0;
  double purity = 0.0;
  double entropy = 0.0;
  double schmidt = 0.0;
  double conservation = 0.0;
  double purity_analytic = 1.0;
  double purity_oracle = 1.0;
};

struct Fixture {
  const Scenario& scenario;
  Evolver evolver;
  Vector psi0;
  Matrix hamiltonian;
  Matrix lz;
  double energy0;
  double lz0;
  std::vector<double> block_weights0;
  int pair_lo = 0;  // rotor-basis rows of the -m and +m branches
  int pair_hi = 0;
};

std::vector<double> block_weights(const Vector& psi, const TruncatedSpace& space) {
  std::vector<double> w(space.rotor_dimension());
  for (int r = 0; r < space.rotor_dimension(); ++r) {
    w[r] = std::norm(psi(2 * r)) + std::norm(psi(2 * r + 1));
  }
  return w;
}

PointDeviation deviation_at(const Fixture& f, double t) {
  const auto& sc = f.scenario;
  const auto& space = f.evolver.space();
  PointDeviation d;

  const SuperposedState analytic = evolve(sc.params, sc.initial, t);
  const Vector psi = f.evolver.evolve(f.psi0, t);
  d.state = chebyshev_distance(embed(analytic, space), psi);

  const EntanglementReport report = entanglement_report(analytic);
  const Matrix rho_spin = partial_trace(psi, space, Keep::spin);
  const Matrix rho_rotor = partial_trace(psi, space, Keep::rotor);

  d.purity_analytic = report.purity;
  d.purity_oracle = purity(rho_spin);
  d.purity = std::abs(report.purity - d.purity_oracle);
  d.entropy = std::abs(report.entropy - entropy(rho_spin));

  const auto spin_ev = density_spectrum(rho_spin);
  const auto rotor_ev = density_spectrum(rho_rotor);
  for (std::size_t k = 0; k < rotor_ev.size(); ++k) {
    const double partner = k < spin_ev.size() ? spin_ev[k] : 0.0;
    d.schmidt = std::max(d.schmidt, std::abs(rotor_ev[k] - partner));
  }
  if (rotor_ev.size() < spin_ev.size()) {
    d.schmidt = std::max(d.schmidt, std::abs(spin_ev[1]));
  }
  d.schmidt = std::max({d.schmidt, std::abs(report.schmidt[0] - spin_ev[0]),
                        std::abs(report.schmidt[1] - spin_ev[1])});

  if (sc.opposite_pair) {
    const int m = sc.initial.entries().back().m.m;
    const BranchOverlap closed = branch_overlap(sc.params, SectorIndex{m}, t);
    const cplx coherence = rho_rotor(f.pair_lo, f.pair_hi);
    const double norm =
        std::sqrt(rho_rotor(f.pair_lo, f.pair_lo).real() * rho_rotor(f.pair_hi, f.pair_hi).real());
    const cplx k_oracle = coherence / norm;
    d.overlap = std::max(std::abs(closed.value - k_oracle),
                         std::abs(closed.magnitude - std::abs(k_oracle)));
  }

  const auto weights = block_weights(psi, space);
  double drift = std::max({std::abs(expectation(f.hamiltonian, psi) - f.energy0),
                           std::abs(expectation(f.lz, psi) - f.lz0),
                           std::abs(expected_energy(sc.params, analytic) - f.energy0),
                           std::abs(expected_lz(analytic) - f.lz0)});
  for (std::size_t r = 0; r < weights.size(); ++r) {
    drift = std::max(drift, std::abs(weights[r] - f.block_weights0[r]));
  }
  d.conservation = drift;
  return d;
}

}  // namespace

VerificationReport verify_against_analytic(const Scenario& scenario,
                                           std::span<const double> t_grid, Execution exec) {
  int m_max = 0;
  for (const auto& e : scenario.initial.entries()) m_max = std::max(m_max, std::abs(e.m.m));
  const TruncatedSpace space(m_max);
  const DenseOperator h = build_hamiltonian(scenario.params, space);

  VerificationReport report;
  report.scenario = scenario.name;
  report.grid_points = t_grid.size();

  for (const auto& e : scenario.initial.entries()) {
    const auto closed = sector_spectrum(scenario.params, e.m);
    const auto brute = block_eigenvalues(h, e.m.m);
    report.spectrum = std::max({report.spectrum, std::abs(closed.eps_minus - brute[0]),
                                std::abs(closed.eps_plus - brute[1])});
  }

  const Matrix lz = kron(rotor_lz(space), Matrix::Identity(2, 2));
  Vector psi0 = embed(scenario.initial, space);
  Fixture f{scenario,
            Evolver(h),
            psi0,
            h.matrix,
            lz,
            expectation(h.matrix, psi0),
            expectation(lz, psi0),
            block_weights(psi0, space)};
  if (scenario.opposite_pair) {
    const int m = scenario.initial.entries().back().m.m;
    f.pair_lo = -m + m_max;
    f.pair_hi = m + m_max;
  }

  std::vector<PointDeviation> points(t_grid.size());
  const auto n = static_cast<std::ptrdiff_t>(t_grid.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) points[k] = deviation_at(f, t_grid[k]);
  } else {
    for (std::ptrdiff_t k = 0; k < n; ++k) points[k] = deviation_at(f, t_grid[k]);
  }

  for (const auto& p : points) {
    report.state = std::max(report.state, p.state);
    report.overlap = std::max(report.overlap, p.overlap);
    report.purity = std::max(report.purity, p.purity);
    report.entropy = std::max(report.entropy, p.entropy);
    report.schmidt = std::max(report.schmidt, p.schmidt);
    report.conservation = std::max(report.conservation, p.conservation);
    report.min_purity_analytic = std::min(report.min_purity_analytic, p.purity_analytic);
    report.min_purity_oracle = std::min(report.min_purity_oracle, p.purity_oracle);
  }
  return report;
}

}  // namespace spinrotor::oracle
