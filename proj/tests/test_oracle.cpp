#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "spinrotor/kernels.hpp"
#include "spinrotor/oracle.hpp"
#include "spinrotor/scenarios.hpp"

using namespace spinrotor;
using namespace spinrotor::oracle;

namespace {

const ModelParams kFig1{1.0, 2.0, 0.5};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Vector product_state(const TruncatedSpace& space, int m, int spin) {
  Vector v = Vector::Zero(space.dimension());
  v(space.index(m, spin)) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("truncated space basis ordering") {
  const TruncatedSpace space(2);
  CHECK(space.dimension() == 10);
  CHECK(space.index(-2, 0) == 0);
  CHECK(space.index(-2, 1) == 1);
  CHECK(space.index(0, 0) == 4);
  CHECK(space.index(2, 1) == 9);
  CHECK_THROWS_AS(space.index(3, 0), std::out_of_range);
  CHECK_THROWS_AS(TruncatedSpace(-1), std::invalid_argument);
}

TEST_CASE("build hamiltonian") {
  SUBCASE("m_max = 0 is sigma_x") {
    const auto h = build_hamiltonian(kFig1, TruncatedSpace(0));
    Matrix sx(2, 2);
    sx << 0, 1, 1, 0;
    CHECK(max_abs(h.matrix - sx) == 0.0);
    const auto ev = block_eigenvalues(h, 0);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("balanced block") {
    const auto h = build_hamiltonian(kFig1, TruncatedSpace(4));
    const auto ev = block_eigenvalues(h, 4);
    CHECK(std::abs(ev[0] - (8.0 - std::sqrt(2.0))) < 1e-13);
    CHECK(std::abs(ev[1] - (8.0 + std::sqrt(2.0))) < 1e-13);
    CHECK(max_abs(h.matrix - h.matrix.adjoint()) < 1e-12);
    for (Eigen::Index i = 0; i < h.matrix.rows(); ++i) {
      for (Eigen::Index j = 0; j < h.matrix.cols(); ++j) {
        if (i / 2 != j / 2) CHECK(h.matrix(i, j) == cplx{});
      }
    }
  }
  SUBCASE("g = 0 gives identical shifted blocks") {
    const ModelParams p{1.0, 2.0, 0.0};
    const auto h = build_hamiltonian(p, TruncatedSpace(3));
    for (int m = -3; m <= 3; ++m) {
      const int i = h.space.index(m, 0);
      Matrix shifted = h.matrix.block(i, i, 2, 2);
      shifted -= (m * m / 2.0) * Matrix::Identity(2, 2);
      CHECK(max_abs(shifted - h.matrix.block(0, 0, 2, 2) +
                    (9.0 / 2.0) * Matrix::Identity(2, 2)) < 1e-15);
    }
  }
  SUBCASE("overflowing rotor energy is rejected") {
    const ModelParams tiny{1e-308, 2.0, 0.5};
    CHECK_THROWS_AS(build_hamiltonian(tiny, TruncatedSpace(1 << 20)), std::invalid_argument);
  }
}

TEST_CASE("oracle evolution") {
  const TruncatedSpace space(4);
  const auto h = build_hamiltonian(kFig1, space);
  const Evolver evolver(h);
  const Vector psi0 = embed(SuperposedState::two_sector(4), space);

  CHECK(chebyshev_distance(evolver.evolve(psi0, 0.0), psi0) < 1e-14);

  for (double t : {0.4, 1.1107207345, 5.0, 9.9}) {
    const Vector oracle = evolver.evolve(psi0, t);
    const Vector analytic = embed(evolve(kFig1, SuperposedState::two_sector(4), t), space);
    CHECK(chebyshev_distance(oracle, analytic) < 1e-10);
    CHECK(std::abs(oracle.squaredNorm() - 1.0) < 1e-12);
  }

  // An eigenvector only picks up a phase.
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix);
  const Vector eigvec = solver.eigenvectors().col(5);
  const Vector moved = evolver.evolve(eigvec, 3.3);
  CHECK(std::abs(std::abs(eigvec.dot(moved)) - 1.0) < 1e-12);
  CHECK(std::abs(eigvec.dot(moved) - std::exp(cplx{0, -1} * (solver.eigenvalues()(5) * 3.3))) < 1e-12);

  CHECK_THROWS_AS(evolver.evolve(2.0 * psi0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(evolver.evolve(Vector::Zero(4), 1.0), std::invalid_argument);
  CHECK(chebyshev_distance(oracle_evolve(h, psi0, 2.0), evolver.evolve(psi0, 2.0)) < 1e-13);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> time(-10, 10);
  for (int n = 0; n < 50; ++n) {
    const Matrix u = evolver.propagator(time(rng));
    CHECK(max_abs(u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())) < 1e-10);
  }
}

TEST_CASE("oracle partial traces") {
  const TruncatedSpace space(3);
  const Vector up3 = product_state(space, 3, 0);
  const Matrix spin = partial_trace(up3, space, Keep::spin);
  CHECK(std::abs(spin(0, 0) - cplx{1.0}) < 1e-15);
  CHECK(std::abs(spin(1, 1)) < 1e-15);
  const Matrix rotor = partial_trace(up3, space, Keep::rotor);
  CHECK(std::abs(rotor(6, 6) - cplx{1.0}) < 1e-15);
  CHECK(std::abs(rotor.trace() - cplx{1.0}) < 1e-15);

  const TruncatedSpace four(4);
  const auto h = build_hamiltonian(kFig1, four);
  const Vector psi = oracle_evolve(h, embed(SuperposedState::two_sector(4), four),
                                   std::numbers::pi / (2 * std::sqrt(2.0)));
  const Matrix mixed = partial_trace(psi, four, Keep::spin);
  CHECK(max_abs(mixed - 0.5 * Matrix::Identity(2, 2)) < 1e-10);

  std::mt19937_64 rng(8);
  for (int n = 0; n < 100; ++n) {
    const auto state = random_state(rng(), 1 + static_cast<int>(rng() % 5), 4);
    const Vector v = embed(state, four);
    const auto s = density_spectrum(partial_trace(v, four, Keep::spin));
    const auto r = density_spectrum(partial_trace(v, four, Keep::rotor));
    CHECK(std::abs(s[0] - r[0]) < 1e-10);
    CHECK(std::abs(s[1] - r[1]) < 1e-10);
    for (std::size_t k = 2; k < r.size(); ++k) CHECK(std::abs(r[k]) < 1e-10);
  }

  CHECK_THROWS_AS(partial_trace(Vector::Zero(3), space, Keep::spin), std::invalid_argument);
}

TEST_CASE("verify against analytic") {
  const auto grid = TimeGrid(10.0, 2001).points();
  SUBCASE("balanced sector") {
    const auto r = verify_against_analytic(make_scenario("fig1b-m4", kFig1), grid);
    CHECK(r.max_deviation() < 1e-10);
    CHECK(r.purity < 1e-10);
  }
  SUBCASE("g = 0") {
    const auto r = verify_against_analytic(make_scenario("g-zero", kFig1), grid);
    CHECK(r.purity < 1e-14);
    CHECK(std::abs(r.min_purity_analytic - 1.0) < 1e-14);
    CHECK(std::abs(r.min_purity_oracle - 1.0) < 1e-14);
  }
  SUBCASE("large eta sector") {
    // 2001 points land ~1.6e-5 above the minimum for Omega = sqrt(20); 20001 resolve it.
    const auto fine = TimeGrid(10.0, 20001).points();
    const auto r = verify_against_analytic(make_scenario("fig1b-m8", kFig1), fine);
    CHECK(r.max_deviation() < 1e-10);
    CHECK(std::abs(r.min_purity_analytic - 0.68) < 1e-6);
    CHECK(std::abs(r.min_purity_oracle - 0.68) < 1e-6);
  }
  SUBCASE("serial and parallel reports agree exactly") {
    const auto sc = make_scenario("random-multisector", kFig1);
    const auto a = verify_against_analytic(sc, grid, Execution::serial);
    const auto b = verify_against_analytic(sc, grid, Execution::parallel);
    CHECK(a.max_deviation() == b.max_deviation());
    CHECK(a.min_purity_oracle == b.min_purity_oracle);
    CHECK(a.schmidt == b.schmidt);
  }
  SUBCASE("unknown scenario") {
    CHECK_THROWS_AS(make_scenario("fig9", kFig1), std::invalid_argument);
  }
}

TEST_CASE("oracle conservation along a trajectory") {
  const auto state = random_state(42, 5, 6);
  const TruncatedSpace space(6);
  const auto h = build_hamiltonian(kFig1, space);
  const Evolver evolver(h);
  const Vector psi0 = embed(state, space);
  const double e0 = expectation(h.matrix, psi0);
  for (double t = 0.0; t <= 10.0; t += 0.37) {
    const Vector psi = evolver.evolve(psi0, t);
    CHECK(std::abs(expectation(h.matrix, psi) - e0) < 1e-10);
    for (int m = -6; m <= 6; ++m) {
      const double w0 = std::norm(psi0(space.index(m, 0))) + std::norm(psi0(space.index(m, 1)));
      const double w = std::norm(psi(space.index(m, 0))) + std::norm(psi(space.index(m, 1)));
      CHECK(std::abs(w - w0) < 1e-12);
    }
  }
}
