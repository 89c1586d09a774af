#include "spinrotor/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinrotor {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

void ModelParams::validate() const {
  if (!(std::isfinite(inertia) && inertia > 0.0)) {
    throw std::invalid_argument("inertia must be positive and finite, got " +
                                std::to_string(inertia));
  }
  if (!(std::isfinite(delta) && delta >= 0.0)) {
    throw std::invalid_argument("delta must be non-negative and finite, got " +
                                std::to_string(delta));
  }
  if (!std::isfinite(coupling)) {
    throw std::invalid_argument("coupling must be finite");
  }
  if (!(norm_tol > 0.0)) {
    throw std::invalid_argument("norm_tol must be positive");
  }
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    }
  }
  return r;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
  return r;
}

Mat2 operator*(cplx s, const Mat2& a) {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
  return r;
}

Spinor operator*(const Mat2& a, const Spinor& v) {
  return {a(0, 0) * v.up + a(0, 1) * v.down, a(1, 0) * v.up + a(1, 1) * v.down};
}

double max_abs(const Mat2& a) {
  double r = 0.0;
  for (const auto& x : a.e) r = std::max(r, std::abs(x));
  return r;
}

std::array<double, 2> hermitian_eigenvalues(const Mat2& h) {
  const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double half_gap = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double radius = std::hypot(half_gap, std::abs(h(0, 1)));
  return {mean - radius, mean + radius};
}

SectorSpectrum sector_spectrum(const ModelParams& params, SectorIndex m) {
  const double mm = static_cast<double>(m.m);
  const double lambda = params.coupling * mm;
  const double omega = std::sqrt(params.delta * params.delta + lambda * lambda);
  const double kinetic = mm * mm / (2.0 * params.inertia);

  SectorSpectrum s;
  s.m = m;
  s.lambda = lambda;
  s.omega = omega;
  s.eps_minus = kinetic - 0.5 * omega;
  s.eps_plus = kinetic + 0.5 * omega;
  // atan2 keeps theta in [0, pi] and finite at m = 0.
  s.theta = std::atan2(params.delta, lambda);
  return s;
}

std::array<double, 3> effective_field(const ModelParams& params, SectorIndex m) {
  return {params.delta, 0.0, params.coupling * static_cast<double>(m.m)};
}

Mat2 sector_generator(const ModelParams& params, SectorIndex m) {
  const double half_delta = 0.5 * params.delta;
  const double half_lambda = 0.5 * params.coupling * static_cast<double>(m.m);
  return {{cplx{half_lambda}, cplx{half_delta}, cplx{half_delta}, cplx{-half_lambda}}};
}

PropagatorAxis propagator_axis(const ModelParams& params, SectorIndex m) {
  const double lambda = params.coupling * static_cast<double>(m.m);
  const double omega = std::sqrt(params.delta * params.delta + lambda * lambda);
  if (omega == 0.0) return {};
  return {params.delta / omega, lambda / omega, omega};
}

Mat2 sector_propagator(const ModelParams& params, SectorIndex m, double t) {
  const auto axis = propagator_axis(params, m);
  if (axis.omega == 0.0) return Mat2::identity();

  const double c = std::cos(0.5 * axis.omega * t);
  const double s = std::sin(0.5 * axis.omega * t);
  // c 1 - i s (a sigma_x + b sigma_z)
  const cplx off = -kI * (s * axis.a);
  return {{cplx{c, -s * axis.b}, off, off, cplx{c, s * axis.b}}};
}

std::array<double, 2> ClassicalHamiltonian::energies() const {
  auto e = hermitian_eigenvalues(matrix);
  return {e[0] + offset, e[1] + offset};
}

ClassicalHamiltonian classical_hamiltonian(const ModelParams& params, SectorIndex m0) {
  const double mm = static_cast<double>(m0.m);
  return {sector_generator(params, m0), mm * mm / (2.0 * params.inertia)};
}

}  // namespace spinrotor
