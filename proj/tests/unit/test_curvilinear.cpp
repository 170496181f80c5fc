#include <doctest.h>

#include <cmath>

#include "curvedpipe/cartesian_oracle.hpp"
#include "curvedpipe/validation.hpp"

using namespace curvedpipe;

namespace {

// Reference values below come from symbolic differentiation through the
// Cartesian embedding of the torus (sympy, 20 digits).

std::array<Jet2, 4> manufactured(const Jet2& r, const Jet2& t) {
  const Jet2 one_minus = 1.0 - r;
  return {r * r * sin(t) * one_minus, r * r * cos(t) * one_minus, 1.0 - r * r, r * cos(t)};
}

std::array<Jet2, 4> centrifugal(const Jet2& r, const Jet2&) {
  return {Jet2(0.0), Jet2(0.0), 1.0 - r * r, Jet2(0.0)};
}

std::array<Jet2, 4> rigid(const Jet2&, const Jet2&) {
  return {Jet2(0.0), Jet2(0.0), Jet2(1.0), Jet2(0.0)};
}

}  // namespace

TEST_CASE("zero sample") {
  VelocitySample s;
  s.at = {0.5, 1.0};
  const FlowParams prm(0.2, 2.0, 0.1, 4.0);
  CHECK(velocity_gradient(s, 0.2).norm() == 0.0);
  CHECK(force_divergence(s, prm).norm() == 0.0);
  CHECK(total_flux_tensor(s, velocity_gradient(s, 0.2), prm).norm() == 0.0);
}

TEST_CASE("straight pipe Poiseuille gradient") {
  const VelocitySample s = sample_from_analytic(centrifugal, {0.4, 2.0});
  const FrameTensor g = velocity_gradient(s, 0.0);
  FrameTensor expected = FrameTensor::Zero();
  expected(0, 2) = -0.8;
  CHECK((g - expected).norm() <= 1e-14);
  CHECK(stokes_operator(s, 0.0)[2] == doctest::Approx(4.0));
}

TEST_CASE("rigid axial motion couples through curvature") {
  const VelocitySample s = sample_from_analytic(rigid, {0.5, 0.0});
  const FrameTensor g = velocity_gradient(s, 0.2);
  CHECK(g(2, 0) == doctest::Approx(-0.18181818181818182).epsilon(1e-14));
  const OracleResult o = cartesian_oracle(rigid, {0.5, 0.0}, FlowParams(0.2, 0.0, 0.0, 4.0));
  CHECK((g - o.gradient).norm() <= 1e-8);
}

TEST_CASE("extra stress") {
  const FrameTensor I = FrameTensor::Identity();
  CHECK((extra_stress(I, 1.0) - 2.0 * I).norm() == 0.0);
  FrameTensor g;
  g << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  CHECK(extra_stress(g, 0.0).norm() == 0.0);
  CHECK(extra_stress(FrameTensor::Zero(), 0.7).norm() == 0.0);
  const FrameTensor a1 = g + g.transpose();
  CHECK((a1 - a1.transpose()).norm() == 0.0);
  CHECK((extra_stress(g, 0.5) - 0.5 * g.transpose() * a1).norm() <= 1e-13);
}

TEST_CASE("total flux tensor of a pure axial field") {
  const VelocitySample s = sample_from_analytic(centrifugal, {0.5, kPi / 3});
  const FlowParams prm(0.2, 2.0, 0.0, 4.0);
  const FrameTensor T = total_flux_tensor(s, velocity_gradient(s, 0.2), prm);
  FrameTensor expected = FrameTensor::Zero();
  expected(2, 2) = -2.0 * 0.75 * 0.75;
  CHECK((T - expected).norm() <= 1e-14);
  const FlowParams creeping(0.2, 0.0, 0.0, 4.0);
  CHECK(total_flux_tensor(s, velocity_gradient(s, 0.2), creeping).norm() == 0.0);
  CHECK(force_divergence(s, creeping).norm() == 0.0);
}

TEST_CASE("centrifugal force of an axial profile") {
  const FlowParams prm(0.2, 2.0, 0.0, 4.0);
  const Point at{0.5, kPi / 3};
  const FrameVector F = force_divergence(sample_from_analytic(centrifugal, at), prm);
  CHECK(F[0] == doctest::Approx(0.10714285714285713691).epsilon(1e-13));
  CHECK(F[1] == doctest::Approx(-0.18557687223952255686).epsilon(1e-13));
  CHECK(std::abs(F[2]) <= 1e-15);
  CHECK(cartesian_residual(centrifugal, at, prm) <= 1e-6);
}

TEST_CASE("manufactured polynomial field") {
  const FlowParams prm(0.2, 2.0, 0.1, 4.0);
  const Point at{0.5, 1.0};
  const VelocitySample s = sample_from_analytic(manufactured, at);
  const FrameTensor g = velocity_gradient(s, 0.2);
  const double G[3][3] = {{0.21036774620197412622, 0.13507557646703494125, -1.0},
                          {0.0, 0.0, 0.0},
                          {-0.076890912165868616213, 0.11975050056288537303, 0.0}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(std::abs(g(i, j) - G[i][j]) <= 1e-13);
  }
  const FrameVector F = force_divergence(s, prm);
  CHECK(F[0] == doctest::Approx(-0.38375924413593165418).epsilon(1e-12));
  CHECK(F[1] == doctest::Approx(-0.29520572610078987807).epsilon(1e-12));
  CHECK(F[2] == doctest::Approx(-0.051035948701683951645).epsilon(1e-12));
  CHECK(cartesian_residual(manufactured, at, prm) <= 1e-6);
}

TEST_CASE("randomized oracle sweep") {
  CHECK(randomized_oracle_residual(20, 11) <= 1e-6);
}

TEST_CASE("symmetric rate tensor and divergence trace") {
  const VelocitySample s = sample_from_analytic(manufactured, {0.7, 2.5});
  const FrameTensor g = velocity_gradient(s, 0.3);
  const FrameTensor a1 = g + g.transpose();
  CHECK((a1 - a1.transpose()).norm() == 0.0);
  CHECK(velocity_divergence(s, 0.3) == doctest::Approx(g.trace()));
}
